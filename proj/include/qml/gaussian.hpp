#ifndef QML_GAUSSIAN_HPP
#define QML_GAUSSIAN_HPP

#include "qml/rational.hpp"

#include <optional>
#include <string>

namespace qml {

/// An element of Q(i): exact Gaussian-rational scalar.
struct GaussianRational {
  Rational re{0};
  Rational im{0};

  GaussianRational() = default;
  GaussianRational(Rational real) : re(std::move(real)) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational real, Rational imag)
      : re(std::move(real)), im(std::move(imag)) {}
  GaussianRational(long real) : re(real) {}  // NOLINT(google-explicit-constructor)

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }

  GaussianRational conj() const { return {re, -im}; }
  /// |a|^2 = re^2 + im^2, always a rational.
  Rational abs_sq() const { return re * re + im * im; }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    if (b.is_zero()) throw input_error("division by zero in Q(i)");
    Rational n = b.abs_sq();
    GaussianRational prod = a * b.conj();
    return {prod.re / n, prod.im / n};
  }
  GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
  GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
  GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }
  GaussianRational& operator/=(const GaussianRational& o) { return *this = *this / o; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) {
    return !(a == b);
  }
  /// Lexicographic (re, im) order; used for deterministic multisets, not magnitude.
  friend bool operator<(const GaussianRational& a, const GaussianRational& b) {
    int c = cmp(a.re, b.re);
    if (c != 0) return c < 0;
    return cmp(a.im, b.im) < 0;
  }
};

GaussianRational gauss_pow(const GaussianRational& value, unsigned long exponent);

/// Exact square root in Q(i), if one exists.
std::optional<GaussianRational> gauss_sqrt(const GaussianRational& value);

/// Parses literals like "2", "-1/3", "i", "2i", "3/2+1/2i", "1-2i".
GaussianRational gauss_from_string(const std::string& text);

/// Renders like "3/2+1/2i"; "0" for zero.
std::string gauss_to_string(const GaussianRational& value);

}  // namespace qml

#endif
