#ifndef QML_HOMOPOLY_HPP
#define QML_HOMOPOLY_HPP

#include "qml/gaussian.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qml {

/// Monomial z1^k1 z2^k2.
struct Mono2 {
  unsigned k1 = 0;
  unsigned k2 = 0;
  unsigned degree() const { return k1 + k2; }
  friend bool operator<(const Mono2& a, const Mono2& b) {
    if (a.k1 != b.k1) return a.k1 < b.k1;
    return a.k2 < b.k2;
  }
  friend bool operator==(const Mono2& a, const Mono2& b) {
    return a.k1 == b.k1 && a.k2 == b.k2;
  }
};

/// Sparse polynomial in two variables over Q(i).
using PolyMap2 = std::map<Mono2, GaussianRational>;

struct Classification {
  bool zero = false;
  bool homogeneous = false;
  unsigned degree = 0;  // meaningful when homogeneous and nonzero
};

/// Homogeneity test on a general coefficient map.
Classification classify(const PolyMap2& poly);

/// Homogeneous polynomial of degree n in z1, z2; coefficient k sits on z1^k z2^(n-k).
class HomoPoly2 {
 public:
  /// coeffs[k] multiplies z1^k z2^(degree-k); at least one entry must be nonzero.
  HomoPoly2(unsigned degree, std::vector<GaussianRational> coeffs);

  /// Builds from a coefficient map; rejects non-homogeneous or zero input.
  static HomoPoly2 from_map(const PolyMap2& poly);

  unsigned degree() const { return degree_; }
  const std::vector<GaussianRational>& coeffs() const { return coeffs_; }
  const GaussianRational& coeff(unsigned k) const { return coeffs_.at(k); }

  PolyMap2 as_map() const;
  /// z^beta * p as a coefficient map.
  PolyMap2 shifted(unsigned b1, unsigned b2) const;

  /// Largest k with a nonzero coefficient.
  unsigned top_index() const;
  /// Smallest k with a nonzero coefficient (multiplicity of the z1 factor).
  unsigned bottom_index() const;

  std::string to_string() const;

  friend bool operator==(const HomoPoly2& a, const HomoPoly2& b) {
    return a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
  }

 private:
  unsigned degree_;
  std::vector<GaussianRational> coeffs_;
};

/// p = lead * z2^z2_power * prod_k (z1 - roots[k] z2).
struct LinearFactorization {
  GaussianRational lead;
  unsigned z2_power = 0;
  std::vector<GaussianRational> roots;  // sorted multiset
  bool approximate = false;

  HomoPoly2 reassemble() const;
};

/// Exact square-free test: gcd of the dehomogenization with its derivative,
/// plus the z2-multiplicity check. Never consults numeric roots.
bool is_square_free(const HomoPoly2& p);

/// Splits into linear factors. Exact when the dehomogenized polynomial
/// factors over Q(i) by rational-root and linear/quadratic extraction;
/// otherwise roots come from simultaneous iteration at `precision` bits
/// and the result is flagged approximate.
LinearFactorization factor(const HomoPoly2& p, unsigned precision = 128);

struct NormalForm {
  unsigned r = 0;
  unsigned s = 0;
  GaussianRational a;
  GaussianRational scale;  // p = scale * z1^r z2^s (z1 - a z2)
};

/// Detects p = c z1^r z2^s (z1 - a z2); exact, no root finding.
std::optional<NormalForm> normal_form(const HomoPoly2& p);

/// Parses monomial sums like "z1^2*z2 - (3/2+1/2i)*z2^3".
PolyMap2 parse_poly(const std::string& text);

std::string poly_to_string(const PolyMap2& poly);

}  // namespace qml

#endif
