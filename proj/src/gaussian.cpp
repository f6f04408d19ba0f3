#include "qml/gaussian.hpp"

#include <cctype>

namespace qml {

GaussianRational gauss_pow(const GaussianRational& value, unsigned long exponent) {
  GaussianRational result{Rational(1)};
  GaussianRational base = value;
  unsigned long e = exponent;
  while (e > 0) {
    if (e & 1UL) result *= base;
    base *= base;
    e >>= 1UL;
  }
  return result;
}

std::optional<GaussianRational> gauss_sqrt(const GaussianRational& value) {
  if (value.is_zero()) return GaussianRational{};
  if (value.is_real()) {
    if (sgn(value.re) > 0) {
      auto r = rat_sqrt(value.re);
      if (r) return GaussianRational{*r};
      return std::nullopt;
    }
    auto r = rat_sqrt(-value.re);
    if (r) return GaussianRational{Rational(0), *r};
    return std::nullopt;
  }
  // (u+vi)^2 = x+yi needs |x+yi| rational, then u^2=(x+|.|)/2 a rational square.
  auto mod = rat_sqrt(value.abs_sq());
  if (!mod) return std::nullopt;
  Rational u_sq = (value.re + *mod) / 2;
  auto u = rat_sqrt(u_sq);
  if (!u || qml::is_zero(*u)) return std::nullopt;
  Rational v = value.im / (2 * (*u));
  GaussianRational root{*u, v};
  if (root * root == value) return root;
  return std::nullopt;
}

namespace {

// One signed part of a literal: rational magnitude plus 'i' marker.
struct Part {
  Rational value;
  bool imaginary = false;
};

Part parse_part(const std::string& text) {
  if (text.empty()) throw input_error("empty component in Gaussian literal");
  Part part;
  std::string body = text;
  if (body.back() == 'i' || body.back() == 'I') {
    part.imaginary = true;
    body.pop_back();
    if (body.empty() || body == "+") body = "1";
    else if (body == "-") body = "-1";
    if (!body.empty() && body.back() == '*') body.pop_back();  // "2*i"
  }
  part.value = rat_from_string(body);
  return part;
}

}  // namespace

GaussianRational gauss_from_string(const std::string& text) {
  std::string s;
  s.reserve(text.size());
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw input_error("empty Gaussian literal");

  // Split on top-level +/- signs (not the leading one).
  std::vector<std::string> chunks;
  std::size_t begin = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != '/' && s[i - 1] != '+' && s[i - 1] != '-') {
      chunks.push_back(s.substr(begin, i - begin));
      begin = i;
    }
  }
  chunks.push_back(s.substr(begin));
  if (chunks.size() > 2) throw input_error("bad Gaussian literal: " + text);

  GaussianRational result;
  bool seen_real = false, seen_imag = false;
  for (const auto& chunk : chunks) {
    std::string body = chunk;
    int sign = 1;
    if (!body.empty() && (body[0] == '+' || body[0] == '-')) {
      sign = body[0] == '-' ? -1 : 1;
      body.erase(body.begin());
    }
    Part part = parse_part(body);
    if (sign < 0) part.value = -part.value;
    if (part.imaginary) {
      if (seen_imag) throw input_error("two imaginary parts: " + text);
      result.im = part.value;
      seen_imag = true;
    } else {
      if (seen_real) throw input_error("two real parts: " + text);
      result.re = part.value;
      seen_real = true;
    }
  }
  return result;
}

std::string gauss_to_string(const GaussianRational& value) {
  if (value.is_zero()) return "0";
  std::string out;
  if (sgn(value.re) != 0) out += rat_to_string(value.re);
  if (sgn(value.im) != 0) {
    if (!out.empty() && sgn(value.im) > 0) out += "+";
    if (value.im == -1) out += "-";
    else if (value.im != 1) out += rat_to_string(value.im);
    out += "i";
  }
  return out;
}

}  // namespace qml
