#include "qml/rational.hpp"

#include <cctype>

namespace qml {

Rational rat_from_string(const std::string& text) {
  std::string trimmed;
  trimmed.reserve(text.size());
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) trimmed.push_back(c);
  }
  if (trimmed.empty()) throw input_error("empty rational literal");
  std::size_t start = (trimmed[0] == '+' || trimmed[0] == '-') ? 1 : 0;
  if (start == trimmed.size()) throw input_error("bad rational literal: " + text);
  bool seen_slash = false;
  for (std::size_t i = start; i < trimmed.size(); ++i) {
    char c = trimmed[i];
    if (c == '.' || c == 'e' || c == 'E')
      throw exactness_error("non-exact literal '" + text + "'; use p/q");
    if (c == '/') {
      if (seen_slash || i == start || i + 1 == trimmed.size())
        throw input_error("bad rational literal: " + text);
      seen_slash = true;
    } else if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw input_error("bad rational literal: " + text);
    }
  }
  Rational value;
  if (value.set_str(trimmed, 10) != 0)
    throw input_error("bad rational literal: " + text);
  if (value.get_den() == 0) throw input_error("zero denominator: " + text);
  value.canonicalize();
  return value;
}

std::string rat_to_string(const Rational& value) { return value.get_str(); }

Integer factorial(unsigned long n) {
  Integer result;
  mpz_fac_ui(result.get_mpz_t(), n);
  return result;
}

Integer binomial(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  Integer result;
  mpz_bin_uiui(result.get_mpz_t(), n, k);
  return result;
}

Rational rat_pow(const Rational& value, long exponent) {
  if (exponent == 0) return Rational(1);
  bool invert = exponent < 0;
  unsigned long e = invert ? static_cast<unsigned long>(-exponent)
                           : static_cast<unsigned long>(exponent);
  if (invert && is_zero(value)) throw input_error("zero to a negative power");
  Rational result;
  mpz_pow_ui(result.get_num_mpz_t(), value.get_num_mpz_t(), e);
  mpz_pow_ui(result.get_den_mpz_t(), value.get_den_mpz_t(), e);
  result.canonicalize();
  if (invert) result = 1 / result;
  return result;
}

std::optional<Rational> rat_sqrt(const Rational& value) {
  if (sgn(value) < 0) return std::nullopt;
  const Integer& num = value.get_num();
  const Integer& den = value.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) ||
      !mpz_perfect_square_p(den.get_mpz_t()))
    return std::nullopt;
  Integer rnum, rden;
  mpz_sqrt(rnum.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rden.get_mpz_t(), den.get_mpz_t());
  return make_rat(rnum, rden);
}

}  // namespace qml
