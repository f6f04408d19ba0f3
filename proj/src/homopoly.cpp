#include "qml/homopoly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

namespace qml {

Classification classify(const PolyMap2& poly) {
  Classification result;
  bool first = true;
  unsigned degree = 0;
  bool homogeneous = true;
  bool any = false;
  for (const auto& [mono, coeff] : poly) {
    if (coeff.is_zero()) continue;
    any = true;
    if (first) {
      degree = mono.degree();
      first = false;
    } else if (mono.degree() != degree) {
      homogeneous = false;
    }
  }
  if (!any) {
    result.zero = true;
    return result;
  }
  result.homogeneous = homogeneous;
  result.degree = homogeneous ? degree : 0;
  return result;
}

HomoPoly2::HomoPoly2(unsigned degree, std::vector<GaussianRational> coeffs)
    : degree_(degree), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != degree_ + 1)
    throw input_error("homogeneous polynomial of degree n needs n+1 coefficients");
  bool any = false;
  for (const auto& c : coeffs_) any = any || !c.is_zero();
  if (!any) throw input_error("zero polynomial");
}

HomoPoly2 HomoPoly2::from_map(const PolyMap2& poly) {
  Classification cls = classify(poly);
  if (cls.zero) throw input_error("zero polynomial");
  if (!cls.homogeneous) throw input_error("polynomial is not homogeneous");
  std::vector<GaussianRational> coeffs(cls.degree + 1);
  for (const auto& [mono, coeff] : poly) {
    if (!coeff.is_zero()) coeffs[mono.k1] = coeff;
  }
  return HomoPoly2(cls.degree, std::move(coeffs));
}

PolyMap2 HomoPoly2::as_map() const { return shifted(0, 0); }

PolyMap2 HomoPoly2::shifted(unsigned b1, unsigned b2) const {
  PolyMap2 out;
  for (unsigned k = 0; k <= degree_; ++k) {
    if (!coeffs_[k].is_zero())
      out[{k + b1, degree_ - k + b2}] = coeffs_[k];
  }
  return out;
}

unsigned HomoPoly2::top_index() const {
  for (unsigned k = degree_ + 1; k-- > 0;)
    if (!coeffs_[k].is_zero()) return k;
  throw std::logic_error("zero polynomial slipped through");
}

unsigned HomoPoly2::bottom_index() const {
  for (unsigned k = 0; k <= degree_; ++k)
    if (!coeffs_[k].is_zero()) return k;
  throw std::logic_error("zero polynomial slipped through");
}

std::string HomoPoly2::to_string() const { return poly_to_string(as_map()); }

// ---------------------------------------------------------------------------
// Univariate polynomials over Q(i), coefficient index = power.

namespace {

using UniPoly = std::vector<GaussianRational>;

void trim(UniPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int deg(const UniPoly& p) { return static_cast<int>(p.size()) - 1; }

GaussianRational eval(const UniPoly& p, const GaussianRational& x) {
  GaussianRational acc;
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
  return acc;
}

UniPoly derivative(const UniPoly& p) {
  UniPoly out;
  for (std::size_t k = 1; k < p.size(); ++k)
    out.push_back(GaussianRational(Rational(static_cast<long>(k))) * p[k]);
  trim(out);
  return out;
}

// Remainder of a by b (b nonzero).
UniPoly poly_rem(UniPoly a, const UniPoly& b) {
  trim(a);
  while (deg(a) >= deg(b)) {
    GaussianRational q = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] -= q * b[k];
    a.pop_back();
    trim(a);
    if (a.empty()) break;
  }
  return a;
}

UniPoly poly_gcd(UniPoly a, UniPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UniPoly r = poly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    GaussianRational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

// Divides out (w - root); the division must be exact.
UniPoly deflate(const UniPoly& p, const GaussianRational& root) {
  UniPoly out(p.size() - 1);
  GaussianRational carry = p.back();
  for (std::size_t k = p.size() - 1; k-- > 0;) {
    out[k] = carry;
    carry = p[k] + carry * root;
  }
  if (!carry.is_zero()) throw std::logic_error("deflation by a non-root");
  return out;
}

// ---------------------------------------------------------------------------
// Gaussian-integer divisor enumeration for the rational-root search.

struct GaussInt {
  Integer re, im;
};

constexpr unsigned long kTrialBound = 1000000;
constexpr std::size_t kCandidateCap = 4096;

// N(g) = re^2 + im^2 factored by trial division; nullopt when a cofactor
// survives past the bound (the caller falls back to numeric roots).
std::optional<std::vector<std::pair<unsigned long, unsigned>>> factor_norm(const Integer& norm) {
  std::vector<std::pair<unsigned long, unsigned>> factors;
  Integer rest = norm;
  for (unsigned long p = 2; p <= kTrialBound && rest > 1; p += (p == 2 ? 1 : 2)) {
    if (rest % p == 0) {
      unsigned e = 0;
      while (rest % p == 0) {
        rest /= p;
        ++e;
      }
      factors.emplace_back(p, e);
    }
    Integer psq = Integer(p) * Integer(p);
    if (psq > rest) break;
  }
  if (rest > 1) {
    if (!rest.fits_ulong_p()) return std::nullopt;
    unsigned long p = rest.get_ui();
    // rest is prime here: no factor <= min(bound, sqrt(rest)) divided it.
    Integer bound_sq = Integer(kTrialBound) * Integer(kTrialBound);
    if (rest > bound_sq) return std::nullopt;
    factors.emplace_back(p, 1);
  }
  return factors;
}

// Splits an odd prime p = 1 (mod 4) as x^2 + y^2.
std::optional<std::pair<unsigned long, unsigned long>> two_square_split(unsigned long p) {
  for (unsigned long x = 1; x * x <= p; ++x) {
    unsigned long rem = p - x * x;
    auto y = static_cast<unsigned long>(std::sqrt(static_cast<double>(rem)));
    for (unsigned long yy = y > 0 ? y - 1 : 0; yy <= y + 1; ++yy) {
      if (yy * yy == rem) return std::make_pair(x, yy);
    }
  }
  return std::nullopt;
}

GaussInt gmul(const GaussInt& a, const GaussInt& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

// All divisors of g up to units, or nullopt when enumeration is infeasible.
std::optional<std::vector<GaussInt>> gaussian_divisors(const GaussInt& g) {
  Integer norm = g.re * g.re + g.im * g.im;
  if (norm == 0) return std::nullopt;
  auto factors = factor_norm(norm);
  if (!factors) return std::nullopt;
  std::vector<GaussInt> divisors{{1, 0}};
  for (const auto& [p, e] : *factors) {
    std::vector<GaussInt> primes;  // Gaussian primes above p with max exponents
    std::vector<unsigned> max_exp;
    if (p == 2) {
      primes.push_back({1, 1});
      max_exp.push_back(e);
    } else if (p % 4 == 3) {
      if (e % 2 != 0) return std::nullopt;  // cannot happen for a true norm
      primes.push_back({Integer(p), 0});
      max_exp.push_back(e / 2);
    } else {
      auto split = two_square_split(p);
      if (!split) return std::nullopt;
      primes.push_back({Integer(split->first), Integer(split->second)});
      primes.push_back({Integer(split->first), -Integer(split->second)});
      max_exp.push_back(e);
      max_exp.push_back(e);
    }
    std::vector<GaussInt> extended;
    for (const auto& base : divisors) {
      if (primes.size() == 1) {
        GaussInt acc = base;
        for (unsigned j = 0; j <= max_exp[0]; ++j) {
          if (j > 0) acc = gmul(acc, primes[0]);
          extended.push_back(acc);
        }
      } else {
        GaussInt acc1 = base;
        for (unsigned j = 0; j <= max_exp[0]; ++j) {
          if (j > 0) acc1 = gmul(acc1, primes[0]);
          GaussInt acc2 = acc1;
          for (unsigned k = 0; j + k <= max_exp[0]; ++k) {
            if (k > 0) acc2 = gmul(acc2, primes[1]);
            extended.push_back(acc2);
          }
        }
      }
      if (extended.size() > kCandidateCap) return std::nullopt;
    }
    divisors = std::move(extended);
  }
  return divisors;
}

// Clears denominators: q scaled to Gaussian-integer coefficients.
std::vector<GaussInt> integerize(const UniPoly& q) {
  Integer common = 1;
  for (const auto& c : q) {
    common = lcm(common, c.re.get_den());
    common = lcm(common, c.im.get_den());
  }
  std::vector<GaussInt> out;
  out.reserve(q.size());
  for (const auto& c : q) {
    Rational re = c.re * common;
    Rational im = c.im * common;
    out.push_back({re.get_num(), im.get_num()});
  }
  return out;
}

// Pulls Gaussian-rational roots out of q (degree >= 1, q(0) != 0).
// Returns the found roots (with multiplicity) and the deflated remainder.
std::vector<GaussianRational> extract_rational_roots(UniPoly& q) {
  std::vector<GaussianRational> found;
  bool progress = true;
  while (progress && deg(q) >= 1) {
    progress = false;
    std::vector<GaussInt> coeffs = integerize(q);
    auto numerators = gaussian_divisors(coeffs.front());
    auto denominators = gaussian_divisors(coeffs.back());
    if (!numerators || !denominators) return found;
    static const GaussianRational units[4] = {
        {Rational(1), Rational(0)},
        {Rational(-1), Rational(0)},
        {Rational(0), Rational(1)},
        {Rational(0), Rational(-1)},
    };
    std::set<GaussianRational> candidates;
    for (const auto& u : *numerators) {
      GaussianRational gu{Rational(u.re), Rational(u.im)};
      for (const auto& v : *denominators) {
        GaussianRational gv{Rational(v.re), Rational(v.im)};
        if (gv.is_zero()) continue;
        GaussianRational ratio = gu / gv;
        for (const auto& unit : units) candidates.insert(unit * ratio);
      }
      if (candidates.size() > 4 * kCandidateCap) return found;
    }
    for (const auto& r : candidates) {
      while (deg(q) >= 1 && eval(q, r).is_zero()) {
        q = deflate(q, r);
        found.push_back(r);
        progress = true;
      }
      if (deg(q) < 1) break;
    }
  }
  return found;
}

// Closes out degree <= 2 exactly when possible.
bool close_low_degree(UniPoly& q, std::vector<GaussianRational>& roots) {
  if (deg(q) <= 0) return true;
  if (deg(q) == 1) {
    roots.push_back(-q[0] / q[1]);
    q = {q[1]};
    return true;
  }
  if (deg(q) == 2) {
    GaussianRational a = q[2], b = q[1], c = q[0];
    GaussianRational disc = b * b - GaussianRational(Rational(4)) * a * c;
    auto sq = gauss_sqrt(disc);
    if (!sq) return false;
    GaussianRational two_a = GaussianRational(Rational(2)) * a;
    roots.push_back((-b + *sq) / two_a);
    roots.push_back((-b - *sq) / two_a);
    q = {a};
    return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Durand-Kerner simultaneous iteration in GMP floating point.

struct CFloat {
  mpf_class re, im;
  CFloat(mpf_class r, mpf_class i) : re(std::move(r)), im(std::move(i)) {}
};

CFloat cadd(const CFloat& a, const CFloat& b) { return {a.re + b.re, a.im + b.im}; }
CFloat csub(const CFloat& a, const CFloat& b) { return {a.re - b.re, a.im - b.im}; }
CFloat cmul(const CFloat& a, const CFloat& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
CFloat cdiv(const CFloat& a, const CFloat& b) {
  mpf_class n = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}
mpf_class cabs_sq(const CFloat& a) { return a.re * a.re + a.im * a.im; }

std::vector<GaussianRational> durand_kerner(const UniPoly& q, unsigned precision) {
  const unsigned long bits = 2UL * precision + 64;
  int n = deg(q);
  std::vector<CFloat> coeffs;
  coeffs.reserve(q.size());
  for (const auto& c : q) {
    coeffs.emplace_back(mpf_class(c.re, bits), mpf_class(c.im, bits));
  }
  // Monic scale.
  CFloat lead = coeffs.back();
  for (auto& c : coeffs) c = cdiv(c, lead);

  mpf_class radius(1, bits);
  for (int k = 0; k < n; ++k) {
    mpf_class m = cabs_sq(coeffs[k]);
    if (m > radius) radius = m;
  }
  radius = 1 + sqrt(radius);

  std::vector<CFloat> roots;
  CFloat seed(mpf_class(0.4, bits) * radius, mpf_class(0.9, bits) * radius);
  CFloat acc(mpf_class(1, bits), mpf_class(0, bits));
  for (int k = 0; k < n; ++k) {
    acc = cmul(acc, seed);
    roots.push_back(acc);
  }

  mpf_class tol(1, bits);
  mpf_div_2exp(tol.get_mpf_t(), tol.get_mpf_t(), precision + 8);
  mpf_class tol_sq = tol * tol;

  auto eval_monic = [&](const CFloat& x) {
    CFloat acc2(mpf_class(0, bits), mpf_class(0, bits));
    for (std::size_t k = coeffs.size(); k-- > 0;)
      acc2 = cadd(cmul(acc2, x), coeffs[k]);
    return acc2;
  };

  for (int iter = 0; iter < 2000; ++iter) {
    mpf_class worst(0, bits);
    for (int k = 0; k < n; ++k) {
      CFloat denom(mpf_class(1, bits), mpf_class(0, bits));
      for (int j = 0; j < n; ++j) {
        if (j != k) denom = cmul(denom, csub(roots[k], roots[j]));
      }
      CFloat delta = cdiv(eval_monic(roots[k]), denom);
      roots[k] = csub(roots[k], delta);
      mpf_class step = cabs_sq(delta);
      if (step > worst) worst = step;
    }
    if (worst < tol_sq) break;
  }

  std::vector<GaussianRational> out;
  out.reserve(n);
  for (const auto& r : roots) {
    // mpf -> mpq is exact.
    out.push_back({Rational(mpq_class(r.re)), Rational(mpq_class(r.im))});
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

bool is_square_free(const HomoPoly2& p) {
  unsigned m = p.top_index();
  unsigned z2_mult = p.degree() - m;
  if (z2_mult >= 2) return false;
  if (m == 0) return true;
  UniPoly q(p.coeffs().begin(), p.coeffs().begin() + m + 1);
  trim(q);
  UniPoly g = poly_gcd(q, derivative(q));
  return deg(g) <= 0;
}

LinearFactorization factor(const HomoPoly2& p, unsigned precision) {
  LinearFactorization result;
  unsigned m = p.top_index();
  result.lead = p.coeff(m);
  result.z2_power = p.degree() - m;
  if (m == 0) return result;

  UniPoly q(p.coeffs().begin(), p.coeffs().begin() + m + 1);
  // Zero roots come from the z1 multiplicity.
  unsigned z1_mult = p.bottom_index();
  for (unsigned k = 0; k < z1_mult; ++k) result.roots.emplace_back();
  q.erase(q.begin(), q.begin() + z1_mult);

  auto rational_roots = extract_rational_roots(q);
  result.roots.insert(result.roots.end(), rational_roots.begin(), rational_roots.end());

  if (!close_low_degree(q, result.roots) || deg(q) >= 1) {
    auto numeric = durand_kerner(q, precision);
    result.roots.insert(result.roots.end(), numeric.begin(), numeric.end());
    result.approximate = true;
  }
  std::sort(result.roots.begin(), result.roots.end());
  return result;
}

HomoPoly2 LinearFactorization::reassemble() const {
  UniPoly q{lead};
  for (const auto& root : roots) {
    UniPoly next(q.size() + 1);
    for (std::size_t k = 0; k < q.size(); ++k) {
      next[k + 1] += q[k];
      next[k] -= root * q[k];
    }
    q = std::move(next);
  }
  unsigned degree = static_cast<unsigned>(roots.size()) + z2_power;
  std::vector<GaussianRational> coeffs(degree + 1);
  for (std::size_t k = 0; k < q.size(); ++k) coeffs[k] = q[k];
  return HomoPoly2(degree, std::move(coeffs));
}

std::optional<NormalForm> normal_form(const HomoPoly2& p) {
  std::vector<unsigned> support;
  for (unsigned k = 0; k <= p.degree(); ++k)
    if (!p.coeff(k).is_zero()) support.push_back(k);
  if (support.size() == 1) {
    unsigned k = support[0];
    if (k == 0) return std::nullopt;  // pure z2 power
    NormalForm form;
    form.r = k - 1;
    form.s = p.degree() - k;
    form.a = GaussianRational{};
    form.scale = p.coeff(k);
    return form;
  }
  if (support.size() == 2 && support[1] == support[0] + 1) {
    unsigned k = support[0];
    NormalForm form;
    form.r = k;
    form.s = p.degree() - k - 1;
    form.scale = p.coeff(k + 1);
    form.a = -p.coeff(k) / p.coeff(k + 1);
    return form;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Parsing.

namespace {

struct Scanner {
  std::string text;
  std::size_t pos = 0;

  bool done() const { return pos >= text.size(); }
  char peek() const { return pos < text.size() ? text[pos] : '\0'; }
};

unsigned scan_exponent(Scanner& sc) {
  if (sc.peek() != '^') return 1;
  ++sc.pos;
  if (!std::isdigit(static_cast<unsigned char>(sc.peek())))
    throw input_error("polynomial: expected an exponent after '^'");
  unsigned value = 0;
  while (std::isdigit(static_cast<unsigned char>(sc.peek())))
    value = value * 10 + static_cast<unsigned>(sc.text[sc.pos++] - '0');
  return value;
}

std::string scan_literal(Scanner& sc) {
  std::string out;
  while (!sc.done()) {
    char c = sc.peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '.' ||
        c == 'i' || c == 'I') {
      if (c == '.') throw exactness_error("decimal literals are not exact; use p/q");
      out.push_back(c);
      ++sc.pos;
      if (c == 'i' || c == 'I') break;
    } else {
      break;
    }
  }
  return out;
}

}  // namespace

PolyMap2 parse_poly(const std::string& text) {
  std::string cleaned;
  cleaned.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    unsigned char c = text[i];
    // U+2212 minus sign.
    if (c == 0xE2 && i + 2 < text.size() &&
        static_cast<unsigned char>(text[i + 1]) == 0x88 &&
        static_cast<unsigned char>(text[i + 2]) == 0x92) {
      cleaned.push_back('-');
      i += 2;
      continue;
    }
    if (!std::isspace(c)) cleaned.push_back(static_cast<char>(c));
  }
  if (cleaned.empty()) return {};

  PolyMap2 result;
  Scanner sc{cleaned};
  while (!sc.done()) {
    int sign = 1;
    while (sc.peek() == '+' || sc.peek() == '-') {
      if (sc.peek() == '-') sign = -sign;
      ++sc.pos;
    }
    if (sc.done()) throw input_error("polynomial: dangling sign");
    GaussianRational coeff{Rational(sign)};
    Mono2 mono;
    bool saw_factor = false;
    while (!sc.done()) {
      char c = sc.peek();
      if (c == '+' || c == '-') break;
      if (c == '*') {
        ++sc.pos;
        continue;
      }
      if (c == '(') {
        ++sc.pos;
        std::size_t close = sc.text.find(')', sc.pos);
        if (close == std::string::npos) throw input_error("polynomial: unbalanced '('");
        coeff *= gauss_from_string(sc.text.substr(sc.pos, close - sc.pos));
        sc.pos = close + 1;
        saw_factor = true;
        continue;
      }
      if (c == 'z' || c == 'Z') {
        ++sc.pos;
        char which = sc.peek();
        if (which != '1' && which != '2')
          throw input_error("polynomial: variables are z1 and z2");
        ++sc.pos;
        unsigned e = scan_exponent(sc);
        if (which == '1') mono.k1 += e;
        else mono.k2 += e;
        saw_factor = true;
        continue;
      }
      std::string literal = scan_literal(sc);
      if (literal.empty())
        throw input_error(std::string("polynomial: unexpected character '") + c + "'");
      coeff *= gauss_from_string(literal);
      saw_factor = true;
    }
    if (!saw_factor) throw input_error("polynomial: empty term");
    auto [it, inserted] = result.try_emplace(mono, coeff);
    if (!inserted) it->second += coeff;
  }
  for (auto it = result.begin(); it != result.end();) {
    if (it->second.is_zero()) it = result.erase(it);
    else ++it;
  }
  return result;
}

std::string poly_to_string(const PolyMap2& poly) {
  if (poly.empty()) return "0";
  std::string out;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) {
    const auto& [mono, coeff] = *it;
    std::string term;
    GaussianRational c = coeff;
    bool negative = (c.is_real() && sgn(c.re) < 0) || (sgn(c.re) == 0 && sgn(c.im) < 0);
    if (negative) c = -c;
    bool unit = (c == GaussianRational{Rational(1)});
    std::string cs;
    if (!c.is_real() && sgn(c.re) != 0) cs = "(" + gauss_to_string(c) + ")";
    else if (!unit || mono.degree() == 0) cs = gauss_to_string(c);
    term += cs;
    auto append_var = [&term](const char* var, unsigned e) {
      if (e == 0) return;
      if (!term.empty()) term += "*";
      term += var;
      if (e > 1) term += "^" + std::to_string(e);
    };
    append_var("z1", mono.k1);
    append_var("z2", mono.k2);
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    out += term;
  }
  return out;
}

}  // namespace qml
