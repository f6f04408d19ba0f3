#ifndef QML_QUOTIENT_HPP
#define QML_QUOTIENT_HPP

#include "qml/catalog.hpp"
#include "qml/homopoly.hpp"

#include <optional>
#include <vector>

namespace qml {

/// <f, g> with respect to the module's monomial norms.
GaussianRational inner_product(const ModuleSpec& spec, const PolyMap2& f, const PolyMap2& g);
Rational norm_sq_of(const ModuleSpec& spec, const PolyMap2& f);

struct BasisLabel {
  enum class Type { PType, QType, QRType };
  Type type = Type::QRType;
  unsigned j = 0;  // unused for QRType
  unsigned n = 0;

  std::string to_string() const;
};

/// One orthogonal-basis element of the quotient by z1^r z2^s (z1 - a z2),
/// stored unnormalized with its exact squared norm.
struct QuotientBasisElement {
  BasisLabel label;
  PolyMap2 terms;
  Rational norm_sq;
  unsigned degree = 0;
};

/// The closed-form orthogonal basis of the quotient module by
/// p = z1^r z2^s (z1 - a z2), listing every element of total degree <= cap.
std::vector<QuotientBasisElement> lemma_basis(const ModuleSpec& spec, unsigned r, unsigned s,
                                              const GaussianRational& a, unsigned degree_cap);

/// The q_n element alone (the graded column of the shift model).
QuotientBasisElement lemma_q_element(const ModuleSpec& spec, unsigned r, unsigned s,
                                     const GaussianRational& a, unsigned n);

/// Shift coordinate acting as a weighted shift on normalized q_n.
struct WeightedShiftModel {
  GaussianRational a;
  std::vector<Rational> q_norm_sq;  // ||q_n||^2, n = 0..cap
  std::vector<Rational> weight_sq;  // w_n^2 = ||q_n||^2/||q_{n+1}||^2, n = 0..cap-1
};

/// Exact ||q_n||^2 and w_n^2 for the quotient by z1 - a z2, a != 0.
WeightedShiftModel shift_weights(const ModuleSpec& spec, const GaussianRational& a,
                                 unsigned count);

/// Dense little matrix over Q(i); rows map into the next degree slice.
struct GMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<GaussianRational> data;

  GMatrix() = default;
  GMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  GaussianRational& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const GaussianRational& at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  bool is_zero() const;

  static GMatrix multiply(const GMatrix& a, const GMatrix& b);
};

/// Brute-force truncated model of the quotient by an arbitrary homogeneous p:
/// per-degree exact projections, an orthogonal complement basis, and the
/// compressed multiplication operators as blocks between degree slices.
class TruncatedQuotient {
 public:
  TruncatedQuotient(ModuleSpec spec, HomoPoly2 p, unsigned degree_cap);

  const ModuleSpec& spec() const { return spec_; }
  const HomoPoly2& generator() const { return p_; }
  unsigned degree_cap() const { return cap_; }

  std::size_t complement_dimension(unsigned degree) const;
  const std::vector<PolyMap2>& complement_basis(unsigned degree) const;
  const std::vector<Rational>& complement_norms_sq(unsigned degree) const;

  /// P-perp of z1^k z2^(degree-k).
  const PolyMap2& projection_of_monomial(unsigned degree, unsigned k) const;
  /// P-perp of an arbitrary polynomial supported in one degree slice.
  PolyMap2 project(const PolyMap2& f) const;

  /// Block of T_{z_j} from the degree slice into the next (j is 1 or 2).
  const GMatrix& shift_block(unsigned j, unsigned degree) const;

  /// Coordinates of a complement vector in the orthogonal basis of its slice.
  std::vector<GaussianRational> coordinates(const PolyMap2& f, unsigned degree) const;
  PolyMap2 from_coordinates(const std::vector<GaussianRational>& coords, unsigned degree) const;

  /// Block of q(T) out of the given degree slice, for homogeneous q.
  GMatrix poly_block(const HomoPoly2& q, unsigned degree) const;
  /// Whether q(T) vanishes on every stored slice of degree <= cap - deg q.
  bool annihilated_by(const HomoPoly2& q) const;

 private:
  ModuleSpec spec_;
  HomoPoly2 p_;
  unsigned cap_;
  std::vector<std::vector<PolyMap2>> monomial_projections_;  // [degree][k]
  std::vector<std::vector<PolyMap2>> basis_;                 // [degree][i]
  std::vector<std::vector<Rational>> basis_norm_sq_;
  std::vector<GMatrix> t1_, t2_;  // blocks out of each degree < cap
};

TruncatedQuotient projection_oracle(const ModuleSpec& spec, const HomoPoly2& p,
                                    unsigned degree_cap);

/// p(T) = 0 at truncation; the minimal sanity check on the oracle.
bool annihilator_check(const TruncatedQuotient& tq);

/// Scalars (a, b) != (0, 0) with a T_{z1} = b T_{z2} on all stored blocks.
std::optional<std::pair<GaussianRational, GaussianRational>> find_linear_relation(
    const TruncatedQuotient& tq);

}  // namespace qml

#endif
