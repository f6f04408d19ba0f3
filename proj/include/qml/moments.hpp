#ifndef QML_MOMENTS_HPP
#define QML_MOMENTS_HPP

#include "qml/catalog.hpp"
#include "qml/gaussian.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qml {

/// Exact positive moment candidates gamma_0..gamma_N with provenance.
struct MomentSeq {
  std::vector<Rational> values;
  std::string provenance;
};

/// One certified negative principal minor of a Hankel matrix.
struct HankelViolation {
  int level = 0;           // 0: [g_{i+j}], 1: [g_{i+j+1}]
  std::size_t size = 0;    // order of the cited principal submatrix
  Rational minor;          // its determinant, negative
  std::vector<std::size_t> indices;
};

struct HankelReport {
  std::size_t psd_verified_to = 0;
  std::optional<HankelViolation> violation;
};

/// gamma_n = (sum_{k<=n} |a|^{2k} / ||z1^k z2^{n-k}||^2)^{-1}, a != 0.
MomentSeq quotient_gamma(const ModuleSpec& spec, const GaussianRational& a, unsigned count);

/// Moments of the surviving coordinate when the generator is p = z_j:
/// gamma_n = ||z_i^n||^2 / ||1||^2 with i != j.
MomentSeq berger_gamma(const ModuleSpec& spec, unsigned annihilated_coordinate, unsigned count);

/// Moment sequence of the module tensor product of two one-dimensional modules.
MomentSeq tensor_gamma(const ModuleSpec& left, const ModuleSpec& right, unsigned count);

/// Tests both Hankel matrices for positive semidefiniteness at every order up
/// to max_size by exact congruence elimination. A violation is a proof that
/// the sequence is not Stieltjes; a clean pass is truncated evidence only.
HankelReport stieltjes_check(const MomentSeq& seq, std::size_t max_size);

/// Determinant of the cited principal submatrix, straight from the raw
/// sequence; lets any consumer re-verify a violation independently.
Rational hankel_minor(const MomentSeq& seq, int level, const std::vector<std::size_t>& indices);

// --- representing-measure families with closed-form moments -----------------

/// Finitely many atoms on [0, infinity).
struct AtomicFinite {
  std::vector<std::pair<Rational, Rational>> atoms;  // (point, weight)
};

/// Geometric atom family: 1-d variant sum_k base^k delta_{base^k} when
/// curve_n is absent; with curve_n = n it is the two-variable pushforward
/// with closed-form bimoments base^k (1-base^{n+1}) / (1-base^{n+k+l+1}).
struct GeometricAtoms {
  Rational base;
  std::optional<unsigned> curve_n;
};

/// Pushforward of a weighted Lebesgue measure along t -> (t, t);
/// bimoments (n+1)/(n+k+l+1).
struct DiagonalCurve {
  unsigned n = 0;
};

/// (delta_0 x Lebesgue + Lebesgue x delta_0)/2 on the two half-axes.
struct HalfAxesProduct {};

using MeasureFamily = std::variant<AtomicFinite, GeometricAtoms, DiagonalCurve, HalfAxesProduct>;

std::string measure_to_string(const MeasureFamily& measure);

/// Closed-form n-th moment (one-dimensional families).
Rational measure_moment(const MeasureFamily& measure, unsigned n);
/// Closed-form (k, l) bimoment (two-dimensional families).
Rational measure_bimoment(const MeasureFamily& measure, unsigned k, unsigned l);

/// gamma_a(k, l) = |a|^{2k} ||q_n||^2 / ||q_{n+k+l}||^2 on a (K+1) x (L+1) grid.
struct Bimoments {
  std::vector<std::vector<Rational>> values;  // values[k][l]
  GaussianRational a;
  unsigned n = 0;
  std::string provenance;
};

Bimoments bimoments_quotient(const ModuleSpec& spec, const GaussianRational& a, unsigned n,
                             unsigned k_max, unsigned l_max);

/// Exact entrywise equality of closed-form moments against a target.
bool verify_measure(const MeasureFamily& measure, const MomentSeq& target);
bool verify_measure(const MeasureFamily& measure, const Bimoments& target);

}  // namespace qml

#endif
