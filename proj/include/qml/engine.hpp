#ifndef QML_ENGINE_HPP
#define QML_ENGINE_HPP

#include "qml/catalog.hpp"
#include "qml/homopoly.hpp"
#include "qml/moments.hpp"

#include <string>
#include <variant>
#include <vector>

namespace qml {

enum class Status { Subnormal, NotSubnormal, Undetermined };

std::string status_name(Status status);
int status_exit_code(Status status);

/// One decision step with its verified inputs.
struct RuleStep {
  std::string id;        // R0..R7, RT for the tensor rule
  std::string citation;  // self-contained statement of the rule
  std::string inputs;    // what was computed to verify the precondition
};

struct TheoremCitation {
  std::string statement;
};

struct VerifiedMeasure {
  MeasureFamily family;
  unsigned checked_to = 0;  // moments compared exactly for n <= checked_to
  unsigned grid = 0;        // bimoment grid side when one was compared, else 0
};

struct IsometryWitness {
  unsigned checked_to = 0;  // norm identities verified for exponents <= this
};

struct EvidenceOnly {
  unsigned depth = 0;
};

using Certificate =
    std::variant<TheoremCitation, HankelViolation, VerifiedMeasure, IsometryWitness, EvidenceOnly>;

struct Verdict {
  Status status = Status::Undetermined;
  std::vector<RuleStep> trace;
  Certificate certificate = EvidenceOnly{};
};

/// Applies the decision rules in order R0..R7; the first conclusive status
/// wins. Subnormal deg-1 verdicts are enriched with a verified measure when
/// one of the closed-form families matches exactly.
Verdict decide(const ModuleSpec& spec, const HomoPoly2& p, unsigned depth = 32);

/// Exact test of the m-isometry identity on all monomials z^beta with
/// |beta| <= degree_cap - m.
bool check_m_isometry(const ModuleSpec& spec, unsigned m, unsigned degree_cap);

/// Per-coordinate alternating-sum identity on powers of z_j alone.
bool check_weak_m_isometry(const ModuleSpec& spec, unsigned m);

/// Dichotomy for quotients of weighted-Bergman tensor modules by z1 - z2,
/// cross-validated against the Stieltjes certificate of the tensor sequence.
Verdict classify_bergman_tensor(const Rational& s1, const Rational& s2, unsigned depth);

}  // namespace qml

#endif
