#ifndef QML_CATALOG_HPP
#define QML_CATALOG_HPP

#include "qml/rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qml {

/// Exponent tuple in Z_+^d.
using MultiIndex = std::vector<unsigned>;

unsigned total_degree(const MultiIndex& alpha);

enum class Kind {
  HardyPolydisc,
  HardyBall,
  DruryArveson,
  Dirichlet,
  SzegoPower,
  WeightedBergmanDisc,
  UdInvariantGamma,
  TdCustom,
  TensorProduct,
  AffineKernelMix,
  ConstantKernel,  // kernel identically 1; only meaningful inside a mix
};

std::string kind_name(Kind kind);

/// A torus-invariant Hilbert module given by its exact monomial-norm oracle.
/// Immutable after construction; all queries are pure.
class ModuleSpec {
 public:
  Kind kind() const { return kind_; }
  unsigned dimension() const { return dimension_; }
  bool ud_invariant() const { return ud_invariant_; }
  const std::optional<std::string>& subnormal_witness() const { return subnormal_witness_; }
  const std::string& name() const { return name_; }

  /// ||z^alpha||^2 as an exact positive rational.
  Rational norm_sq(const MultiIndex& alpha) const;

  /// Kernel coefficient a_alpha = 1/||z^alpha||^2 (0 is legal for the
  /// constant kernel away from the origin).
  Rational kernel_coefficient(const MultiIndex& alpha) const;

  // Kind-specific parameters.
  unsigned szego_exponent() const { return szego_b_; }
  const Rational& bergman_weight() const { return bergman_s_; }
  const std::vector<Rational>& gamma_sq_table() const { return gamma_sq_; }
  const std::shared_ptr<const ModuleSpec>& tensor_left() const { return left_; }
  const std::shared_ptr<const ModuleSpec>& tensor_right() const { return right_; }
  const std::vector<std::pair<Rational, std::shared_ptr<const ModuleSpec>>>& mix_components() const {
    return mix_;
  }

  // Factories; each validates its parameters.
  static ModuleSpec hardy_polydisc(unsigned d);
  static ModuleSpec hardy_ball(unsigned d);
  static ModuleSpec drury_arveson(unsigned d);
  static ModuleSpec dirichlet(unsigned d);
  static ModuleSpec szego_power(unsigned b, unsigned d);
  static ModuleSpec weighted_bergman_disc(const Rational& s);
  static ModuleSpec ud_invariant_gamma(std::vector<Rational> gamma_sq,
                                       std::optional<std::string> witness = std::nullopt);
  static ModuleSpec td_custom(unsigned d, std::map<MultiIndex, Rational> table,
                              unsigned declared_degree,
                              std::shared_ptr<const ModuleSpec> tail = nullptr);
  static ModuleSpec constant_kernel(unsigned d);

 private:
  ModuleSpec() = default;

  Kind kind_ = Kind::HardyPolydisc;
  unsigned dimension_ = 1;
  bool ud_invariant_ = false;
  std::optional<std::string> subnormal_witness_;
  std::string name_;

  unsigned szego_b_ = 1;
  Rational bergman_s_{1};
  std::vector<Rational> gamma_sq_;
  std::map<MultiIndex, Rational> custom_table_;
  unsigned custom_degree_ = 0;
  std::shared_ptr<const ModuleSpec> custom_tail_;
  std::shared_ptr<const ModuleSpec> left_, right_;
  std::vector<std::pair<Rational, std::shared_ptr<const ModuleSpec>>> mix_;

  friend ModuleSpec tensor(const ModuleSpec& left, const ModuleSpec& right);
  friend ModuleSpec affine_mix(
      std::vector<std::pair<Rational, ModuleSpec>> components,
      std::optional<std::string> witness);
};

/// Tensor product of two one-dimensional modules; norms multiply coordinatewise.
ModuleSpec tensor(const ModuleSpec& left, const ModuleSpec& right);

/// Affine combination of kernels: a_alpha = sum of weighted coefficients.
/// Every component must share the dimension; the combination must stay positive.
ModuleSpec affine_mix(std::vector<std::pair<Rational, ModuleSpec>> components,
                      std::optional<std::string> witness = std::nullopt);

/// max over |alpha| <= degree_cap of ||z_j z^alpha||^2 / ||z^alpha||^2.
/// Boundedness evidence for the multiplier tuple; reported, never proven.
Rational shift_ratio_bound(const ModuleSpec& spec, unsigned coordinate, unsigned degree_cap);

/// Loads a module spec from the TOML schema described in the README.
ModuleSpec module_from_toml_text(const std::string& text);
ModuleSpec module_from_toml_file(const std::string& path);

}  // namespace qml

#endif
