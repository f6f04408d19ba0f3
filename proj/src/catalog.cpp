#include "qml/catalog.hpp"

#include "qml/toml_mini.hpp"

#include <fstream>
#include <sstream>

namespace qml {

unsigned total_degree(const MultiIndex& alpha) {
  unsigned sum = 0;
  for (unsigned a : alpha) sum += a;
  return sum;
}

std::string kind_name(Kind kind) {
  switch (kind) {
    case Kind::HardyPolydisc: return "hardy-polydisc";
    case Kind::HardyBall: return "hardy-ball";
    case Kind::DruryArveson: return "drury-arveson";
    case Kind::Dirichlet: return "dirichlet";
    case Kind::SzegoPower: return "szego-power";
    case Kind::WeightedBergmanDisc: return "weighted-bergman";
    case Kind::UdInvariantGamma: return "ud-gamma";
    case Kind::TdCustom: return "custom";
    case Kind::TensorProduct: return "tensor";
    case Kind::AffineKernelMix: return "affine-mix";
    case Kind::ConstantKernel: return "constant";
  }
  return "?";
}

namespace {

Integer multi_factorial(const MultiIndex& alpha) {
  Integer result = 1;
  for (unsigned a : alpha) result *= factorial(a);
  return result;
}

void require_dimension(const MultiIndex& alpha, unsigned d) {
  if (alpha.size() != d) {
    throw input_error("multi-index length " + std::to_string(alpha.size()) +
                      " does not match module dimension " + std::to_string(d));
  }
}

}  // namespace

Rational ModuleSpec::norm_sq(const MultiIndex& alpha) const {
  require_dimension(alpha, dimension_);
  unsigned n = total_degree(alpha);
  switch (kind_) {
    case Kind::HardyPolydisc:
      return Rational(1);
    case Kind::HardyBall:
      return make_rat(multi_factorial(alpha) * factorial(dimension_ - 1),
                      factorial(n + dimension_ - 1));
    case Kind::DruryArveson:
      return make_rat(multi_factorial(alpha), factorial(n));
    case Kind::Dirichlet:
      return make_rat((n + 1) * multi_factorial(alpha), factorial(n));
    case Kind::SzegoPower:
      // 1/(1-<z,w>)^b has a_alpha = (|alpha|+b-1)! / ((b-1)! alpha!).
      return make_rat(factorial(szego_b_ - 1) * multi_factorial(alpha),
                      factorial(n + szego_b_ - 1));
    case Kind::WeightedBergmanDisc:
      return 1 / (bergman_s_ * n + 1);
    case Kind::UdInvariantGamma: {
      if (n >= gamma_sq_.size()) {
        throw input_error("gamma table covers degrees < " +
                          std::to_string(gamma_sq_.size()) + ", query had degree " +
                          std::to_string(n));
      }
      return gamma_sq_[n] * make_rat(multi_factorial(alpha), factorial(n + 1));
    }
    case Kind::TdCustom: {
      auto it = custom_table_.find(alpha);
      if (it != custom_table_.end()) return it->second;
      if (n <= custom_degree_)
        throw input_error("custom norm table is missing an entry of degree " +
                          std::to_string(n));
      if (custom_tail_) return custom_tail_->norm_sq(alpha);
      throw input_error("custom norm table declared up to degree " +
                        std::to_string(custom_degree_) + " and has no tail rule");
    }
    case Kind::TensorProduct:
      return left_->norm_sq({alpha[0]}) * right_->norm_sq({alpha[1]});
    case Kind::AffineKernelMix: {
      Rational coeff = kernel_coefficient(alpha);
      if (sgn(coeff) <= 0)
        throw input_error("affine kernel mix has a nonpositive coefficient at degree " +
                          std::to_string(n));
      return 1 / coeff;
    }
    case Kind::ConstantKernel:
      if (n == 0) return Rational(1);
      throw input_error("constant kernel has no monomials of positive degree");
  }
  throw std::logic_error("unreachable");
}

Rational ModuleSpec::kernel_coefficient(const MultiIndex& alpha) const {
  require_dimension(alpha, dimension_);
  if (kind_ == Kind::ConstantKernel)
    return total_degree(alpha) == 0 ? Rational(1) : Rational(0);
  if (kind_ == Kind::AffineKernelMix) {
    Rational sum(0);
    for (const auto& [weight, part] : mix_)
      sum += weight * part->kernel_coefficient(alpha);
    return sum;
  }
  return 1 / norm_sq(alpha);
}

ModuleSpec ModuleSpec::hardy_polydisc(unsigned d) {
  if (d == 0) throw input_error("dimension must be positive");
  ModuleSpec spec;
  spec.kind_ = Kind::HardyPolydisc;
  spec.dimension_ = d;
  spec.ud_invariant_ = (d == 1);
  spec.subnormal_witness_ = "toral isometry; product Szego measure on the torus";
  spec.name_ = "hardy-polydisc(d=" + std::to_string(d) + ")";
  return spec;
}

ModuleSpec ModuleSpec::hardy_ball(unsigned d) {
  if (d == 0) throw input_error("dimension must be positive");
  ModuleSpec spec;
  spec.kind_ = Kind::HardyBall;
  spec.dimension_ = d;
  spec.ud_invariant_ = true;
  spec.subnormal_witness_ = "spherical isometry; surface measure on the sphere";
  spec.name_ = "hardy-ball(d=" + std::to_string(d) + ")";
  return spec;
}

ModuleSpec ModuleSpec::drury_arveson(unsigned d) {
  if (d == 0) throw input_error("dimension must be positive");
  ModuleSpec spec;
  spec.kind_ = Kind::DruryArveson;
  spec.dimension_ = d;
  spec.ud_invariant_ = true;
  if (d == 1) spec.subnormal_witness_ = "coincides with the Hardy module on the disc";
  spec.name_ = "drury-arveson(d=" + std::to_string(d) + ")";
  return spec;
}

ModuleSpec ModuleSpec::dirichlet(unsigned d) {
  if (d == 0) throw input_error("dimension must be positive");
  ModuleSpec spec;
  spec.kind_ = Kind::Dirichlet;
  spec.dimension_ = d;
  spec.ud_invariant_ = true;
  spec.name_ = "dirichlet(d=" + std::to_string(d) + ")";
  return spec;
}

ModuleSpec ModuleSpec::szego_power(unsigned b, unsigned d) {
  if (d == 0) throw input_error("dimension must be positive");
  if (b < 1 || b > d)
    throw input_error("szego power parameter must satisfy 1 <= b <= d");
  ModuleSpec spec;
  spec.kind_ = Kind::SzegoPower;
  spec.dimension_ = d;
  spec.szego_b_ = b;
  spec.ud_invariant_ = true;
  if (b == d) spec.subnormal_witness_ = "spherical isometry; surface measure on the sphere";
  spec.name_ = "szego-power(b=" + std::to_string(b) + ",d=" + std::to_string(d) + ")";
  return spec;
}

ModuleSpec ModuleSpec::weighted_bergman_disc(const Rational& s) {
  if (sgn(s) <= 0) throw input_error("bergman weight must be positive");
  ModuleSpec spec;
  spec.kind_ = Kind::WeightedBergmanDisc;
  spec.dimension_ = 1;
  spec.bergman_s_ = s;
  spec.ud_invariant_ = true;
  spec.subnormal_witness_ = "radially weighted area measure on the disc";
  spec.name_ = "weighted-bergman(s=" + rat_to_string(s) + ")";
  return spec;
}

ModuleSpec ModuleSpec::ud_invariant_gamma(std::vector<Rational> gamma_sq,
                                          std::optional<std::string> witness) {
  if (gamma_sq.empty()) throw input_error("gamma table must be nonempty");
  for (const Rational& g : gamma_sq)
    if (sgn(g) <= 0) throw input_error("gamma table entries must be positive");
  ModuleSpec spec;
  spec.kind_ = Kind::UdInvariantGamma;
  spec.dimension_ = 2;
  spec.gamma_sq_ = std::move(gamma_sq);
  spec.ud_invariant_ = true;
  spec.subnormal_witness_ = std::move(witness);
  spec.name_ = "ud-gamma(" + std::to_string(spec.gamma_sq_.size()) + " degrees)";
  return spec;
}

ModuleSpec ModuleSpec::td_custom(unsigned d, std::map<MultiIndex, Rational> table,
                                 unsigned declared_degree,
                                 std::shared_ptr<const ModuleSpec> tail) {
  if (d == 0) throw input_error("dimension must be positive");
  for (const auto& [alpha, value] : table) {
    require_dimension(alpha, d);
    if (sgn(value) <= 0) throw input_error("custom norms must be positive");
  }
  if (tail && tail->dimension() != d)
    throw input_error("tail rule dimension mismatch");
  ModuleSpec spec;
  spec.kind_ = Kind::TdCustom;
  spec.dimension_ = d;
  spec.custom_table_ = std::move(table);
  spec.custom_degree_ = declared_degree;
  spec.custom_tail_ = std::move(tail);
  spec.name_ = "custom(d=" + std::to_string(d) + ")";
  return spec;
}

ModuleSpec ModuleSpec::constant_kernel(unsigned d) {
  if (d == 0) throw input_error("dimension must be positive");
  ModuleSpec spec;
  spec.kind_ = Kind::ConstantKernel;
  spec.dimension_ = d;
  spec.ud_invariant_ = true;
  spec.name_ = "constant(d=" + std::to_string(d) + ")";
  return spec;
}

ModuleSpec tensor(const ModuleSpec& left, const ModuleSpec& right) {
  if (left.dimension() != 1 || right.dimension() != 1)
    throw input_error("tensor factors must be one-dimensional");
  ModuleSpec spec;
  spec.kind_ = Kind::TensorProduct;
  spec.dimension_ = 2;
  spec.left_ = std::make_shared<ModuleSpec>(left);
  spec.right_ = std::make_shared<ModuleSpec>(right);
  if (left.subnormal_witness() && right.subnormal_witness())
    spec.subnormal_witness_ = "product of the factor measures";
  spec.name_ = left.name() + " (x) " + right.name();
  return spec;
}

ModuleSpec affine_mix(std::vector<std::pair<Rational, ModuleSpec>> components,
                      std::optional<std::string> witness) {
  if (components.empty()) throw input_error("affine mix needs components");
  unsigned d = components.front().second.dimension();
  ModuleSpec spec;
  spec.kind_ = Kind::AffineKernelMix;
  spec.dimension_ = d;
  spec.subnormal_witness_ = std::move(witness);
  bool all_ud = true;
  for (auto& [weight, part] : components) {
    if (part.dimension() != d) throw input_error("mix components must share dimension");
    all_ud = all_ud && part.ud_invariant();
    spec.mix_.emplace_back(weight, std::make_shared<ModuleSpec>(std::move(part)));
  }
  spec.ud_invariant_ = all_ud;
  // (C1): the kernel must not vanish at the origin.
  MultiIndex origin(d, 0);
  if (sgn(spec.kernel_coefficient(origin)) <= 0)
    throw input_error("affine kernel mix vanishes at the origin");
  spec.name_ = "affine-mix(" + std::to_string(spec.mix_.size()) + " parts)";
  return spec;
}

Rational shift_ratio_bound(const ModuleSpec& spec, unsigned coordinate, unsigned degree_cap) {
  unsigned d = spec.dimension();
  if (coordinate >= d) throw input_error("coordinate out of range");
  Rational best(0);
  MultiIndex alpha(d, 0);
  // Walk all |alpha| <= degree_cap in odometer order.
  while (true) {
    MultiIndex shifted = alpha;
    shifted[coordinate] += 1;
    Rational ratio = spec.norm_sq(shifted) / spec.norm_sq(alpha);
    if (ratio > best) best = ratio;
    unsigned pos = 0;
    while (pos < d) {
      alpha[pos] += 1;
      if (total_degree(alpha) <= degree_cap) break;
      alpha[pos] = 0;
      ++pos;
    }
    if (pos == d) break;
  }
  return best;
}

namespace {

ModuleSpec module_from_table(const toml_mini::Table& table);

ModuleSpec builtin_from_table(const std::string& kind, const toml_mini::Table& table) {
  auto get_d = [&](unsigned fallback) -> unsigned {
    if (auto v = table.find_int("d")) return static_cast<unsigned>(*v);
    return fallback;
  };
  if (kind == "hardy-polydisc") return ModuleSpec::hardy_polydisc(get_d(2));
  if (kind == "hardy-ball") return ModuleSpec::hardy_ball(get_d(2));
  if (kind == "drury-arveson") return ModuleSpec::drury_arveson(get_d(2));
  if (kind == "dirichlet") return ModuleSpec::dirichlet(get_d(2));
  if (kind == "szego-power") {
    auto b = table.find_int("b");
    if (!b) throw input_error("szego-power needs b");
    return ModuleSpec::szego_power(static_cast<unsigned>(*b), get_d(2));
  }
  if (kind == "weighted-bergman") {
    auto s = table.find_string("s");
    if (!s) throw input_error("weighted-bergman needs s");
    return ModuleSpec::weighted_bergman_disc(rat_from_string(*s));
  }
  if (kind == "constant") return ModuleSpec::constant_kernel(get_d(2));
  if (kind == "ud-gamma") {
    auto raw = table.find_string_array("gamma_table");
    if (!raw) throw input_error("ud-gamma needs gamma_table");
    std::vector<Rational> gamma;
    gamma.reserve(raw->size());
    for (const auto& s : *raw) gamma.push_back(rat_from_string(s));
    return ModuleSpec::ud_invariant_gamma(std::move(gamma),
                                          table.find_string("subnormal_witness"));
  }
  if (kind == "custom") {
    unsigned d = get_d(2);
    auto rows = table.find_string_array("norm_table");
    if (!rows) throw input_error("custom needs norm_table");
    std::map<MultiIndex, Rational> norms;
    unsigned declared = 0;
    for (const auto& row : *rows) {
      std::istringstream words(row);
      MultiIndex alpha;
      std::string tok, last;
      std::vector<std::string> all;
      while (words >> tok) all.push_back(tok);
      if (all.size() != d + 1)
        throw input_error("norm_table rows need d exponents and a value: " + row);
      for (unsigned i = 0; i < d; ++i) {
        try {
          alpha.push_back(static_cast<unsigned>(std::stoul(all[i])));
        } catch (const std::exception&) {
          throw input_error("bad exponent in norm_table row: " + row);
        }
      }
      declared = std::max(declared, total_degree(alpha));
      norms[alpha] = rat_from_string(all[d]);
    }
    if (auto v = table.find_int("declared_degree"))
      declared = static_cast<unsigned>(*v);
    std::shared_ptr<const ModuleSpec> tail;
    if (auto sub = table.find_table("tail"))
      tail = std::make_shared<ModuleSpec>(module_from_table(*sub));
    return ModuleSpec::td_custom(d, std::move(norms), declared, std::move(tail));
  }
  throw input_error("unknown module kind: " + kind);
}

ModuleSpec module_from_table(const toml_mini::Table& table) {
  auto kind = table.find_string("kind");
  if (!kind) throw input_error("module spec needs a kind");
  if (*kind == "tensor") {
    auto lt = table.find_table("left");
    auto rt = table.find_table("right");
    if (!lt || !rt) throw input_error("tensor needs left and right tables");
    return tensor(module_from_table(*lt), module_from_table(*rt));
  }
  if (*kind == "affine-mix") {
    auto parts = table.find_table_array("components");
    if (!parts || parts->empty()) throw input_error("affine-mix needs components");
    std::vector<std::pair<Rational, ModuleSpec>> components;
    for (const auto& part : *parts) {
      auto weight = part.find_string("weight");
      if (!weight) throw input_error("mix component needs a weight");
      components.emplace_back(rat_from_string(*weight), module_from_table(part));
    }
    return affine_mix(std::move(components), table.find_string("subnormal_witness"));
  }
  return builtin_from_table(*kind, table);
}

}  // namespace

ModuleSpec module_from_toml_text(const std::string& text) {
  return module_from_table(toml_mini::parse(text));
}

ModuleSpec module_from_toml_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open module spec file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return module_from_toml_text(buffer.str());
}

}  // namespace qml
