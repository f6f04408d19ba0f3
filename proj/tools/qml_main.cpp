#include "CLI11.hpp"

#include "qml/engine.hpp"
#include "qml/json_io.hpp"
#include "qml/moments.hpp"
#include "qml/quotient.hpp"

#include <cstdlib>
#include <iostream>
#include <sstream>

namespace {

using namespace qml;

constexpr int kExitParseError = 64;
constexpr int kExitExactnessError = 65;
constexpr int kExitInternalError = 70;

unsigned default_depth() {
  if (const char* env = std::getenv("QML_DEPTH")) {
    try {
      long v = std::stol(env);
      if (v >= 4) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw input_error("QML_DEPTH must be an integer >= 4");
  }
  return 32;
}

// Shared module-selection flags; either inline kind flags or a TOML file.
struct ModuleOptions {
  std::string kind;
  std::string spec_path;
  unsigned d = 2;
  unsigned b = 1;
  std::string s = "1";
  std::string gamma_table;

  void attach(CLI::App* cmd) {
    cmd->add_option("--module", kind,
                    "module kind: hardy-polydisc, hardy-ball, drury-arveson, dirichlet, "
                    "szego-power, weighted-bergman, ud-gamma");
    cmd->add_option("--spec", spec_path, "TOML module-spec file (alternative to --module)");
    cmd->add_option("--d", d, "dimension (default 2)");
    cmd->add_option("--b", b, "szego-power exponent");
    cmd->add_option("--bergman-s", s, "weighted-bergman weight, rational string");
    cmd->add_option("--gamma-table", gamma_table, "comma-separated gamma^2 values for ud-gamma");
  }

  ModuleSpec resolve() const {
    if (!spec_path.empty()) return module_from_toml_file(spec_path);
    if (kind.empty()) throw input_error("pass --module or --spec");
    if (kind == "hardy-polydisc") return ModuleSpec::hardy_polydisc(d);
    if (kind == "hardy-ball") return ModuleSpec::hardy_ball(d);
    if (kind == "drury-arveson") return ModuleSpec::drury_arveson(d);
    if (kind == "dirichlet") return ModuleSpec::dirichlet(d);
    if (kind == "szego-power") return ModuleSpec::szego_power(b, d);
    if (kind == "weighted-bergman") return ModuleSpec::weighted_bergman_disc(rat_from_string(s));
    if (kind == "ud-gamma") {
      if (gamma_table.empty()) throw input_error("ud-gamma needs --gamma-table");
      std::vector<Rational> table;
      std::stringstream stream(gamma_table);
      std::string item;
      while (std::getline(stream, item, ',')) table.push_back(rat_from_string(item));
      return ModuleSpec::ud_invariant_gamma(std::move(table));
    }
    throw input_error("unknown module kind: " + kind);
  }
};

void emit(const OrderedJson& json) { std::cout << json.dump(2) << "\n"; }

HomoPoly2 parse_homogeneous(const std::string& text) {
  return HomoPoly2::from_map(parse_poly(text));
}

std::string certificate_line(const Verdict& verdict) {
  if (const auto* cite = std::get_if<TheoremCitation>(&verdict.certificate))
    return "theorem: " + cite->statement;
  if (const auto* violation = std::get_if<HankelViolation>(&verdict.certificate))
    return "hankel violation: level " + std::to_string(violation->level) + ", size " +
           std::to_string(violation->size) + ", minor " + rat_to_string(violation->minor);
  if (const auto* measure = std::get_if<VerifiedMeasure>(&verdict.certificate))
    return "verified measure: " + measure_to_string(measure->family) + " (n <= " +
           std::to_string(measure->checked_to) + ")";
  if (const auto* witness = std::get_if<IsometryWitness>(&verdict.certificate))
    return "isometry witness (identities to " + std::to_string(witness->checked_to) + ")";
  const auto* evidence = std::get_if<EvidenceOnly>(&verdict.certificate);
  return "evidence only (depth " + std::to_string(evidence ? evidence->depth : 0) + ")";
}

int run(int argc, char** argv) {
  CLI::App app{"Exact subnormality certificates for quotients of torus-invariant Hilbert modules"};
  app.require_subcommand(1);
  std::string format = "json";
  app.add_option("--format", format, "output format: json or table")->envname("QML_FORMAT");

  // decide
  auto* decide_cmd = app.add_subcommand("decide", "run the decision rules on H/[p]");
  ModuleOptions decide_module;
  decide_module.attach(decide_cmd);
  std::string decide_poly;
  unsigned decide_depth = default_depth();
  decide_cmd->add_option("--poly", decide_poly, "homogeneous polynomial, e.g. \"z1 - 2*z2\"")
      ->required();
  decide_cmd->add_option("--depth", decide_depth, "moment/hankel depth");

  // gamma
  auto* gamma_cmd = app.add_subcommand("gamma", "moment sequence of a deg-1 quotient");
  ModuleOptions gamma_module;
  gamma_module.attach(gamma_cmd);
  std::string gamma_a;
  unsigned gamma_axis = 0;
  unsigned gamma_count = default_depth();
  gamma_cmd->add_option("--a", gamma_a, "Gaussian-rational a in p = z1 - a z2 (nonzero)");
  gamma_cmd->add_option("--axis", gamma_axis, "use p = z_j instead (j = 1 or 2)");
  gamma_cmd->add_option("--n", gamma_count, "number of moments");

  // hankel
  auto* hankel_cmd = app.add_subcommand("hankel", "Stieltjes certificate for a moment sequence");
  ModuleOptions hankel_module;
  hankel_module.attach(hankel_cmd);
  std::string hankel_a, hankel_seq;
  unsigned hankel_axis = 0;
  unsigned hankel_depth = default_depth();
  std::size_t hankel_size = 0;
  hankel_cmd->add_option("--a", hankel_a, "a for the quotient sequence");
  hankel_cmd->add_option("--axis", hankel_axis, "coordinate generator instead of --a");
  hankel_cmd->add_option("--seq", hankel_seq, "raw comma-separated rational sequence");
  hankel_cmd->add_option("--depth", hankel_depth, "sequence length when derived from a module");
  hankel_cmd->add_option("--max-size", hankel_size, "largest Hankel order (default depth/2)");

  // basis
  auto* basis_cmd = app.add_subcommand("basis", "closed-form orthogonal basis of H/[p]");
  ModuleOptions basis_module;
  basis_module.attach(basis_cmd);
  unsigned basis_r = 0, basis_s = 0, basis_cap = 8;
  std::string basis_a = "0";
  basis_cmd->add_option("--r", basis_r, "z1 exponent of the generator");
  basis_cmd->add_option("--s", basis_s, "z2 exponent of the generator");
  basis_cmd->add_option("--a", basis_a, "root a in z1 - a z2");
  basis_cmd->add_option("--n", basis_cap, "degree cap");

  // weights
  auto* weights_cmd = app.add_subcommand("weights", "weighted-shift model of H/[z1 - a z2]");
  ModuleOptions weights_module;
  weights_module.attach(weights_cmd);
  std::string weights_a = "1";
  unsigned weights_count = 8;
  weights_cmd->add_option("--a", weights_a, "nonzero Gaussian rational a");
  weights_cmd->add_option("--n", weights_count, "number of weights");

  // matrices
  auto* matrices_cmd = app.add_subcommand("matrices", "compressed shift blocks from the oracle");
  ModuleOptions matrices_module;
  matrices_module.attach(matrices_cmd);
  std::string matrices_poly;
  unsigned matrices_cap = 6;
  matrices_cmd->add_option("--poly", matrices_poly, "homogeneous generator")->required();
  matrices_cmd->add_option("--n", matrices_cap, "degree cap");

  // misometry
  auto* miso_cmd = app.add_subcommand("misometry", "m-isometry identities for the module tuple");
  ModuleOptions miso_module;
  miso_module.attach(miso_cmd);
  unsigned miso_m = 1, miso_cap = 8;
  bool miso_weak = false;
  miso_cmd->add_option("--m", miso_m, "isometry order")->required();
  miso_cmd->add_option("--n", miso_cap, "degree cap for the full identity");
  miso_cmd->add_flag("--weak", miso_weak, "test the per-coordinate identity only");

  // measure-verify
  auto* verify_cmd = app.add_subcommand("measure-verify",
                                        "compare closed-form measure moments with quotient data");
  ModuleOptions verify_module;
  verify_module.attach(verify_cmd);
  std::string verify_family, verify_a = "1", verify_point = "1", verify_weight = "1",
              verify_base = "1/2";
  unsigned verify_n = 0, verify_count = 32, verify_grid = 6;
  verify_cmd->add_option("--family", verify_family,
                         "atomic, geometric-atoms, diagonal-curve, half-axes")->required();
  verify_cmd->add_option("--a", verify_a, "quotient parameter a");
  verify_cmd->add_option("--point", verify_point, "atom position (atomic)");
  verify_cmd->add_option("--weight", verify_weight, "atom weight (atomic)");
  verify_cmd->add_option("--base", verify_base, "ratio/base (geometric-atoms)");
  verify_cmd->add_option("--curve-n", verify_n, "grid family parameter n");
  verify_cmd->add_option("--n", verify_count, "sequence length for 1-d comparisons");
  verify_cmd->add_option("--grid", verify_grid, "bimoment grid side for 2-d comparisons");

  // tensor-classify
  auto* tensor_cmd = app.add_subcommand("tensor-classify",
                                        "subnormality of weighted-Bergman tensor quotients");
  std::string tensor_s1, tensor_s2;
  unsigned tensor_depth = default_depth();
  tensor_cmd->add_option("--s1", tensor_s1, "first weight (positive rational)")->required();
  tensor_cmd->add_option("--s2", tensor_s2, "second weight (positive rational)")->required();
  tensor_cmd->add_option("--depth", tensor_depth, "hankel search depth");

  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) sub->fallthrough();
  CLI11_PARSE(app, argc, argv);
  const bool table = format == "table";
  if (!table && format != "json") throw input_error("--format must be json or table");

  if (decide_cmd->parsed()) {
    Verdict verdict =
        decide(decide_module.resolve(), parse_homogeneous(decide_poly), decide_depth);
    if (table) {
      std::cout << "status: " << status_name(verdict.status) << "\n";
      for (const auto& step : verdict.trace)
        std::cout << "rule " << step.id << ": " << step.citation << "\n  [" << step.inputs << "]\n";
      std::cout << "certificate: " << certificate_line(verdict) << "\n";
    } else {
      emit(verdict_to_json(verdict));
    }
    return status_exit_code(verdict.status);
  }

  if (gamma_cmd->parsed()) {
    ModuleSpec spec = gamma_module.resolve();
    MomentSeq seq = gamma_axis != 0 ? berger_gamma(spec, gamma_axis, gamma_count)
                                    : quotient_gamma(spec, gauss_from_string(gamma_a), gamma_count);
    if (table) {
      std::cout << "# " << seq.provenance << "\n";
      for (std::size_t n = 0; n < seq.values.size(); ++n)
        std::cout << n << "\t" << rat_to_string(seq.values[n]) << "\n";
    } else {
      emit(moment_seq_to_json(seq));
    }
    return 0;
  }

  if (hankel_cmd->parsed()) {
    MomentSeq seq;
    if (!hankel_seq.empty()) {
      std::stringstream stream(hankel_seq);
      std::string item;
      while (std::getline(stream, item, ',')) seq.values.push_back(rat_from_string(item));
      seq.provenance = "raw";
    } else {
      ModuleSpec spec = hankel_module.resolve();
      seq = hankel_axis != 0
                ? berger_gamma(spec, hankel_axis, hankel_depth)
                : quotient_gamma(spec, gauss_from_string(hankel_a), hankel_depth);
    }
    std::size_t max_size = hankel_size != 0 ? hankel_size : seq.values.size() / 2;
    if (seq.values.size() < 2 * max_size)
      throw input_error("depth must be at least twice the hankel size");
    HankelReport report = stieltjes_check(seq, max_size);
    if (table) {
      if (report.violation)
        std::cout << "violation: level " << report.violation->level << ", size "
                  << report.violation->size << ", minor " << rat_to_string(report.violation->minor)
                  << "\n";
      else
        std::cout << "psd to size " << report.psd_verified_to << " (evidence)\n";
    } else {
      emit(hankel_report_to_json(report));
    }
    return report.violation ? 1 : 0;
  }

  if (basis_cmd->parsed()) {
    auto basis = lemma_basis(basis_module.resolve(), basis_r, basis_s,
                             gauss_from_string(basis_a), basis_cap);
    if (table) {
      for (const auto& element : basis)
        std::cout << element.label.to_string() << "\tdeg " << element.degree << "\t|.|^2 = "
                  << rat_to_string(element.norm_sq) << "\t" << poly_to_string(element.terms)
                  << "\n";
    } else {
      emit(basis_to_json(basis));
    }
    return 0;
  }

  if (weights_cmd->parsed()) {
    WeightedShiftModel model =
        shift_weights(weights_module.resolve(), gauss_from_string(weights_a), weights_count);
    if (table) {
      std::cout << "n\tw^2\t|q_n|^2\n";
      for (std::size_t n = 0; n < model.weight_sq.size(); ++n)
        std::cout << n << "\t" << rat_to_string(model.weight_sq[n]) << "\t"
                  << rat_to_string(model.q_norm_sq[n]) << "\n";
    } else {
      emit(shift_model_to_json(model));
    }
    return 0;
  }

  if (matrices_cmd->parsed()) {
    TruncatedQuotient tq = projection_oracle(matrices_module.resolve(),
                                             parse_homogeneous(matrices_poly), matrices_cap);
    emit(matrices_to_json(tq));
    return annihilator_check(tq) ? 0 : kExitInternalError;
  }

  if (miso_cmd->parsed()) {
    ModuleSpec spec = miso_module.resolve();
    bool holds = miso_weak ? check_weak_m_isometry(spec, miso_m)
                           : check_m_isometry(spec, miso_m, miso_cap);
    OrderedJson out;
    out["module"] = spec.name();
    out["m"] = miso_m;
    out["weak"] = miso_weak;
    out["degree_cap"] = miso_weak ? 0 : miso_cap;
    out["holds"] = holds;
    if (table) std::cout << (holds ? "holds" : "fails") << "\n";
    else emit(out);
    return holds ? 0 : 1;
  }

  if (verify_cmd->parsed()) {
    ModuleSpec spec = verify_module.resolve();
    GaussianRational a = gauss_from_string(verify_a);
    MeasureFamily family = AtomicFinite{};
    bool grid_family = false;
    if (verify_family == "atomic") {
      family = AtomicFinite{{{rat_from_string(verify_point), rat_from_string(verify_weight)}}};
    } else if (verify_family == "geometric-atoms") {
      if (verify_cmd->count("--curve-n") > 0) {
        family = GeometricAtoms{rat_from_string(verify_base), verify_n};
        grid_family = true;
      } else {
        family = GeometricAtoms{rat_from_string(verify_base), std::nullopt};
      }
    } else if (verify_family == "diagonal-curve") {
      family = DiagonalCurve{verify_n};
      grid_family = true;
    } else if (verify_family == "half-axes") {
      family = HalfAxesProduct{};
      grid_family = true;
    } else {
      throw input_error("unknown measure family: " + verify_family);
    }
    bool ok;
    OrderedJson out;
    out["measure"] = measure_to_json(family);
    if (grid_family) {
      Bimoments grid = bimoments_quotient(spec, a, verify_n, verify_grid, verify_grid);
      ok = verify_measure(family, grid);
      out["against"] = grid.provenance;
      out["grid"] = verify_grid;
    } else {
      MomentSeq gamma = quotient_gamma(spec, a, verify_count);
      ok = verify_measure(family, gamma);
      out["against"] = gamma.provenance;
      out["n"] = verify_count;
    }
    out["verified"] = ok;
    if (table) std::cout << (ok ? "verified" : "mismatch") << "\n";
    else emit(out);
    return ok ? 0 : 1;
  }

  if (tensor_cmd->parsed()) {
    Verdict verdict = classify_bergman_tensor(rat_from_string(tensor_s1),
                                              rat_from_string(tensor_s2), tensor_depth);
    if (table) {
      std::cout << "status: " << status_name(verdict.status) << "\n";
      for (const auto& step : verdict.trace)
        std::cout << "rule " << step.id << ": " << step.inputs << "\n";
      std::cout << "certificate: " << certificate_line(verdict) << "\n";
    } else {
      emit(verdict_to_json(verdict));
    }
    return status_exit_code(verdict.status);
  }

  return kExitParseError;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const exactness_error& e) {
    std::cerr << "exactness error: " << e.what() << "\n";
    return kExitExactnessError;
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const CLI::ParseError& e) {
    std::cerr << "argument error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  }
}
