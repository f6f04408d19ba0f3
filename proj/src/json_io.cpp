#include "qml/json_io.hpp"

namespace qml {

namespace {

OrderedJson gauss_to_json(const GaussianRational& value) {
  return OrderedJson{{"re", rat_to_string(value.re)}, {"im", rat_to_string(value.im)}};
}

GaussianRational gauss_from_json(const OrderedJson& json) {
  return {rat_from_string(json.at("re").get<std::string>()),
          rat_from_string(json.at("im").get<std::string>())};
}

}  // namespace

OrderedJson moment_seq_to_json(const MomentSeq& seq) {
  OrderedJson out;
  out["provenance"] = seq.provenance;
  OrderedJson values = OrderedJson::array();
  for (const auto& v : seq.values) values.push_back(rat_to_string(v));
  out["gamma"] = std::move(values);
  return out;
}

MomentSeq moment_seq_from_json(const OrderedJson& json) {
  MomentSeq seq;
  seq.provenance = json.at("provenance").get<std::string>();
  for (const auto& v : json.at("gamma")) seq.values.push_back(rat_from_string(v.get<std::string>()));
  return seq;
}

OrderedJson hankel_report_to_json(const HankelReport& report) {
  OrderedJson out;
  out["psd_verified_to"] = report.psd_verified_to;
  if (report.violation) {
    OrderedJson v;
    v["level"] = report.violation->level;
    v["size"] = report.violation->size;
    v["minor"] = rat_to_string(report.violation->minor);
    v["indices"] = report.violation->indices;
    out["violation"] = std::move(v);
  } else {
    out["violation"] = nullptr;
  }
  return out;
}

HankelReport hankel_report_from_json(const OrderedJson& json) {
  HankelReport report;
  report.psd_verified_to = json.at("psd_verified_to").get<std::size_t>();
  const auto& v = json.at("violation");
  if (!v.is_null()) {
    HankelViolation violation;
    violation.level = v.at("level").get<int>();
    violation.size = v.at("size").get<std::size_t>();
    violation.minor = rat_from_string(v.at("minor").get<std::string>());
    violation.indices = v.at("indices").get<std::vector<std::size_t>>();
    report.violation = std::move(violation);
  }
  return report;
}

OrderedJson measure_to_json(const MeasureFamily& measure) {
  OrderedJson out;
  if (const auto* atoms = std::get_if<AtomicFinite>(&measure)) {
    out["family"] = "atomic";
    OrderedJson list = OrderedJson::array();
    for (const auto& [point, weight] : atoms->atoms)
      list.push_back(OrderedJson{{"point", rat_to_string(point)}, {"weight", rat_to_string(weight)}});
    out["atoms"] = std::move(list);
    return out;
  }
  if (const auto* geo = std::get_if<GeometricAtoms>(&measure)) {
    out["family"] = "geometric-atoms";
    out["base"] = rat_to_string(geo->base);
    if (geo->curve_n) out["n"] = *geo->curve_n;
    else out["n"] = nullptr;
    return out;
  }
  if (const auto* curve = std::get_if<DiagonalCurve>(&measure)) {
    out["family"] = "diagonal-curve";
    out["n"] = curve->n;
    return out;
  }
  out["family"] = "half-axes-product";
  return out;
}

MeasureFamily measure_from_json(const OrderedJson& json) {
  const std::string family = json.at("family").get<std::string>();
  if (family == "atomic") {
    AtomicFinite atoms;
    for (const auto& entry : json.at("atoms"))
      atoms.atoms.emplace_back(rat_from_string(entry.at("point").get<std::string>()),
                               rat_from_string(entry.at("weight").get<std::string>()));
    return atoms;
  }
  if (family == "geometric-atoms") {
    GeometricAtoms geo;
    geo.base = rat_from_string(json.at("base").get<std::string>());
    if (json.contains("n") && !json.at("n").is_null())
      geo.curve_n = json.at("n").get<unsigned>();
    return geo;
  }
  if (family == "diagonal-curve") return DiagonalCurve{json.at("n").get<unsigned>()};
  if (family == "half-axes-product") return HalfAxesProduct{};
  throw input_error("unknown measure family: " + family);
}

OrderedJson verdict_to_json(const Verdict& verdict) {
  OrderedJson out;
  out["status"] = status_name(verdict.status);
  OrderedJson rules = OrderedJson::array();
  for (const auto& step : verdict.trace)
    rules.push_back(OrderedJson{{"id", step.id}, {"citation", step.citation}, {"inputs", step.inputs}});
  out["rules"] = std::move(rules);
  OrderedJson cert;
  if (const auto* cite = std::get_if<TheoremCitation>(&verdict.certificate)) {
    cert["type"] = "theorem";
    cert["statement"] = cite->statement;
  } else if (const auto* violation = std::get_if<HankelViolation>(&verdict.certificate)) {
    cert["type"] = "hankel-violation";
    cert["level"] = violation->level;
    cert["size"] = violation->size;
    cert["minor"] = rat_to_string(violation->minor);
    cert["indices"] = violation->indices;
  } else if (const auto* measure = std::get_if<VerifiedMeasure>(&verdict.certificate)) {
    cert["type"] = "verified-measure";
    cert["measure"] = measure_to_json(measure->family);
    cert["checked_to"] = measure->checked_to;
    cert["grid"] = measure->grid;
  } else if (const auto* witness = std::get_if<IsometryWitness>(&verdict.certificate)) {
    cert["type"] = "isometry-witness";
    cert["checked_to"] = witness->checked_to;
  } else if (const auto* evidence = std::get_if<EvidenceOnly>(&verdict.certificate)) {
    cert["type"] = "evidence-only";
    cert["depth"] = evidence->depth;
  }
  out["certificate"] = std::move(cert);
  return out;
}

Verdict verdict_from_json(const OrderedJson& json) {
  Verdict verdict;
  const std::string status = json.at("status").get<std::string>();
  if (status == "Subnormal") verdict.status = Status::Subnormal;
  else if (status == "NotSubnormal") verdict.status = Status::NotSubnormal;
  else if (status == "Undetermined") verdict.status = Status::Undetermined;
  else throw input_error("unknown status: " + status);
  for (const auto& step : json.at("rules"))
    verdict.trace.push_back({step.at("id").get<std::string>(),
                             step.at("citation").get<std::string>(),
                             step.at("inputs").get<std::string>()});
  const auto& cert = json.at("certificate");
  const std::string type = cert.at("type").get<std::string>();
  if (type == "theorem") {
    verdict.certificate = TheoremCitation{cert.at("statement").get<std::string>()};
  } else if (type == "hankel-violation") {
    HankelViolation violation;
    violation.level = cert.at("level").get<int>();
    violation.size = cert.at("size").get<std::size_t>();
    violation.minor = rat_from_string(cert.at("minor").get<std::string>());
    violation.indices = cert.at("indices").get<std::vector<std::size_t>>();
    verdict.certificate = std::move(violation);
  } else if (type == "verified-measure") {
    verdict.certificate = VerifiedMeasure{measure_from_json(cert.at("measure")),
                                          cert.at("checked_to").get<unsigned>(),
                                          cert.at("grid").get<unsigned>()};
  } else if (type == "isometry-witness") {
    verdict.certificate = IsometryWitness{cert.at("checked_to").get<unsigned>()};
  } else if (type == "evidence-only") {
    verdict.certificate = EvidenceOnly{cert.at("depth").get<unsigned>()};
  } else {
    throw input_error("unknown certificate type: " + type);
  }
  return verdict;
}

OrderedJson bimoments_to_json(const Bimoments& grid) {
  OrderedJson out;
  out["provenance"] = grid.provenance;
  out["a"] = gauss_to_string(grid.a);
  out["n"] = grid.n;
  OrderedJson rows = OrderedJson::array();
  for (const auto& row : grid.values) {
    OrderedJson cells = OrderedJson::array();
    for (const auto& v : row) cells.push_back(rat_to_string(v));
    rows.push_back(std::move(cells));
  }
  out["gamma"] = std::move(rows);
  return out;
}

OrderedJson basis_to_json(const std::vector<QuotientBasisElement>& basis) {
  OrderedJson out = OrderedJson::array();
  for (const auto& element : basis) {
    OrderedJson entry;
    entry["label"] = element.label.to_string();
    entry["degree"] = element.degree;
    OrderedJson terms = OrderedJson::array();
    for (const auto& [mono, coeff] : element.terms) {
      OrderedJson term;
      term["monomial"] = OrderedJson::array({mono.k1, mono.k2});
      term["coeff"] = gauss_to_json(coeff);
      terms.push_back(std::move(term));
    }
    entry["terms"] = std::move(terms);
    entry["norm_sq"] = rat_to_string(element.norm_sq);
    out.push_back(std::move(entry));
  }
  return out;
}

std::vector<QuotientBasisElement> basis_from_json(const OrderedJson& json) {
  std::vector<QuotientBasisElement> basis;
  for (const auto& entry : json) {
    QuotientBasisElement element;
    const std::string label = entry.at("label").get<std::string>();
    auto open = label.find('(');
    auto comma = label.find(',');
    auto close = label.find(')');
    std::string head = label.substr(0, open);
    if (head == "p") element.label.type = BasisLabel::Type::PType;
    else if (head == "q") element.label.type = BasisLabel::Type::QType;
    else element.label.type = BasisLabel::Type::QRType;
    if (element.label.type == BasisLabel::Type::QRType) {
      element.label.n = static_cast<unsigned>(std::stoul(label.substr(open + 1, close - open - 1)));
    } else {
      element.label.j = static_cast<unsigned>(std::stoul(label.substr(open + 1, comma - open - 1)));
      element.label.n = static_cast<unsigned>(std::stoul(label.substr(comma + 1, close - comma - 1)));
    }
    element.degree = entry.at("degree").get<unsigned>();
    for (const auto& term : entry.at("terms")) {
      Mono2 mono{term.at("monomial").at(0).get<unsigned>(),
                 term.at("monomial").at(1).get<unsigned>()};
      element.terms[mono] = gauss_from_json(term.at("coeff"));
    }
    element.norm_sq = rat_from_string(entry.at("norm_sq").get<std::string>());
    basis.push_back(std::move(element));
  }
  return basis;
}

OrderedJson shift_model_to_json(const WeightedShiftModel& model) {
  OrderedJson out;
  out["a"] = gauss_to_string(model.a);
  OrderedJson norms = OrderedJson::array();
  for (const auto& v : model.q_norm_sq) norms.push_back(rat_to_string(v));
  out["q_norm_sq"] = std::move(norms);
  OrderedJson weights = OrderedJson::array();
  for (const auto& v : model.weight_sq) weights.push_back(rat_to_string(v));
  out["weight_sq"] = std::move(weights);
  return out;
}

OrderedJson matrices_to_json(const TruncatedQuotient& tq) {
  OrderedJson out;
  out["module"] = tq.spec().name();
  out["p"] = tq.generator().to_string();
  out["degree_cap"] = tq.degree_cap();
  OrderedJson dims = OrderedJson::array();
  for (unsigned n = 0; n <= tq.degree_cap(); ++n) dims.push_back(tq.complement_dimension(n));
  out["complement_dimensions"] = std::move(dims);
  auto block_json = [](const GMatrix& block) {
    OrderedJson rows = OrderedJson::array();
    for (std::size_t i = 0; i < block.rows; ++i) {
      OrderedJson row = OrderedJson::array();
      for (std::size_t j = 0; j < block.cols; ++j) row.push_back(gauss_to_json(block.at(i, j)));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  OrderedJson t1 = OrderedJson::array(), t2 = OrderedJson::array();
  for (unsigned n = 0; n < tq.degree_cap(); ++n) {
    t1.push_back(block_json(tq.shift_block(1, n)));
    t2.push_back(block_json(tq.shift_block(2, n)));
  }
  out["t_z1_blocks"] = std::move(t1);
  out["t_z2_blocks"] = std::move(t2);
  return out;
}

}  // namespace qml
