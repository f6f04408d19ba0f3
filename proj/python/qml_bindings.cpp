#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qml/engine.hpp"
#include "qml/json_io.hpp"
#include "qml/moments.hpp"
#include "qml/quotient.hpp"

namespace py = pybind11;
using namespace qml;

namespace {

// Module specs travel as TOML text, values as exact "p/q" strings, reports
// as JSON strings; the python layer stays exact by never touching floats.

ModuleSpec spec_of(const std::string& toml_text) { return module_from_toml_text(toml_text); }

HomoPoly2 poly_of(const std::string& text) { return HomoPoly2::from_map(parse_poly(text)); }

std::string dump(const OrderedJson& json) { return json.dump(2); }

std::string py_norm_sq(const std::string& module, const std::vector<unsigned>& alpha) {
  return rat_to_string(spec_of(module).norm_sq(alpha));
}

std::string py_decide(const std::string& module, const std::string& poly, unsigned depth) {
  return dump(verdict_to_json(decide(spec_of(module), poly_of(poly), depth)));
}

std::string py_quotient_gamma(const std::string& module, const std::string& a, unsigned count) {
  return dump(moment_seq_to_json(quotient_gamma(spec_of(module), gauss_from_string(a), count)));
}

std::string py_berger_gamma(const std::string& module, unsigned coordinate, unsigned count) {
  return dump(moment_seq_to_json(berger_gamma(spec_of(module), coordinate, count)));
}

std::string py_tensor_gamma(const std::string& left, const std::string& right, unsigned count) {
  return dump(moment_seq_to_json(tensor_gamma(spec_of(left), spec_of(right), count)));
}

std::string py_stieltjes_check(const std::vector<std::string>& values, std::size_t max_size) {
  MomentSeq seq;
  seq.provenance = "raw";
  for (const auto& v : values) seq.values.push_back(rat_from_string(v));
  return dump(hankel_report_to_json(stieltjes_check(seq, max_size)));
}

std::string py_lemma_basis(const std::string& module, unsigned r, unsigned s,
                           const std::string& a, unsigned cap) {
  return dump(basis_to_json(lemma_basis(spec_of(module), r, s, gauss_from_string(a), cap)));
}

std::string py_shift_weights(const std::string& module, const std::string& a, unsigned count) {
  return dump(shift_model_to_json(shift_weights(spec_of(module), gauss_from_string(a), count)));
}

std::string py_bimoments(const std::string& module, const std::string& a, unsigned n,
                         unsigned k_max, unsigned l_max) {
  return dump(bimoments_to_json(
      bimoments_quotient(spec_of(module), gauss_from_string(a), n, k_max, l_max)));
}

std::string py_measure_moment(const std::string& measure_json, unsigned n) {
  MeasureFamily family = measure_from_json(OrderedJson::parse(measure_json));
  return rat_to_string(measure_moment(family, n));
}

std::string py_measure_bimoment(const std::string& measure_json, unsigned k, unsigned l) {
  MeasureFamily family = measure_from_json(OrderedJson::parse(measure_json));
  return rat_to_string(measure_bimoment(family, k, l));
}

bool py_verify_measure_seq(const std::string& measure_json, const std::vector<std::string>& values) {
  MeasureFamily family = measure_from_json(OrderedJson::parse(measure_json));
  MomentSeq seq;
  for (const auto& v : values) seq.values.push_back(rat_from_string(v));
  return verify_measure(family, seq);
}

std::string py_matrices(const std::string& module, const std::string& poly, unsigned cap) {
  return dump(matrices_to_json(projection_oracle(spec_of(module), poly_of(poly), cap)));
}

bool py_check_m_isometry(const std::string& module, unsigned m, unsigned cap) {
  return check_m_isometry(spec_of(module), m, cap);
}

bool py_check_weak_m_isometry(const std::string& module, unsigned m) {
  return check_weak_m_isometry(spec_of(module), m);
}

std::string py_classify_bergman_tensor(const std::string& s1, const std::string& s2,
                                       unsigned depth) {
  return dump(
      verdict_to_json(classify_bergman_tensor(rat_from_string(s1), rat_from_string(s2), depth)));
}

py::dict py_classify(const std::string& poly) {
  Classification cls = classify(parse_poly(poly));
  py::dict out;
  out["zero"] = cls.zero;
  out["homogeneous"] = cls.homogeneous;
  out["degree"] = cls.degree;
  return out;
}

bool py_is_square_free(const std::string& poly) { return is_square_free(poly_of(poly)); }

std::string py_factor(const std::string& poly, unsigned precision) {
  LinearFactorization fac = factor(poly_of(poly), precision);
  OrderedJson out;
  out["lead"] = OrderedJson{{"re", rat_to_string(fac.lead.re)}, {"im", rat_to_string(fac.lead.im)}};
  out["z2_power"] = fac.z2_power;
  OrderedJson roots = OrderedJson::array();
  for (const auto& root : fac.roots)
    roots.push_back(OrderedJson{{"re", rat_to_string(root.re)}, {"im", rat_to_string(root.im)}});
  out["roots"] = std::move(roots);
  out["approximate"] = fac.approximate;
  return dump(out);
}

py::object py_normal_form(const std::string& poly) {
  auto form = normal_form(poly_of(poly));
  if (!form) return py::none();
  py::dict out;
  out["r"] = form->r;
  out["s"] = form->s;
  out["a"] = gauss_to_string(form->a);
  out["scale"] = gauss_to_string(form->scale);
  return out;
}

}  // namespace

PYBIND11_MODULE(_qml, m) {
  m.doc() = "Exact subnormality certificates for quotients of torus-invariant Hilbert modules";

  py::register_exception<input_error>(m, "InputError", PyExc_ValueError);
  py::register_exception<exactness_error>(m, "ExactnessError", PyExc_ValueError);

  m.def("norm_sq", &py_norm_sq, py::arg("module"), py::arg("alpha"),
        "Exact ||z^alpha||^2 as a rational string; `module` is TOML text");
  m.def("decide", &py_decide, py::arg("module"), py::arg("poly"), py::arg("depth") = 32,
        "Subnormality verdict for the quotient by a homogeneous polynomial (JSON)");
  m.def("quotient_gamma", &py_quotient_gamma, py::arg("module"), py::arg("a"), py::arg("count"),
        "Moment sequence of the quotient by z1 - a z2 (JSON)");
  m.def("berger_gamma", &py_berger_gamma, py::arg("module"), py::arg("coordinate"),
        py::arg("count"), "Moment sequence when the generator is a coordinate (JSON)");
  m.def("tensor_gamma", &py_tensor_gamma, py::arg("left"), py::arg("right"), py::arg("count"));
  m.def("stieltjes_check", &py_stieltjes_check, py::arg("values"), py::arg("max_size"),
        "Two-Hankel PSD certificate on rational strings (JSON report)");
  m.def("lemma_basis", &py_lemma_basis, py::arg("module"), py::arg("r"), py::arg("s"),
        py::arg("a"), py::arg("cap"), "Closed-form orthogonal basis of the quotient (JSON)");
  m.def("shift_weights", &py_shift_weights, py::arg("module"), py::arg("a"), py::arg("count"));
  m.def("bimoments", &py_bimoments, py::arg("module"), py::arg("a"), py::arg("n"),
        py::arg("k_max"), py::arg("l_max"));
  m.def("measure_moment", &py_measure_moment, py::arg("measure"), py::arg("n"));
  m.def("measure_bimoment", &py_measure_bimoment, py::arg("measure"), py::arg("k"), py::arg("l"));
  m.def("verify_measure_seq", &py_verify_measure_seq, py::arg("measure"), py::arg("values"));
  m.def("matrices", &py_matrices, py::arg("module"), py::arg("poly"), py::arg("cap"),
        "Compressed multiplication operators as exact degree blocks (JSON)");
  m.def("check_m_isometry", &py_check_m_isometry, py::arg("module"), py::arg("m"), py::arg("cap"));
  m.def("check_weak_m_isometry", &py_check_weak_m_isometry, py::arg("module"), py::arg("m"));
  m.def("classify_bergman_tensor", &py_classify_bergman_tensor, py::arg("s1"), py::arg("s2"),
        py::arg("depth") = 40);
  m.def("classify", &py_classify, py::arg("poly"));
  m.def("is_square_free", &py_is_square_free, py::arg("poly"));
  m.def("factor", &py_factor, py::arg("poly"), py::arg("precision") = 128);
  m.def("normal_form", &py_normal_form, py::arg("poly"));
}
