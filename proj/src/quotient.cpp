#include "qml/quotient.hpp"

#include <algorithm>

namespace qml {

GaussianRational inner_product(const ModuleSpec& spec, const PolyMap2& f, const PolyMap2& g) {
  GaussianRational sum;
  for (const auto& [mono, fc] : f) {
    auto it = g.find(mono);
    if (it == g.end()) continue;
    Rational weight = spec.norm_sq({mono.k1, mono.k2});
    sum += fc * it->second.conj() * GaussianRational(weight);
  }
  return sum;
}

Rational norm_sq_of(const ModuleSpec& spec, const PolyMap2& f) {
  Rational sum(0);
  for (const auto& [mono, fc] : f)
    sum += fc.abs_sq() * spec.norm_sq({mono.k1, mono.k2});
  return sum;
}

std::string BasisLabel::to_string() const {
  switch (type) {
    case Type::PType: return "p(" + std::to_string(j) + "," + std::to_string(n) + ")";
    case Type::QType: return "q(" + std::to_string(j) + "," + std::to_string(n) + ")";
    case Type::QRType: return "q_r(" + std::to_string(n) + ")";
  }
  return "?";
}

QuotientBasisElement lemma_q_element(const ModuleSpec& spec, unsigned r, unsigned s,
                                     const GaussianRational& a, unsigned n) {
  if (spec.dimension() != 2) throw input_error("quotient basis needs a 2-dimensional module");
  if (n < r + s) throw input_error("q_n is defined for n >= r+s");
  QuotientBasisElement element;
  element.label = {BasisLabel::Type::QRType, 0, n};
  element.degree = n;
  Rational norm(0);
  GaussianRational abar_power{Rational(1)};
  const GaussianRational abar = a.conj();
  for (unsigned k = r; k <= n - s; ++k) {
    Rational mono_norm = spec.norm_sq({k, n - k});
    GaussianRational coeff = abar_power / GaussianRational(mono_norm);
    if (!coeff.is_zero()) element.terms[{k, n - k}] = coeff;
    norm += coeff.abs_sq() * mono_norm;
    abar_power *= abar;
    if (abar_power.is_zero()) {
      // a = 0: only the k = r term survives.
      break;
    }
  }
  element.norm_sq = norm;
  return element;
}

std::vector<QuotientBasisElement> lemma_basis(const ModuleSpec& spec, unsigned r, unsigned s,
                                              const GaussianRational& a, unsigned degree_cap) {
  if (spec.dimension() != 2) throw input_error("quotient basis needs a 2-dimensional module");
  if (degree_cap < r + s + 1) throw input_error("degree cap below deg p");
  std::vector<QuotientBasisElement> basis;
  // p-type rows z1^n z2^j exist only when s >= 1.
  for (unsigned j = 0; s >= 1 && j <= s - 1; ++j) {
    for (unsigned n = 0; n + j <= degree_cap; ++n) {
      QuotientBasisElement element;
      element.label = {BasisLabel::Type::PType, j, n};
      element.degree = n + j;
      element.terms[{n, j}] = GaussianRational{Rational(1)};
      element.norm_sq = spec.norm_sq({n, j});
      basis.push_back(std::move(element));
    }
  }
  // q-type rows z1^j z2^n exist only when r >= 1, from n = s on.
  for (unsigned j = 0; r >= 1 && j <= r - 1; ++j) {
    for (unsigned n = s; j + n <= degree_cap; ++n) {
      QuotientBasisElement element;
      element.label = {BasisLabel::Type::QType, j, n};
      element.degree = j + n;
      element.terms[{j, n}] = GaussianRational{Rational(1)};
      element.norm_sq = spec.norm_sq({j, n});
      basis.push_back(std::move(element));
    }
  }
  for (unsigned n = r + s; n <= degree_cap; ++n)
    basis.push_back(lemma_q_element(spec, r, s, a, n));
  std::sort(basis.begin(), basis.end(),
            [](const QuotientBasisElement& x, const QuotientBasisElement& y) {
              if (x.degree != y.degree) return x.degree < y.degree;
              if (x.label.type != y.label.type) return x.label.type < y.label.type;
              return x.label.j < y.label.j;
            });
  return basis;
}

WeightedShiftModel shift_weights(const ModuleSpec& spec, const GaussianRational& a,
                                 unsigned count) {
  if (a.is_zero())
    throw input_error("a = 0 is the monomial generator case; the shift model needs a != 0");
  if (spec.dimension() != 2) throw input_error("shift model needs a 2-dimensional module");
  WeightedShiftModel model;
  model.a = a;
  for (unsigned n = 0; n <= count; ++n)
    model.q_norm_sq.push_back(lemma_q_element(spec, 0, 0, a, n).norm_sq);
  for (unsigned n = 0; n < count; ++n)
    model.weight_sq.push_back(model.q_norm_sq[n] / model.q_norm_sq[n + 1]);
  return model;
}

bool GMatrix::is_zero() const {
  for (const auto& v : data)
    if (!v.is_zero()) return false;
  return true;
}

GMatrix GMatrix::multiply(const GMatrix& a, const GMatrix& b) {
  if (a.cols != b.rows) throw std::logic_error("matrix shape mismatch");
  GMatrix out(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      const GaussianRational& av = a.at(i, k);
      if (av.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols; ++j) out.at(i, j) += av * b.at(k, j);
    }
  return out;
}

namespace {

// Solves the Hermitian system M x = rhs for several right-hand sides at once,
// by exact Gaussian elimination over Q(i).
std::vector<std::vector<GaussianRational>> solve_exact(
    std::vector<std::vector<GaussianRational>> m,
    std::vector<std::vector<GaussianRational>> rhs) {
  const std::size_t n = m.size();
  const std::size_t w = rhs.empty() ? 0 : rhs[0].size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col].is_zero()) ++pivot;
    if (pivot == n) throw std::logic_error("singular Gram system");
    std::swap(m[pivot], m[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || m[row][col].is_zero()) continue;
      GaussianRational ratio = m[row][col] / m[col][col];
      for (std::size_t k = col; k < n; ++k) m[row][k] -= ratio * m[col][k];
      for (std::size_t k = 0; k < w; ++k) rhs[row][k] -= ratio * rhs[col][k];
    }
  }
  std::vector<std::vector<GaussianRational>> x(n, std::vector<GaussianRational>(w));
  for (std::size_t row = 0; row < n; ++row)
    for (std::size_t k = 0; k < w; ++k) x[row][k] = rhs[row][k] / m[row][row];
  return x;
}

PolyMap2 scaled_sum(const PolyMap2& f, const GaussianRational& c, const PolyMap2& g) {
  PolyMap2 out = f;
  for (const auto& [mono, gc] : g) {
    GaussianRational v = (out.count(mono) ? out[mono] : GaussianRational{}) + c * gc;
    if (v.is_zero()) out.erase(mono);
    else out[mono] = v;
  }
  return out;
}

PolyMap2 shift_by(const PolyMap2& f, unsigned d1, unsigned d2) {
  PolyMap2 out;
  for (const auto& [mono, c] : f) out[{mono.k1 + d1, mono.k2 + d2}] = c;
  return out;
}

}  // namespace

TruncatedQuotient::TruncatedQuotient(ModuleSpec spec, HomoPoly2 p, unsigned degree_cap)
    : spec_(std::move(spec)), p_(std::move(p)), cap_(degree_cap) {
  if (spec_.dimension() != 2) throw input_error("projection oracle needs a 2-dimensional module");
  const unsigned m = p_.degree();
  if (cap_ < m) throw input_error("degree cap below deg p");

  monomial_projections_.resize(cap_ + 1);
  basis_.resize(cap_ + 1);
  basis_norm_sq_.resize(cap_ + 1);

  for (unsigned n = 0; n <= cap_; ++n) {
    // Generators of the degree-n slice of [p]: z^beta p, |beta| = n - m.
    std::vector<PolyMap2> generators;
    if (n >= m) {
      for (unsigned b1 = 0; b1 + m <= n; ++b1) generators.push_back(p_.shifted(b1, n - m - b1));
    }
    std::vector<PolyMap2> projections(n + 1);
    if (generators.empty()) {
      for (unsigned k = 0; k <= n; ++k) projections[k] = PolyMap2{{{k, n - k}, GaussianRational{Rational(1)}}};
    } else {
      const std::size_t g = generators.size();
      std::vector<std::vector<GaussianRational>> gram(g, std::vector<GaussianRational>(g));
      std::vector<std::vector<GaussianRational>> rhs(g, std::vector<GaussianRational>(n + 1));
      for (std::size_t j = 0; j < g; ++j) {
        for (std::size_t i = 0; i < g; ++i)
          gram[j][i] = inner_product(spec_, generators[i], generators[j]);
        for (unsigned k = 0; k <= n; ++k) {
          PolyMap2 mono{{{k, n - k}, GaussianRational{Rational(1)}}};
          rhs[j][k] = inner_product(spec_, mono, generators[j]);
        }
      }
      auto coeff = solve_exact(std::move(gram), std::move(rhs));
      for (unsigned k = 0; k <= n; ++k) {
        PolyMap2 proj{{{k, n - k}, GaussianRational{Rational(1)}}};
        for (std::size_t i = 0; i < g; ++i)
          proj = scaled_sum(proj, -coeff[i][k], generators[i]);
        projections[k] = std::move(proj);
      }
    }

    // Orthogonal (unnormalized) basis of the complement by exact Gram-Schmidt.
    for (unsigned k = 0; k <= n; ++k) {
      PolyMap2 candidate = projections[k];
      for (std::size_t i = 0; i < basis_[n].size(); ++i) {
        GaussianRational overlap =
            inner_product(spec_, candidate, basis_[n][i]) / GaussianRational(basis_norm_sq_[n][i]);
        if (!overlap.is_zero()) candidate = scaled_sum(candidate, -overlap, basis_[n][i]);
      }
      Rational nsq = norm_sq_of(spec_, candidate);
      if (sgn(nsq) != 0) {
        basis_[n].push_back(std::move(candidate));
        basis_norm_sq_[n].push_back(std::move(nsq));
      }
    }
    monomial_projections_[n] = std::move(projections);
  }

  // Shift blocks: entry (i, j) is the coefficient of basis vector i of the
  // next slice in P-perp(z_coord * basis vector j).
  for (unsigned n = 0; n < cap_; ++n) {
    const auto& from = basis_[n];
    const auto& to = basis_[n + 1];
    GMatrix m1(to.size(), from.size());
    GMatrix m2(to.size(), from.size());
    for (std::size_t j = 0; j < from.size(); ++j) {
      PolyMap2 lifted1 = shift_by(from[j], 1, 0);
      PolyMap2 lifted2 = shift_by(from[j], 0, 1);
      for (std::size_t i = 0; i < to.size(); ++i) {
        GaussianRational denom{basis_norm_sq_[n + 1][i]};
        m1.at(i, j) = inner_product(spec_, lifted1, to[i]) / denom;
        m2.at(i, j) = inner_product(spec_, lifted2, to[i]) / denom;
      }
    }
    t1_.push_back(std::move(m1));
    t2_.push_back(std::move(m2));
  }
}

std::size_t TruncatedQuotient::complement_dimension(unsigned degree) const {
  return basis_.at(degree).size();
}

const std::vector<PolyMap2>& TruncatedQuotient::complement_basis(unsigned degree) const {
  return basis_.at(degree);
}

const std::vector<Rational>& TruncatedQuotient::complement_norms_sq(unsigned degree) const {
  return basis_norm_sq_.at(degree);
}

const PolyMap2& TruncatedQuotient::projection_of_monomial(unsigned degree, unsigned k) const {
  return monomial_projections_.at(degree).at(k);
}

PolyMap2 TruncatedQuotient::project(const PolyMap2& f) const {
  PolyMap2 out;
  for (const auto& [mono, c] : f) {
    const PolyMap2& proj = projection_of_monomial(mono.degree(), mono.k1);
    out = scaled_sum(out, c, proj);
  }
  return out;
}

const GMatrix& TruncatedQuotient::shift_block(unsigned j, unsigned degree) const {
  if (j == 1) return t1_.at(degree);
  if (j == 2) return t2_.at(degree);
  throw input_error("coordinate must be 1 or 2");
}

std::vector<GaussianRational> TruncatedQuotient::coordinates(const PolyMap2& f,
                                                             unsigned degree) const {
  const auto& vectors = basis_.at(degree);
  std::vector<GaussianRational> coords(vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i)
    coords[i] = inner_product(spec_, f, vectors[i]) / GaussianRational(basis_norm_sq_.at(degree)[i]);
  return coords;
}

PolyMap2 TruncatedQuotient::from_coordinates(const std::vector<GaussianRational>& coords,
                                             unsigned degree) const {
  const auto& vectors = basis_.at(degree);
  if (coords.size() != vectors.size()) throw input_error("coordinate length mismatch");
  PolyMap2 out;
  for (std::size_t i = 0; i < vectors.size(); ++i)
    out = scaled_sum(out, coords[i], vectors[i]);
  return out;
}

GMatrix TruncatedQuotient::poly_block(const HomoPoly2& q, unsigned degree) const {
  const unsigned m = q.degree();
  if (degree + m > cap_) throw input_error("polynomial block exceeds the degree cap");
  GMatrix total(basis_.at(degree + m).size(), basis_.at(degree).size());
  for (unsigned k = 0; k <= m; ++k) {
    if (q.coeff(k).is_zero()) continue;
    GMatrix word(basis_.at(degree).size(), basis_.at(degree).size());
    for (std::size_t i = 0; i < word.rows; ++i) word.at(i, i) = GaussianRational{Rational(1)};
    unsigned level = degree;
    for (unsigned step = 0; step < m - k; ++step) {
      word = GMatrix::multiply(t2_.at(level), word);
      ++level;
    }
    for (unsigned step = 0; step < k; ++step) {
      word = GMatrix::multiply(t1_.at(level), word);
      ++level;
    }
    for (std::size_t idx = 0; idx < word.data.size(); ++idx)
      total.data[idx] += q.coeff(k) * word.data[idx];
  }
  return total;
}

bool TruncatedQuotient::annihilated_by(const HomoPoly2& q) const {
  if (cap_ < q.degree()) throw input_error("degree cap below deg q");
  for (unsigned n = 0; n + q.degree() <= cap_; ++n) {
    if (!poly_block(q, n).is_zero()) return false;
  }
  return true;
}

TruncatedQuotient projection_oracle(const ModuleSpec& spec, const HomoPoly2& p,
                                    unsigned degree_cap) {
  return TruncatedQuotient(spec, p, degree_cap);
}

bool annihilator_check(const TruncatedQuotient& tq) {
  if (tq.degree_cap() < 2 * tq.generator().degree())
    throw input_error("annihilator check wants cap >= 2 deg p");
  return tq.annihilated_by(tq.generator());
}

std::optional<std::pair<GaussianRational, GaussianRational>> find_linear_relation(
    const TruncatedQuotient& tq) {
  GaussianRational u, v;  // first nonzero entry pair (t1, t2)
  bool found = false;
  for (unsigned n = 0; n < tq.degree_cap(); ++n) {
    const GMatrix& m1 = tq.shift_block(1, n);
    const GMatrix& m2 = tq.shift_block(2, n);
    for (std::size_t idx = 0; idx < m1.data.size(); ++idx) {
      const GaussianRational& e1 = m1.data[idx];
      const GaussianRational& e2 = m2.data[idx];
      if (!found) {
        if (!e1.is_zero() || !e2.is_zero()) {
          u = e1;
          v = e2;
          found = true;
        }
        continue;
      }
      // Need a*e1 - b*e2 = 0 with (a, b) = (v, u): check v e1 = u e2.
      if (v * e1 != u * e2) return std::nullopt;
    }
  }
  if (!found) return std::make_pair(GaussianRational{Rational(1)}, GaussianRational{Rational(1)});
  return std::make_pair(v, u);
}

}  // namespace qml
