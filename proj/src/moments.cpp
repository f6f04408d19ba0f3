#include "qml/moments.hpp"

#include "qml/quotient.hpp"

#include <algorithm>

namespace qml {

MomentSeq quotient_gamma(const ModuleSpec& spec, const GaussianRational& a, unsigned count) {
  if (a.is_zero())
    throw input_error("a = 0 is the monomial generator case; use berger_gamma");
  if (spec.dimension() != 2) throw input_error("quotient moments need a 2-dimensional module");
  const Rational b = a.abs_sq();
  MomentSeq seq;
  seq.provenance = "quotient_gamma(" + spec.name() + ", a=" + gauss_to_string(a) + ")";
  for (unsigned n = 0; n <= count; ++n) {
    Rational sum(0);
    Rational b_pow(1);
    for (unsigned k = 0; k <= n; ++k) {
      sum += b_pow / spec.norm_sq({k, n - k});
      b_pow *= b;
    }
    seq.values.push_back(1 / sum);
  }
  return seq;
}

MomentSeq berger_gamma(const ModuleSpec& spec, unsigned annihilated_coordinate, unsigned count) {
  if (spec.dimension() != 2) throw input_error("berger moments need a 2-dimensional module");
  if (annihilated_coordinate != 1 && annihilated_coordinate != 2)
    throw input_error("coordinate must be 1 or 2");
  const unsigned survivor = 3 - annihilated_coordinate;
  MomentSeq seq;
  seq.provenance =
      "berger_gamma(" + spec.name() + ", p=z" + std::to_string(annihilated_coordinate) + ")";
  const Rational unit = spec.norm_sq({0, 0});
  for (unsigned n = 0; n <= count; ++n) {
    MultiIndex alpha{0, 0};
    alpha[survivor - 1] = n;
    seq.values.push_back(spec.norm_sq(alpha) / unit);
  }
  return seq;
}

MomentSeq tensor_gamma(const ModuleSpec& left, const ModuleSpec& right, unsigned count) {
  if (left.dimension() != 1 || right.dimension() != 1)
    throw input_error("tensor moments need one-dimensional factors");
  MomentSeq seq;
  seq.provenance = "tensor_gamma(" + left.name() + ", " + right.name() + ")";
  for (unsigned n = 0; n <= count; ++n) {
    Rational sum(0);
    for (unsigned k = 0; k <= n; ++k)
      sum += 1 / (left.norm_sq({k}) * right.norm_sq({n - k}));
    seq.values.push_back(1 / sum);
  }
  return seq;
}

namespace {

Rational hankel_entry(const MomentSeq& seq, int level, std::size_t i, std::size_t j) {
  return seq.values.at(i + j + static_cast<std::size_t>(level));
}

// PSD test by congruence elimination with positive-pivot selection. On
// failure returns the (sorted) indices of a principal submatrix whose
// determinant is negative.
std::optional<std::vector<std::size_t>> psd_violation_indices(const MomentSeq& seq, int level,
                                                              std::size_t size) {
  std::vector<std::vector<Rational>> work(size, std::vector<Rational>(size));
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) work[i][j] = hankel_entry(seq, level, i, j);
  std::vector<bool> active(size, true);
  std::vector<std::size_t> pivots;

  while (true) {
    std::size_t pivot = size;
    for (std::size_t i = 0; i < size; ++i) {
      if (active[i] && sgn(work[i][i]) > 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < size) {
      pivots.push_back(pivot);
      active[pivot] = false;
      for (std::size_t r = 0; r < size; ++r) {
        if (!active[r] || sgn(work[r][pivot]) == 0) continue;
        Rational factor = work[r][pivot] / work[pivot][pivot];
        for (std::size_t c = 0; c < size; ++c) {
          if (active[c]) work[r][c] -= factor * work[pivot][c];
        }
        work[r][pivot] = 0;
      }
      continue;
    }
    for (std::size_t i = 0; i < size; ++i) {
      if (active[i] && sgn(work[i][i]) < 0) {
        std::vector<std::size_t> cited = pivots;
        cited.push_back(i);
        std::sort(cited.begin(), cited.end());
        return cited;
      }
    }
    // Remaining diagonal is zero; any off-diagonal entry kills semidefiniteness.
    for (std::size_t i = 0; i < size; ++i) {
      if (!active[i]) continue;
      for (std::size_t j = i + 1; j < size; ++j) {
        if (active[j] && sgn(work[i][j]) != 0) {
          std::vector<std::size_t> cited = pivots;
          cited.push_back(i);
          cited.push_back(j);
          std::sort(cited.begin(), cited.end());
          return cited;
        }
      }
    }
    return std::nullopt;
  }
}

Rational determinant(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(m[pivot][col]) == 0) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t row = col + 1; row < n; ++row) {
      if (sgn(m[row][col]) == 0) continue;
      Rational factor = m[row][col] / m[col][col];
      for (std::size_t k = col; k < n; ++k) m[row][k] -= factor * m[col][k];
    }
  }
  return det;
}

}  // namespace

Rational hankel_minor(const MomentSeq& seq, int level, const std::vector<std::size_t>& indices) {
  std::vector<std::vector<Rational>> sub(indices.size(), std::vector<Rational>(indices.size()));
  for (std::size_t i = 0; i < indices.size(); ++i)
    for (std::size_t j = 0; j < indices.size(); ++j)
      sub[i][j] = hankel_entry(seq, level, indices[i], indices[j]);
  return determinant(std::move(sub));
}

HankelReport stieltjes_check(const MomentSeq& seq, std::size_t max_size) {
  if (max_size == 0) throw input_error("hankel size must be positive");
  if (seq.values.size() < 2 * max_size)
    throw input_error("sequence too short: need 2*max_size entries");
  for (std::size_t size = 1; size <= max_size; ++size) {
    for (int level : {0, 1}) {
      auto cited = psd_violation_indices(seq, level, size);
      if (cited) {
        HankelViolation violation;
        violation.level = level;
        violation.size = size;
        violation.indices = *cited;
        violation.minor = hankel_minor(seq, level, *cited);
        return HankelReport{size - 1, violation};
      }
    }
  }
  return HankelReport{max_size, std::nullopt};
}

// --- measure families -------------------------------------------------------

std::string measure_to_string(const MeasureFamily& measure) {
  if (const auto* atoms = std::get_if<AtomicFinite>(&measure)) {
    std::string out = "atoms{";
    bool first = true;
    for (const auto& [point, weight] : atoms->atoms) {
      if (!first) out += ", ";
      first = false;
      out += rat_to_string(weight) + "*delta_" + rat_to_string(point);
    }
    return out + "}";
  }
  if (const auto* geo = std::get_if<GeometricAtoms>(&measure)) {
    std::string out = "geometric-atoms{base=" + rat_to_string(geo->base);
    if (geo->curve_n) out += ", n=" + std::to_string(*geo->curve_n);
    return out + "}";
  }
  if (const auto* curve = std::get_if<DiagonalCurve>(&measure))
    return "diagonal-curve{n=" + std::to_string(curve->n) + "}";
  return "half-axes-product";
}

Rational measure_moment(const MeasureFamily& measure, unsigned n) {
  if (const auto* atoms = std::get_if<AtomicFinite>(&measure)) {
    Rational sum(0);
    for (const auto& [point, weight] : atoms->atoms) sum += weight * rat_pow(point, n);
    return sum;
  }
  if (const auto* geo = std::get_if<GeometricAtoms>(&measure)) {
    if (geo->curve_n)
      throw input_error("two-variable geometric family takes a (k, l) index");
    if (sgn(geo->base) <= 0 || geo->base >= 1)
      throw input_error("geometric atom family needs base in (0,1)");
    // sum_k base^{k(n+1)} summed symbolically.
    return 1 / (1 - rat_pow(geo->base, n + 1));
  }
  throw input_error("this measure family takes a (k, l) index");
}

Rational measure_bimoment(const MeasureFamily& measure, unsigned k, unsigned l) {
  if (const auto* geo = std::get_if<GeometricAtoms>(&measure)) {
    if (!geo->curve_n)
      throw input_error("one-variable geometric family takes a single index");
    if (sgn(geo->base) <= 0 || geo->base == 1)
      throw input_error("geometric atom family needs a positive base != 1");
    unsigned n = *geo->curve_n;
    return rat_pow(geo->base, k) * (1 - rat_pow(geo->base, n + 1)) /
           (1 - rat_pow(geo->base, n + k + l + 1));
  }
  if (const auto* curve = std::get_if<DiagonalCurve>(&measure)) {
    return Rational(curve->n + 1) / Rational(curve->n + k + l + 1);
  }
  if (std::holds_alternative<HalfAxesProduct>(measure)) {
    Rational sum(0);
    if (k == 0) sum += make_rat(1, 2 * (l + 1));
    if (l == 0) sum += make_rat(1, 2 * (k + 1));
    return sum;
  }
  throw input_error("this measure family takes a single index");
}

Bimoments bimoments_quotient(const ModuleSpec& spec, const GaussianRational& a, unsigned n,
                             unsigned k_max, unsigned l_max) {
  if (a.is_zero()) throw input_error("bimoments need a != 0");
  WeightedShiftModel model = shift_weights(spec, a, n + k_max + l_max);
  const Rational b = a.abs_sq();
  Bimoments grid;
  grid.a = a;
  grid.n = n;
  grid.provenance = "bimoments(" + spec.name() + ", a=" + gauss_to_string(a) +
                    ", n=" + std::to_string(n) + ")";
  grid.values.assign(k_max + 1, std::vector<Rational>(l_max + 1));
  for (unsigned k = 0; k <= k_max; ++k)
    for (unsigned l = 0; l <= l_max; ++l)
      grid.values[k][l] =
          rat_pow(b, k) * model.q_norm_sq[n] / model.q_norm_sq[n + k + l];
  return grid;
}

bool verify_measure(const MeasureFamily& measure, const MomentSeq& target) {
  for (std::size_t n = 0; n < target.values.size(); ++n) {
    if (measure_moment(measure, static_cast<unsigned>(n)) != target.values[n]) return false;
  }
  return true;
}

bool verify_measure(const MeasureFamily& measure, const Bimoments& target) {
  for (std::size_t k = 0; k < target.values.size(); ++k)
    for (std::size_t l = 0; l < target.values[k].size(); ++l) {
      if (measure_bimoment(measure, static_cast<unsigned>(k), static_cast<unsigned>(l)) !=
          target.values[k][l])
        return false;
    }
  return true;
}

}  // namespace qml
