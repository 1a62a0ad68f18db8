#include "expinterp/defect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "expinterp/error.hpp"

namespace expinterp {

std::size_t DefectSet::column_count() const {
  std::size_t n = 0;
  for (const auto& m : members) n += static_cast<std::size_t>(m.multiplicity);
  return n;
}

namespace {

// Stays at or below kappa for all large k.
bool eventually_below(const GrowthProfile& p, const Threshold& kappa) {
  if (kappa.minus_infinity) return false;
  switch (p.kind) {
    case ProfileKind::ToPlusInf: return false;
    case ProfileKind::ToMinusInf: return true;
    case ProfileKind::Constant: return p.value <= kappa.value;
    case ProfileKind::FiniteLimit:
      return p.value < kappa.value || (p.value == kappa.value && p.increasing);
  }
  return false;
}

double log_entry(const Exponent& lambda, Complex mu, int j) {
  const double base = re_product(lambda, mu);
  if (j == 0) return base;
  return static_cast<double>(j) * std::log(lambda.modulus()) + base;
}

Complex entry(const Exponent& lambda, Complex mu, int j, double log_scale) {
  Complex phase{1.0, 0.0};
  if (j > 0) {
    const double m = lambda.modulus();
    if (m == 0.0) return {0.0, 0.0};
    const Complex unit = lambda.pi_scaled ? lambda.units / std::abs(lambda.units) : lambda.value / m;
    for (int i = 0; i < j; ++i) phase *= unit;
    return exp_term(lambda, mu, static_cast<double>(j) * std::log(m) - log_scale) * phase;
  }
  return exp_term(lambda, mu, -log_scale);
}

[[noreturn]] void overflow(const Exponent& lambda, Complex mu) {
  std::ostringstream os;
  os << "entry for lambda = (" << lambda.value.real() << ", " << lambda.value.imag() << "), mu = ("
     << mu.real() << ", " << mu.imag() << ") is not representable";
  throw Error(ErrorCode::Overflow, os.str());
}

struct Column {
  Complex node;
  int order;
};

std::vector<Column> monomials(const DefectSet& defect) {
  std::vector<Column> cols;
  for (const auto& m : defect.members) {
    for (int j = 0; j < m.multiplicity; ++j) cols.push_back({m.node, j});
  }
  return cols;
}

}  // namespace

DefectSet defect_set(const FamilySet& nodes, const ConditionReport& report, std::int64_t horizon) {
  if (!report.success) {
    throw Error(ErrorCode::ConditionsFail, "defect set needs a successful condition report");
  }
  for (std::size_t f = 0; f < nodes.families.size(); ++f) {
    const auto& fam = nodes.families[f].family;
    const bool infinite = std::all_of(report.coupled.begin(), report.coupled.end(),
                                      [&](const CoupledDirection& c) {
                                        return eventually_below(re_profile(fam, c.omega.value()), c.kappa);
                                      });
    if (infinite) {
      throw Error(ErrorCode::NotFinite, "family " + std::to_string(f) +
                                            " stays at or below every coupled threshold");
    }
  }
  DefectSet out;
  if (report.coupled.empty()) return out;
  for (const auto& p : enumerate(nodes, horizon)) {
    const bool kept = std::all_of(report.coupled.begin(), report.coupled.end(), [&](const CoupledDirection& c) {
      return !c.kappa.above((c.omega.value() * p.point).real());
    });
    if (kept) out.members.push_back({p.point, p.multiplicity});
  }
  return out;
}

QuasiPolyMatrix build_quasi_poly_matrix(const DefectSet& defect, std::span<const Exponent> rows) {
  const auto cols = monomials(defect);
  QuasiPolyMatrix q;
  q.scaled.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t m = 0; m < defect.members.size(); ++m) {
    for (int j = 0; j < defect.members[m].multiplicity; ++j) q.columns.emplace_back(m, j);
  }
  std::vector<double> logs(cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    double row_max = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < cols.size(); ++c) {
      logs[c] = log_entry(rows[r], cols[c].node, cols[c].order);
      if (std::isnan(logs[c]) || logs[c] == std::numeric_limits<double>::infinity()) {
        overflow(rows[r], cols[c].node);
      }
      row_max = std::max(row_max, logs[c]);
    }
    if (!std::isfinite(row_max)) row_max = 0.0;
    q.row_log_scales.push_back(row_max);
    for (std::size_t c = 0; c < cols.size(); ++c) {
      q.scaled(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          entry(rows[r], cols[c].node, cols[c].order, row_max);
    }
  }
  return q;
}

DefectDimension defect_dimension(const DefectSet& defect, const SparseSequence& seq, double tol) {
  const std::size_t cols = defect.column_count();
  DefectDimension out;
  if (cols == 0) {
    out.null_basis.resize(0, 0);
    return out;
  }
  if (seq.size() < 2 * cols + 4) {
    throw Error(ErrorCode::InvalidArgument, "defect dimension needs at least 2*(columns)+4 exponents");
  }
  std::vector<std::size_t> row_counts;
  std::vector<CMatrix> bases;
  for (std::size_t p : {4u, 8u, 16u}) {
    const std::size_t r = std::min(cols + p, seq.size());
    const auto q = build_quasi_poly_matrix(
        defect, std::span<const Exponent>(seq.exponents.data(), r));
    CMatrix basis = null_space(q.scaled, tol);
    out.null_dims.push_back(static_cast<std::size_t>(basis.cols()));
    row_counts.push_back(r);
    bases.push_back(std::move(basis));
    const std::size_t n = out.null_dims.size();
    if (n >= 2 && out.null_dims[n - 1] == out.null_dims[n - 2]) {
      out.dimension = out.null_dims.back();
      out.null_basis = bases.back();
      out.rows_used = r;
      return out;
    }
  }
  std::ostringstream os;
  os << "null dimension did not stabilize:";
  for (std::size_t i = 0; i < out.null_dims.size(); ++i) {
    os << ' ' << out.null_dims[i] << "@" << row_counts[i] << "rows";
  }
  throw Error(ErrorCode::NoStabilization, os.str());
}

CMatrix defect_evaluation_matrix(const DefectSet& defect, std::span<const Exponent> exponents,
                                 std::span<const Complex> extra) {
  const auto rows = monomials(defect);
  std::vector<Exponent> all(exponents.begin(), exponents.end());
  for (auto xi : extra) all.push_back(Exponent::plain(xi));
  CMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(all.size()));
  std::vector<double> logs(rows.size());
  for (std::size_t c = 0; c < all.size(); ++c) {
    double col_max = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      logs[r] = log_entry(all[c], rows[r].node, rows[r].order);
      if (std::isnan(logs[r]) || logs[r] == std::numeric_limits<double>::infinity()) {
        overflow(all[c], rows[r].node);
      }
      col_max = std::max(col_max, logs[r]);
    }
    if (!std::isfinite(col_max)) col_max = 0.0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          entry(all[c], rows[r].node, rows[r].order, col_max);
    }
  }
  return m;
}

std::vector<Complex> exceptional_exponentials(std::size_t d, const DefectSet& defect,
                                              const SparseSequence& seq, std::uint64_t seed,
                                              double tol) {
  std::vector<Complex> accepted;
  if (d == 0) return accepted;
  double radius = 1.0;
  for (const auto& m : defect.members) radius = std::max(radius, std::abs(m.node) + 1.0);

  std::mt19937_64 gen(seed);
  auto uniform = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  const std::span<const Exponent> base(seq.exponents);
  std::size_t rank = numerical_rank(defect_evaluation_matrix(defect, base, accepted), tol);
  for (std::size_t attempt = 0; attempt < 100 * d && accepted.size() < d; ++attempt) {
    const double r = radius * std::sqrt(uniform());
    const double theta = 2.0 * kPi * uniform();
    const Complex xi = std::polar(r, theta);
    std::vector<Complex> trial = accepted;
    trial.push_back(xi);
    const std::size_t next = numerical_rank(defect_evaluation_matrix(defect, base, trial), tol);
    if (next == rank + 1) {
      accepted = std::move(trial);
      rank = next;
    }
  }
  if (accepted.size() < d) {
    throw Error(ErrorCode::SearchExhausted, "accepted " + std::to_string(accepted.size()) + " of " +
                                                std::to_string(d) + " exceptional exponentials");
  }
  return accepted;
}

}  // namespace expinterp
