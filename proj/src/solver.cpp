#include "expinterp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "expinterp/error.hpp"

namespace expinterp {

namespace {

Complex unit_power(const Exponent& lambda, int j) {
  Complex phase{1.0, 0.0};
  if (j == 0) return phase;
  const Complex unit = lambda.pi_scaled ? lambda.units / std::abs(lambda.units)
                                        : lambda.value / lambda.modulus();
  for (int i = 0; i < j; ++i) phase *= unit;
  return phase;
}

// lambda^j e^{lambda mu + shift}. |lambda|^j is folded into the exponent only
// when the direct product would leave the normal range.
Complex derivative_term(const Exponent& lambda, Complex mu, int j, double shift) {
  const Complex base = exp_term(lambda, mu, shift);
  if (j == 0) return base;
  const double m = lambda.modulus();
  if (m == 0.0) return {0.0, 0.0};
  const double log_power = static_cast<double>(j) * std::log(m);
  if (std::abs(log_power) < 600.0 && std::abs(base) >= std::exp(-600.0)) {
    Complex power{1.0, 0.0};
    for (int i = 0; i < j; ++i) power *= lambda.value;
    return base * power;
  }
  return exp_term(lambda, mu, log_power + shift) * unit_power(lambda, j);
}

std::string pair_text(const Exponent& lambda, Complex mu) {
  std::ostringstream os;
  os << "lambda = (" << lambda.value.real() << ", " << lambda.value.imag() << "), mu = (" << mu.real()
     << ", " << mu.imag() << ")";
  return os.str();
}

}  // namespace

std::string_view solve_status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Feasible: return "FEASIBLE";
    case SolveStatus::Infeasible: return "INFEASIBLE";
    case SolveStatus::IllConditioned: return "ILL_CONDITIONED";
  }
  return "?";
}

void InterpolationProblem::validate() const {
  std::set<std::pair<std::size_t, int>> seen;
  for (const auto& n : nodes) {
    if (n.multiplicity < 1) throw Error(ErrorCode::InvalidArgument, "multiplicity must be >= 1");
  }
  for (const auto& d : data) {
    if (d.node >= nodes.size()) {
      throw Error(ErrorCode::InvalidArgument, "datum references unknown node " + std::to_string(d.node));
    }
    if (d.order < 0 || d.order >= nodes[d.node].multiplicity) {
      throw Error(ErrorCode::InvalidArgument, "derivative order " + std::to_string(d.order) +
                                                  " exceeds multiplicity of node " + std::to_string(d.node));
    }
    if (!seen.emplace(d.node, d.order).second) {
      throw Error(ErrorCode::InvalidArgument, "datum (" + std::to_string(d.node) + ", " +
                                                  std::to_string(d.order) + ") given twice");
    }
  }
  if (!(params.rho >= 0.0) || !(params.tol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "rho must be >= 0 and tol > 0");
  }
}

CVector InterpolationProblem::rhs() const {
  CVector b(static_cast<Eigen::Index>(data.size()));
  for (std::size_t i = 0; i < data.size(); ++i) b(static_cast<Eigen::Index>(i)) = data[i].value;
  return b;
}

Complex EvalMatrix::entry(std::size_t row, std::size_t n) const {
  return derivative_term(exponents[n], row_points[row], row_orders[row], 0.0);
}

EvalMatrix assemble(const InterpolationProblem& problem, std::span<const Exponent> exponents) {
  problem.validate();
  EvalMatrix e;
  e.exponents.assign(exponents.begin(), exponents.end());
  for (const auto& d : problem.data) {
    e.row_points.push_back(problem.nodes[d.node].point);
    e.row_orders.push_back(d.order);
  }
  e.rho = problem.params.rho;
  for (const auto& lambda : e.exponents) {
    const double m = lambda.modulus();
    if (m == 0.0) continue;
    for (auto mu : e.row_points) e.reach = std::max(e.reach, re_product(lambda, mu) / m);
  }
  e.rate = e.rho + e.reach;

  const auto rows = static_cast<Eigen::Index>(e.row_points.size());
  const auto cols = static_cast<Eigen::Index>(e.exponents.size());
  e.weighted.resize(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Complex mu = e.row_points[static_cast<std::size_t>(r)];
    const int j = e.row_orders[static_cast<std::size_t>(r)];
    for (Eigen::Index n = 0; n < cols; ++n) {
      const Exponent& lambda = e.exponents[static_cast<std::size_t>(n)];
      const double m = lambda.modulus();
      const double log_mag =
          (j > 0 && m > 0.0 ? j * std::log(m) : 0.0) + re_product(lambda, mu) - e.rate * m;
      if (std::isnan(log_mag) || log_mag > kLogMax) {
        throw Error(ErrorCode::Overflow, "weighted entry overflows for " + pair_text(lambda, mu));
      }
      e.weighted(r, n) = derivative_term(lambda, mu, j, -e.rate * m);
    }
  }
  return e;
}

EvalMatrix assemble(const InterpolationProblem& problem, const SparseSequence& seq) {
  const std::size_t n = problem.params.exponent_count;
  if (n > seq.size()) {
    throw Error(ErrorCode::InvalidArgument, "exponent count " + std::to_string(n) +
                                                " exceeds sparse sequence length " + std::to_string(seq.size()));
  }
  return assemble(problem, std::span<const Exponent>(seq.exponents.data(), n));
}

SolveOutcome solve_min_weighted_norm(const EvalMatrix& e, const CVector& b, double tol) {
  const CMatrix& a = e.weighted;
  if (b.size() != a.rows()) throw Error(ErrorCode::InvalidArgument, "right-hand side size mismatch");
  SolveOutcome out;
  out.weighted_solution = CVector::Zero(a.cols());
  const double bnorm = b.norm();

  Eigen::JacobiSVD<CMatrix> svd;
  Eigen::Index rank = 0;
  if (a.size() > 0) {
    svd.compute(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      if (s(0) > 0.0 && s(i) > kRankTol * s(0)) ++rank;
    }
    for (Eigen::Index i = 0; i < rank; ++i) {
      const Complex coef = svd.matrixU().col(i).dot(b) / s(i);
      out.weighted_solution += coef * svd.matrixV().col(i);
    }
  }
  out.rank = static_cast<std::size_t>(rank);
  const CVector res = (a.size() > 0 ? CVector(a * out.weighted_solution) : CVector::Zero(b.size())) - b;
  out.lsq_residual = res.norm();
  out.max_residual = res.size() > 0 ? res.cwiseAbs().maxCoeff() : 0.0;

  if (out.lsq_residual <= tol * bnorm) {
    out.status = SolveStatus::Feasible;
    std::vector<ExpTerm> terms;
    terms.reserve(e.exponents.size());
    for (std::size_t n = 0; n < e.exponents.size(); ++n) {
      terms.push_back({e.exponents[n], out.weighted_solution(static_cast<Eigen::Index>(n))});
    }
    out.coefficients = ExpSum(std::move(terms), e.rate, true);
    return out;
  }

  // Left singular directions with negligible singular values span the
  // numerical left null space; the projection of b onto it is the
  // certificate.
  CVector proj = CVector::Zero(b.size());
  if (a.size() == 0) {
    proj = b;
  } else {
    for (Eigen::Index i = rank; i < a.rows(); ++i) {
      const auto u = svd.matrixU().col(i);
      proj += u.dot(b) * u;
    }
  }
  const double pnorm = proj.norm();
  if (pnorm > 0.0) {
    out.certificate_margin = std::abs(proj.dot(b)) / (pnorm * bnorm);
    if (out.certificate_margin > 10.0 * tol) {
      out.status = SolveStatus::Infeasible;
      out.certificate = proj / pnorm;
      return out;
    }
  }
  out.status = SolveStatus::IllConditioned;
  return out;
}

double residuals(const ExpSum& u, const InterpolationProblem& problem) {
  double worst = 0.0;
  const auto order = u.ascending_order();
  for (const auto& d : problem.data) {
    const Complex mu = problem.nodes.at(d.node).point;
    CompensatedSum sum;
    for (std::size_t i : order) {
      const auto& t = u.terms()[i];
      sum.add(t.scaled * derivative_term(t.exponent, mu, d.order, u.log_weight(i)));
    }
    worst = std::max(worst, std::abs(sum.value() - d.value));
  }
  return worst;
}

std::vector<ExpSum> null_interpolants(const InterpolationProblem& problem, const SparseSequence& seq,
                                      std::size_t q) {
  std::vector<ExpSum> out;
  if (q == 0) return out;
  const std::size_t n = std::min(problem.params.exponent_count, seq.size());
  if (n < problem.data.size() + q) {
    throw Error(ErrorCode::InsufficientExponents,
                "need at least " + std::to_string(problem.data.size() + q) + " exponents, have " +
                    std::to_string(n));
  }
  InterpolationProblem p = problem;
  p.params.exponent_count = n;
  const EvalMatrix e = assemble(p, seq);
  const CMatrix basis = null_space(e.weighted, kRankTol);
  if (static_cast<std::size_t>(basis.cols()) < q) {
    throw Error(ErrorCode::InsufficientExponents, "null space has dimension " + std::to_string(basis.cols()));
  }
  for (std::size_t v = 0; v < q; ++v) {
    std::vector<ExpTerm> terms;
    for (std::size_t k = 0; k < n; ++k) {
      terms.push_back({e.exponents[k], basis(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(v))});
    }
    out.emplace_back(std::move(terms), e.rate, true);
  }
  return out;
}

Complex term_value(const ExpSum& u, std::size_t i, Complex z) {
  const auto& t = u.terms()[i];
  return t.scaled * exp_term(t.exponent, z, u.log_weight(i));
}

Evaluation evaluate(const ExpSum& u, Complex z, const std::optional<ConvergenceDomain>& domain) {
  if (domain && !domain->contains(z)) {
    std::ostringstream os;
    os << "point (" << z.real() << ", " << z.imag() << ") lies outside the convergence domain";
    throw Error(ErrorCode::DomainViolation, os.str());
  }
  Evaluation out;
  if (u.empty()) return out;
  CompensatedSum sum;
  for (std::size_t i : u.ascending_order()) sum.add(term_value(u, i, z));
  out.value = sum.value();
  if (!u.truncated()) return out;

  // Continuation terms satisfy |c_n| <= C e^{-rate |lambda_n|} with
  // |lambda_{N+m}| >= 2^m |lambda_N| along the same directions.
  double top = 0.0;
  double reach = -std::numeric_limits<double>::infinity();
  for (const auto& t : u.terms()) {
    const double m = t.exponent.modulus();
    top = std::max(top, m);
    if (m > 0.0) reach = std::max(reach, re_product(t.exponent, z) / m);
  }
  const double gap = u.rate() - reach;
  if (!(gap > 0.0) || top == 0.0) {
    out.tail_bound = std::numeric_limits<double>::infinity();
    return out;
  }
  const double q = std::exp(-2.0 * gap * top);
  out.tail_bound = u.bound() * q / (1.0 - q);
  return out;
}

}  // namespace expinterp
