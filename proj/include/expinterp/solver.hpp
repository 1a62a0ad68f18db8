#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "expinterp/domain.hpp"
#include "expinterp/expsum.hpp"
#include "expinterp/linalg.hpp"
#include "expinterp/sparse.hpp"

namespace expinterp {

/// Singular values at or below this fraction of the largest are treated as
/// zero, both for the min-norm solve and for infeasibility certificates.
inline constexpr double kRankTol = 1e-10;

struct Node {
  Complex point{};
  int multiplicity = 1;
};

/// Hermite datum U^{(order)}(nodes[node]) = value.
struct Datum {
  std::size_t node = 0;
  int order = 0;
  Complex value{};
};

struct SolverParams {
  std::size_t exponent_count = 24;
  double rho = 1.0;
  double tol = 1e-9;
  std::int64_t horizon = 512;
};

struct InterpolationProblem {
  std::vector<Node> nodes;
  std::vector<Datum> data;
  SolverParams params;

  /// Throws InvalidArgument on repeated (node, order), unknown nodes or
  /// orders >= multiplicity.
  void validate() const;
  CVector rhs() const;
};

/// Weighted Hermite evaluation system E W with
/// E[(k, j), n] = lambda_n^j e^{lambda_n mu_k} and w_n = e^{-rate |lambda_n|}.
/// rate = rho + reach, where reach = max(0, max Re(lambda_n mu_k) / |lambda_n|)
/// keeps every weighted entry bounded by |lambda_n|^j e^{-rho |lambda_n|}.
struct EvalMatrix {
  CMatrix weighted;
  std::vector<Exponent> exponents;
  std::vector<Complex> row_points;  // mu_k per row
  std::vector<int> row_orders;      // j per row
  double rho = 0.0;
  double reach = 0.0;
  double rate = 0.0;

  double weight(std::size_t n) const { return std::exp(-rate * exponents[n].modulus()); }
  /// Unweighted entry; may overflow to infinity.
  Complex entry(std::size_t row, std::size_t n) const;
};

/// Throws Overflow naming (lambda_n, mu_k) if a weighted entry leaves binary64.
EvalMatrix assemble(const InterpolationProblem& problem, std::span<const Exponent> exponents);
/// Uses the first params.exponent_count exponents of the sequence.
EvalMatrix assemble(const InterpolationProblem& problem, const SparseSequence& seq);

enum class SolveStatus { Feasible, Infeasible, IllConditioned };

std::string_view solve_status_name(SolveStatus s);

struct SolveOutcome {
  SolveStatus status = SolveStatus::IllConditioned;
  /// Present when FEASIBLE.
  std::optional<ExpSum> coefficients;
  /// Minimum-norm least-squares solution d of (E W) d = b; c_n = w_n d_n.
  CVector weighted_solution;
  double max_residual = 0.0;
  double lsq_residual = 0.0;
  /// Present when INFEASIBLE: unit y with |y* E W| <= kRankTol |E W| and
  /// |y* b| / |b| = certificate_margin.
  std::optional<CVector> certificate;
  double certificate_margin = 0.0;
  std::size_t rank = 0;
};

SolveOutcome solve_min_weighted_norm(const EvalMatrix& e, const CVector& b, double tol = 1e-9);

/// max |U^{(j)}(mu_k) - b_k^j| over the data, re-evaluated termwise in
/// ascending |lambda| with compensated summation.
double residuals(const ExpSum& u, const InterpolationProblem& problem);

/// q orthonormal weighted null vectors of E W, returned as exponential sums
/// that vanish on every Hermite condition of the problem.
std::vector<ExpSum> null_interpolants(const InterpolationProblem& problem, const SparseSequence& seq,
                                      std::size_t q);

struct Evaluation {
  Complex value{};
  double tail_bound = 0.0;
};

/// c_n e^{lambda_n z} for a single term.
Complex term_value(const ExpSum& u, std::size_t i, Complex z);

/// Sum in ascending |lambda| with compensated summation. Truncated sums report
/// a continuation bound under the doubling tail model; it is infinite once
/// Re(s z) reaches the decay rate along some exponent direction. Throws
/// DomainViolation when z lies outside `domain`.
Evaluation evaluate(const ExpSum& u, Complex z, const std::optional<ConvergenceDomain>& domain = std::nullopt);

}  // namespace expinterp
