#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "expinterp/defect.hpp"
#include "expinterp/domain.hpp"
#include "expinterp/families.hpp"
#include "expinterp/geometry.hpp"
#include "expinterp/solver.hpp"
#include "expinterp/sparse.hpp"

namespace expinterp {

enum class Task { Analyze, Solve, Verify, PlotData };

std::string_view task_name(Task t);
std::optional<Task> parse_task(std::string_view name);

struct ScenarioParams {
  std::size_t n = 24;
  double rho = 1.0;
  double tol = 1e-9;
  std::int64_t horizon = 512;
  std::uint64_t seed = 42;
  std::size_t q = 3;
  /// Attempt the solve even when the verdict is negative.
  bool force_solve = false;
};

/// Datum::node indexes the node enumeration at the scenario horizon.
struct Scenario {
  FamilySet lambda;
  FamilySet nodes;
  std::vector<Datum> data;
  Task task = Task::Analyze;
  ScenarioParams params;
  std::optional<Region> domain;
};

enum class StageStatus { Ok, Skipped, Error };

std::string_view stage_status_name(StageStatus s);

struct Stage {
  std::string name;
  StageStatus status = StageStatus::Skipped;
  std::string code;  // error code name, empty when OK
  std::string message;
};

struct AnalysisReport {
  Scenario scenario;
  std::vector<Stage> stages;

  std::vector<EnumeratedPoint> node_points;
  std::optional<DirectionSet> p_lambda;
  std::optional<DirectionSet> p_m;
  std::optional<DirectionSet> p_m_lambda;
  std::optional<ConditionReport> conditions;
  std::optional<SparseSequence> sparse;
  std::optional<DefectSet> defect;
  std::optional<DefectDimension> defect_dim;
  std::optional<std::vector<Complex>> exceptional;
  std::optional<ConvergenceDomain> domain;
  std::optional<Verdict> verdict;
  std::optional<InterpolationProblem> problem;
  std::optional<SolveOutcome> solve;
  std::optional<double> residual;
  std::optional<bool> kernel_check;
  std::vector<ExpSum> null_witnesses;
  std::optional<double> null_residual;
  /// Set on a theory/numerics contradiction or an unexpected failure.
  bool hard_error = false;

  const Stage* stage(std::string_view name) const;
};

/// Stage names in execution order.
const std::vector<std::string>& stage_names();

/// Builds the Hermite problem from the scenario data; only nodes referenced by
/// some datum take part.
InterpolationProblem build_problem(const Scenario& s, const std::vector<EnumeratedPoint>& points);

/// Fail-soft: every stage error is recorded in the report, never thrown.
AnalysisReport run(const Scenario& scenario);

}  // namespace expinterp
