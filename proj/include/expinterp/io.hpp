#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "expinterp/pipeline.hpp"

namespace expinterp {

/// Strict scenario parse. Unknown keys, wrong types and out-of-range values
/// raise SchemaError with the JSON path of the offending field. Real numbers
/// may be given as JSON numbers or decimal strings.
Scenario parse_scenario(std::string_view text);

/// Canonical JSON for a scenario; parse_scenario accepts it back unchanged.
std::string emit_scenario(const Scenario& s);

enum class Format { Human, Machine };

std::optional<Format> parse_format(std::string_view name);

std::string emit_report(const AnalysisReport& report, Format format);

/// Scenario echoed inside a MACHINE report.
Scenario scenario_from_report(std::string_view report_text);

enum class PlotKind { Nodes, Directions, DomainBoundary, SolutionModulus };

std::optional<PlotKind> parse_plot_kind(std::string_view name);

struct Grid {
  double re_min = -2.0;
  double re_max = 2.0;
  double im_min = -2.0;
  double im_max = 2.0;
  std::size_t nx = 21;
  std::size_t ny = 21;
};

/// Parses "re_min,re_max,im_min,im_max,nx,ny".
Grid parse_grid(std::string_view text);

/// CSV with header. Throws PayloadMissing when the report lacks the payload.
std::string emit_plotdata(const AnalysisReport& report, PlotKind kind, const Grid& grid = {});

std::string emit_expsum(const ExpSum& u);

/// Accepts an ExpSum document or a MACHINE report carrying a solution.
ExpSum parse_expsum(std::string_view text);

struct VerifyResult {
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  /// Present when every exponent lies on the report's sparse sequence.
  std::optional<bool> kernel_check;
};

/// Re-evaluates `u` on the scenario's Hermite data. Tolerance is
/// tol * max(1, max |b|).
VerifyResult verify_solution(const AnalysisReport& report, const ExpSum& u);

std::string emit_verify(const VerifyResult& v, Format format);

}  // namespace expinterp
