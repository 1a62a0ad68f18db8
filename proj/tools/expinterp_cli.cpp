#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "expinterp/expinterp.h"

namespace {

constexpr int kExitDone = 0;
constexpr int kExitSchema = 2;
constexpr int kExitHard = 3;

struct ScenarioDeleter {
  void operator()(ei_scenario* s) const { ei_scenario_free(s); }
};
struct ReportDeleter {
  void operator()(ei_report* r) const { ei_report_free(r); }
};
struct StringDeleter {
  void operator()(char* s) const { ei_string_free(s); }
};
using ScenarioPtr = std::unique_ptr<ei_scenario, ScenarioDeleter>;
using ReportPtr = std::unique_ptr<ei_report, ReportDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

std::optional<std::string> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int exit_for(ei_status st) {
  if (st == EI_SCHEMA_ERROR) return kExitSchema;
  return kExitHard;
}

int report_failure(ei_status st) {
  std::cerr << "error: " << ei_last_error() << "\n";
  return exit_for(st);
}

struct Options {
  std::string file;
  std::string coeffs;
  std::string what;
  std::string grid;
  std::string format = "human";
  std::optional<std::uint64_t> seed;
  std::string out;
};

bool write_output(const Options& o, const char* text) {
  if (o.out.empty()) {
    std::fputs(text, stdout);
    return true;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) return false;
  f << text;
  return static_cast<bool>(f);
}

std::optional<ei_grid> parse_grid(const std::string& text) {
  ei_grid g{};
  char tail = 0;
  if (std::sscanf(text.c_str(), "%lf,%lf,%lf,%lf,%zu,%zu%c", &g.re_min, &g.re_max, &g.im_min, &g.im_max, &g.nx,
                  &g.ny, &tail) != 6) {
    return std::nullopt;
  }
  return g;
}

int execute(const std::string& command, const Options& o) {
  const auto text = slurp(o.file);
  if (!text) {
    std::cerr << "error: cannot read " << o.file << "\n";
    return kExitHard;
  }
  ei_scenario* raw_s = nullptr;
  if (auto st = ei_scenario_parse(text->data(), text->size(), &raw_s); st != EI_OK) return report_failure(st);
  ScenarioPtr scenario(raw_s);

  if (command == "solve") ei_scenario_set_task(scenario.get(), "SOLVE");
  if (command == "verify") ei_scenario_set_task(scenario.get(), "VERIFY");
  if (o.seed) ei_scenario_set_seed(scenario.get(), *o.seed);

  ei_report* raw_r = nullptr;
  if (auto st = ei_run(scenario.get(), &raw_r); st != EI_OK) return report_failure(st);
  ReportPtr report(raw_r);

  const ei_format fmt = o.format == "machine" ? EI_FORMAT_MACHINE : EI_FORMAT_HUMAN;
  char* raw_out = nullptr;
  ei_status st = EI_OK;
  if (command == "analyze" || command == "solve") {
    st = ei_report_emit(report.get(), fmt, &raw_out);
  } else if (command == "verify") {
    const auto coeffs = slurp(o.coeffs);
    if (!coeffs) {
      std::cerr << "error: cannot read " << o.coeffs << "\n";
      return kExitHard;
    }
    st = ei_verify(report.get(), coeffs->data(), coeffs->size(), fmt, &raw_out);
  } else {
    std::optional<ei_grid> grid;
    if (!o.grid.empty()) {
      grid = parse_grid(o.grid);
      if (!grid) {
        std::cerr << "error: --grid expects re_min,re_max,im_min,im_max,nx,ny\n";
        return kExitSchema;
      }
    }
    st = ei_report_plotdata(report.get(), o.what.c_str(), grid ? &*grid : nullptr, &raw_out);
  }
  if (st != EI_OK) return report_failure(st);
  StringPtr output(raw_out);
  if (!write_output(o, output.get())) {
    std::cerr << "error: cannot write " << o.out << "\n";
    return kExitHard;
  }
  if (ei_report_has_hard_error(report.get())) {
    std::cerr << "error: pipeline reported a hard error\n";
    return kExitHard;
  }
  return kExitDone;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exponential-series interpolation analyzer"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("file", o.file, "Scenario JSON")->required();
    sub->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"human", "machine"}))
        ->capture_default_str();
    sub->add_option("--seed", o.seed, "Override the scenario seed");
    sub->add_option("--out", o.out, "Write output to this file");
  };
  auto* analyze = app.add_subcommand("analyze", "Run the full analysis");
  common(analyze);
  auto* solve = app.add_subcommand("solve", "Run the analysis and force a solve");
  common(solve);
  auto* verify = app.add_subcommand("verify", "Check coefficients against the scenario data");
  common(verify);
  verify->add_option("coeffs", o.coeffs, "Coefficient JSON or MACHINE report")->required();
  auto* plot = app.add_subcommand("plotdata", "Export CSV plot data");
  common(plot);
  plot->add_option("--what", o.what, "Payload")
      ->required()
      ->check(CLI::IsMember({"NODES", "DIRECTIONS", "DOMAIN_BOUNDARY", "SOLUTION_MODULUS"}));
  plot->add_option("--grid", o.grid, "re_min,re_max,im_min,im_max,nx,ny for SOLUTION_MODULUS");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitDone : kExitSchema;
  }
  return execute(app.get_subcommands().front()->get_name(), o);
}
