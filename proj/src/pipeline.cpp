#include "expinterp/pipeline.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "expinterp/error.hpp"

namespace expinterp {

std::string_view task_name(Task t) {
  switch (t) {
    case Task::Analyze: return "ANALYZE";
    case Task::Solve: return "SOLVE";
    case Task::Verify: return "VERIFY";
    case Task::PlotData: return "PLOTDATA";
  }
  return "?";
}

std::optional<Task> parse_task(std::string_view name) {
  for (Task t : {Task::Analyze, Task::Solve, Task::Verify, Task::PlotData}) {
    if (task_name(t) == name) return t;
  }
  return std::nullopt;
}

std::string_view stage_status_name(StageStatus s) {
  switch (s) {
    case StageStatus::Ok: return "OK";
    case StageStatus::Skipped: return "SKIPPED";
    case StageStatus::Error: return "ERROR";
  }
  return "?";
}

const std::vector<std::string>& stage_names() {
  static const std::vector<std::string> names{
      "enumerate",        "p_lambda",    "p_m",    "conditions", "sparse",
      "defect_set",       "defect_dimension", "exceptional", "domain",
      "verdict",          "solve",       "residuals", "kernel_check", "null_interpolants"};
  return names;
}

const Stage* AnalysisReport::stage(std::string_view name) const {
  for (const auto& s : stages) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

InterpolationProblem build_problem(const Scenario& s, const std::vector<EnumeratedPoint>& points) {
  InterpolationProblem p;
  p.params.exponent_count = s.params.n;
  p.params.rho = s.params.rho;
  p.params.tol = s.params.tol;
  p.params.horizon = s.params.horizon;
  std::map<std::size_t, std::size_t> local;
  for (const auto& d : s.data) {
    if (d.node >= points.size()) {
      throw Error(ErrorCode::InvalidArgument, "datum node " + std::to_string(d.node) + " is beyond the " +
                                                  std::to_string(points.size()) + " enumerated nodes");
    }
    auto [it, fresh] = local.emplace(d.node, p.nodes.size());
    if (fresh) p.nodes.push_back({points[d.node].point, points[d.node].multiplicity});
    p.data.push_back({it->second, d.order, d.value});
  }
  p.validate();
  return p;
}

namespace {

class Runner {
 public:
  explicit Runner(AnalysisReport& r) : r_(r) {}

  // Returns true when the stage body completed.
  bool stage(const std::string& name, const std::function<void()>& body) {
    Stage s{name, StageStatus::Ok, "", ""};
    try {
      body();
    } catch (const Error& e) {
      s.status = StageStatus::Error;
      s.code = std::string(error_code_name(e.code()));
      s.message = e.what();
      if (e.code() == ErrorCode::TheoryMismatch) r_.hard_error = true;
    } catch (const std::exception& e) {
      s.status = StageStatus::Error;
      s.code = "INTERNAL";
      s.message = e.what();
      r_.hard_error = true;
    }
    r_.stages.push_back(std::move(s));
    return r_.stages.back().status == StageStatus::Ok;
  }

  void skip(const std::string& name, std::string why) {
    r_.stages.push_back({name, StageStatus::Skipped, "", std::move(why)});
  }

  void fail(const std::string& name, ErrorCode code, std::string message) {
    r_.stages.push_back({name, StageStatus::Error, std::string(error_code_name(code)), std::move(message)});
  }

 private:
  AnalysisReport& r_;
};

}  // namespace

AnalysisReport run(const Scenario& scenario) {
  AnalysisReport r;
  r.scenario = scenario;
  const auto& s = r.scenario;
  const auto k = s.params.horizon;
  Runner st(r);

  const bool enumerated = st.stage("enumerate", [&] {
    s.lambda.validate_exponents();
    s.nodes.validate_nodes();
    r.node_points = enumerate(s.nodes, k);
  });
  if (!enumerated) {
    for (std::size_t i = 1; i < stage_names().size(); ++i) st.skip(stage_names()[i], "enumeration failed");
    return r;
  }

  st.stage("p_lambda", [&] { r.p_lambda = limit_directions(s.lambda); });
  st.stage("p_m", [&] { r.p_m = limit_directions(s.nodes); });

  st.stage("conditions", [&] {
    r.conditions = check_conditions(s.nodes, s.lambda, k);
    if (!r.conditions->success) throw Error(ErrorCode::ConditionsFail, r.conditions->failure_message());
    r.p_m_lambda = r.conditions->coupled_directions();
  });
  const bool conditions_ok = r.conditions && r.conditions->success;
  const bool solve_requested = s.task == Task::Solve || s.task == Task::Verify || s.params.force_solve;

  if (conditions_ok || (solve_requested && r.p_lambda)) {
    st.stage("sparse", [&] {
      r.sparse = extract_sparse(s.lambda, conditions_ok ? *r.p_m_lambda : *r.p_lambda, s.params.n);
    });
  } else {
    st.skip("sparse", "conditions not satisfied");
  }

  if (conditions_ok) {
    st.stage("defect_set", [&] { r.defect = defect_set(s.nodes, *r.conditions, k); });
  } else {
    st.skip("defect_set", "conditions not satisfied");
  }

  if (r.defect && r.sparse) {
    st.stage("defect_dimension", [&] {
      r.defect_dim = defect_dimension(*r.defect, *r.sparse);
      const bool injective = std::any_of(r.conditions->coupled.begin(), r.conditions->coupled.end(),
                                         [](const CoupledDirection& c) { return c.kappa.minus_infinity; });
      if (injective && r.defect_dim->dimension != 0) {
        throw Error(ErrorCode::TheoryMismatch, "a line-injective direction exists but the computed defect is " +
                                                   std::to_string(r.defect_dim->dimension));
      }
    });
  } else {
    st.skip("defect_dimension", "defect set or sparse sequence unavailable");
  }

  if (r.defect_dim) {
    if (r.defect_dim->dimension == 0) {
      r.exceptional.emplace();
      st.skip("exceptional", "defect is zero");
    } else {
      st.stage("exceptional", [&] {
        r.exceptional = exceptional_exponentials(r.defect_dim->dimension, *r.defect, *r.sparse, s.params.seed);
      });
    }
  } else {
    st.skip("exceptional", "defect unavailable");
  }

  if (r.p_lambda && r.p_lambda->size() == 1) {
    st.stage("domain", [&] { r.domain = convergence_domain(s.nodes, (*r.p_lambda)[0], k); });
  } else {
    st.skip("domain", "exponents do not have a single limit direction");
  }

  if (r.conditions && r.p_lambda) {
    st.stage("verdict", [&] {
      if (s.domain) {
        r.verdict = corollary_verdict(*s.domain, s.nodes, s.lambda, *r.conditions);
      } else if (r.p_lambda->size() == 1) {
        r.verdict = theorem2_verdict(s.nodes, s.lambda, *r.conditions);
      } else {
        std::optional<std::size_t> d;
        if (r.defect_dim) d = r.defect_dim->dimension;
        r.verdict = defect_verdict(*r.conditions, d);
      }
    });
  } else {
    st.skip("verdict", "conditions unavailable");
  }

  const bool soluble = r.verdict && r.verdict->soluble;
  if (s.data.empty()) {
    st.skip("solve", "no interpolation data");
  } else if (!r.sparse) {
    st.skip("solve", "sparse sequence unavailable");
  } else if (!soluble && !solve_requested) {
    st.skip("solve", "verdict not soluble");
  } else {
    st.stage("solve", [&] {
      r.problem = build_problem(s, r.node_points);
      r.problem->params.exponent_count = std::min(s.params.n, r.sparse->size());
      const EvalMatrix e = assemble(*r.problem, *r.sparse);
      r.solve = solve_min_weighted_norm(e, r.problem->rhs(), s.params.tol);
    });
  }

  const bool feasible = r.solve && r.solve->coefficients;
  if (feasible) {
    st.stage("residuals", [&] { r.residual = residuals(*r.solve->coefficients, *r.problem); });
    st.stage("kernel_check", [&] {
      const ExpSum image = apply_convolution(*r.sparse, *r.solve->coefficients);
      r.kernel_check = std::all_of(image.terms().begin(), image.terms().end(),
                                   [](const ExpTerm& t) { return t.scaled == Complex{0.0, 0.0}; });
    });
  } else {
    st.skip("residuals", "no feasible solution");
    st.skip("kernel_check", "no feasible solution");
  }

  if (!r.sparse) {
    st.skip("null_interpolants", "sparse sequence unavailable");
  } else if (s.params.q == 0) {
    st.skip("null_interpolants", "q = 0");
  } else {
    st.stage("null_interpolants", [&] {
      InterpolationProblem p = r.problem ? *r.problem : build_problem(s, r.node_points);
      r.null_witnesses = null_interpolants(p, *r.sparse, s.params.q);
      for (auto& d : p.data) d.value = Complex{0.0, 0.0};
      double worst = 0.0;
      for (const auto& w : r.null_witnesses) worst = std::max(worst, residuals(w, p));
      r.null_residual = worst;
    });
  }
  return r;
}

}  // namespace expinterp
