#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "expinterp/error.hpp"
#include "expinterp/io.hpp"
#include "../support/oracles.hpp"

using namespace expinterp;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string read(const std::string& name) {
  std::ifstream in(std::string(EXPINTERP_SCENARIO_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string printf_str(const char* fmt, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, a, b, c);
  return buf;
}

std::uint64_t ulp_distance(double a, double b) {
  if (a == b) return 0;
  auto key = [](double x) {
    const auto u = std::bit_cast<std::int64_t>(x);
    return u < 0 ? std::numeric_limits<std::int64_t>::min() - u : u;
  };
  const auto ka = key(a);
  const auto kb = key(b);
  return ka > kb ? static_cast<std::uint64_t>(ka) - static_cast<std::uint64_t>(kb)
                 : static_cast<std::uint64_t>(kb) - static_cast<std::uint64_t>(ka);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SparseSequence integer_sequence(std::size_t n) {
  DirectionSet t;
  t.insert(Direction::from_angle(0.0));
  return extract_sparse(FamilySet{{{PointFamily{}, 1}}, {}}, t, n);
}

SparseSequence two_pi_sequence(std::size_t n) {
  PointFamily f;
  f.beta = 2.0;
  f.pi_units = true;
  DirectionSet t;
  t.insert(Direction::from_angle(0.0));
  return extract_sparse(FamilySet{{{f, 1}}, {}}, t, n);
}

Outcome counterexample() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = run(parse_scenario(read("counterexample.json")));
  const double secs = seconds_since(t0);
  if (!r.solve) return {false, "no solve stage"};
  const auto& o = *r.solve;
  if (o.status != SolveStatus::Infeasible || !o.certificate) {
    return {false, "status " + std::string(solve_status_name(o.status))};
  }
  const auto& y = *o.certificate;
  const double skew = std::abs(y(0) + y(1));
  const Complex b1 = r.scenario.data[0].value;
  const Complex b2 = r.scenario.data[1].value;
  const double bound = std::abs(b1 - b2) / std::sqrt(2.0) - 1e-9;
  const bool ok = skew <= 1e-12 && std::abs(std::abs(y(0)) - M_SQRT1_2) <= 1e-12 && o.lsq_residual >= bound && secs < 1.0;
  return {ok, "INFEASIBLE, |y1 + y2| = " + printf_str("%.1e, lsq residual %.6f >= %.6f", skew, o.lsq_residual, bound) +
                  printf_str(", %.3f s", secs)};
}

Outcome periodicity() {
  const auto t0 = std::chrono::steady_clock::now();
  PointFamily f;
  f.beta = 2.0;
  f.pi_units = true;
  oracle::Gen g(2);
  std::uint64_t worst = 0;
  for (int v = 0; v < 20; ++v) {
    std::vector<ExpTerm> terms;
    for (int n = 1; n <= 12; ++n) terms.push_back({f.exponent(n), g.complex(1.0)});
    const ExpSum u(terms, 0.25);
    for (int i = 0; i < 100; ++i) {
      const Complex z{(i % 10) / 8.0 - 0.5, (i / 10) / 4.0 - 1.0};
      for (std::size_t n = 0; n < u.size(); ++n) {
        const Complex a = term_value(u, n, z);
        const Complex b = term_value(u, n, z + Complex{0, 1});
        worst = std::max({worst, ulp_distance(a.real(), b.real()), ulp_distance(a.imag(), b.imag())});
      }
    }
  }
  const double secs = seconds_since(t0);
  return {worst <= 4 && secs < 1.0,
          "max term difference " + std::to_string(worst) + " ulp over 20 x 100 x 12 terms" + printf_str(", %.3f s", secs)};
}

Outcome plane_positive() {
  const auto s = parse_scenario(read("real_axis.json"));
  const auto r = run(s);
  if (!r.verdict || !r.solve || !r.solve->coefficients) return {false, "missing verdict or solution"};
  const bool ok = r.verdict->soluble && s.params.n == 12 && s.params.rho == 1.0 &&
                  r.solve->status == SolveStatus::Feasible && r.residual && *r.residual < 1e-8 && r.kernel_check &&
                  *r.kernel_check;
  return {ok, printf_str("soluble, N = 12, max residual %.2e, kernel coefficients exactly 0", r.residual.value_or(NAN))};
}

Outcome plane_negative() {
  const auto r = run(parse_scenario(read("vertical_fail.json")));
  if (!r.conditions || !r.verdict) return {false, "missing conditions or verdict"};
  const std::string msg = r.conditions->failure_message();
  const bool ok = !r.conditions->success && msg.find("CONSTANT(0)") != std::string::npos && !r.verdict->soluble;
  return {ok, "conditions fail: " + msg};
}

Outcome half_plane() {
  const auto r = run(parse_scenario(read("half_plane.json")));
  if (!r.domain || !r.verdict || !r.problem) return {false, "missing domain, verdict or problem"};
  const bool ok = r.domain->kind == DomainKind::HalfPlane && r.domain->abscissa == 1.0 && r.verdict->soluble &&
                  r.problem->data.size() == 3 && r.residual && *r.residual < 1e-8;
  return {ok, printf_str("HALF_PLANE d = %g, soluble, 3 Hermite conditions, residual %.2e", r.domain->abscissa,
                         r.residual.value_or(NAN))};
}

Outcome defect() {
  const DefectSet pair{{{Complex{0.3, 0}, 1}, {Complex{0.3, 1}, 1}}};
  const auto seq = two_pi_sequence(32);
  const auto dd = defect_dimension(pair, seq);
  if (dd.dimension != 1) return {false, "d_M = " + std::to_string(dd.dimension)};
  Eigen::Vector2cd v = dd.null_basis.col(0);
  v *= std::conj(v(0)) / std::abs(v(0));
  const double err = (v - Eigen::Vector2cd(M_SQRT1_2, -M_SQRT1_2)).norm();

  const auto base = build_quasi_poly_matrix(pair, std::span<const Exponent>(seq.exponents.data(), dd.rows_used));
  oracle::Gen g(6);
  CMatrix rescaled = base.scaled;
  for (Eigen::Index i = 0; i < rescaled.rows(); ++i) rescaled.row(i) *= g.uniform(1e-3, 1e3);
  const auto doubled = build_quasi_poly_matrix(pair, std::span<const Exponent>(seq.exponents.data(), 2 * dd.rows_used));
  const auto d_scaled = static_cast<std::size_t>(null_space(rescaled, kDefectTol).cols());
  const auto d_doubled = static_cast<std::size_t>(null_space(doubled.scaled, kDefectTol).cols());
  const auto single = defect_dimension(DefectSet{{{Complex{0.3, 0}, 1}}}, seq).dimension;
  const bool ok = err <= 1e-8 && d_scaled == 1 && d_doubled == 1 && single == 0;
  return {ok, printf_str("d_M = 1, null vector error %.1e, rescaled %g, doubled rows %g", err,
                         static_cast<double>(d_scaled), static_cast<double>(d_doubled)) +
                  ", single node d_M = " + std::to_string(single)};
}

Outcome non_uniqueness() {
  auto s = parse_scenario(read("real_axis.json"));
  const auto r = run(s);
  if (!r.sparse) return {false, "no sparse sequence"};
  auto p = build_problem(s, r.node_points);
  const auto w = null_interpolants(p, *r.sparse, 5);
  for (auto& d : p.data) d.value = 0.0;
  double worst = 0.0;
  CMatrix gram(5, 5);
  for (std::size_t a = 0; a < w.size(); ++a) {
    worst = std::max(worst, residuals(w[a], p));
    for (std::size_t b = 0; b < w.size(); ++b) {
      Complex acc{};
      for (std::size_t n = 0; n < w[a].size(); ++n) acc += std::conj(w[a].terms()[n].scaled) * w[b].terms()[n].scaled;
      gram(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc;
    }
  }
  const auto rank = numerical_rank(gram, 1e-10);
  return {w.size() == 5 && worst < 1e-9 && rank == 5,
          printf_str("%g witnesses, node residual %.1e, Gram rank %g", static_cast<double>(w.size()), worst,
                     static_cast<double>(rank))};
}

Outcome sparse_invariants() {
  oracle::Gen g(8);
  const GrowthFn growth[] = {GrowthFn::sqrt(), GrowthFn::linear(), GrowthFn::square(), GrowthFn::geom(1.25),
                             GrowthFn::geom(3.0)};
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::size_t exhausted = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    FamilySet s;
    DirectionSet targets;
    const int nf = g.integer(1, 4);
    bool slow = false;
    for (int i = 0; i < nf; ++i) {
      PointFamily f;
      f.alpha = g.complex(3.0);
      f.beta = std::polar(g.uniform(0.1, 10.0), g.uniform(0.0, 2 * kPi));
      const int gi = g.integer(0, 4);
      f.phi = growth[gi];
      slow = slow || gi == 0;
      if (g.coin()) {
        f.gamma = g.complex(1.0);
        f.psi = g.coin() ? GrowthFn::decay() : GrowthFn::bounded_inc();
      }
      s.families.push_back({f, 1});
      if (g.integer(0, 2) > 0 || targets.empty()) targets.insert(Direction::normalize(f.beta));
    }
    // A SQRT family quadruples its index per doubling and meets the index bound near 20 terms.
    const int len = g.integer(1, 30);
    SparseSequence seq;
    try {
      seq = extract_sparse(s, targets, static_cast<std::size_t>(slow ? std::min(len, 12) : len));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Exhausted) throw;
      ++exhausted;
      continue;
    }
    for (std::size_t i = 1; i < seq.size(); ++i) {
      if (!(seq.exponents[i].modulus() > 2 * seq.exponents[i - 1].modulus())) ++violations;
    }
    const double l1 = seq.exponents[0].modulus();
    for (const auto& e : seq.exponents) {
      const double r = e.modulus();
      std::size_t count = 0;
      for (const auto& x : seq.exponents) count += x.modulus() <= r ? 1 : 0;
      if (!(static_cast<double>(count) <= std::log2(r / l1) + 1)) ++violations;
    }
    ++checked;
  }
  return {violations == 0, std::to_string(checked) + " extractions, " + std::to_string(violations) + " violations, " +
                               std::to_string(exhausted) + " configurations exhausted the index bound"};
}

Outcome type_probe() {
  const auto seq = integer_sequence(12);
  const double radii[] = {10.0, 100.0, 1000.0};
  const auto p = minimal_type_probe(seq, radii);
  const bool ok = p.size() == 3 && p[1].slope < p[0].slope && p[2].slope < p[1].slope;
  return {ok, printf_str("slopes %.4f > %.4f > %.4f", p[0].slope, p[1].slope, p[2].slope)};
}

Outcome min_norm_kkt() {
  oracle::Gen g(10);
  int systems = 0;
  double worst_perp = 0.0;
  double worst_oracle = 0.0;
  int attempts = 0;
  while (systems < 50 && attempts < 500) {
    ++attempts;
    const int m = g.integer(1, 8);
    const int n = g.integer(m, 16);
    InterpolationProblem p;
    for (int k = 0; k < m; ++k) {
      p.nodes.push_back({g.complex(0.5), 1});
      p.data.push_back({static_cast<std::size_t>(k), 0, g.complex(1.0)});
    }
    std::vector<Exponent> ex;
    for (int j = 0; j < n; ++j) ex.push_back(Exponent::plain(std::polar(g.uniform(0.5, 3.0), g.uniform(0.0, 2 * kPi))));
    const auto e = assemble(p, ex);
    const auto sv = e.weighted.jacobiSvd().singularValues();
    if (sv(sv.size() - 1) < 1e-6 * sv(0)) continue;
    const auto b = p.rhs();
    const auto out = solve_min_weighted_norm(e, b);
    if (out.status != SolveStatus::Feasible) continue;
    ++systems;
    const auto& d = out.weighted_solution;
    const auto svd = e.weighted.jacobiSvd(Eigen::ComputeFullV);
    CVector perp = d;
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(out.rank); ++i) {
      perp -= svd.matrixV().col(i) * svd.matrixV().col(i).dot(d);
    }
    worst_perp = std::max(worst_perp, perp.norm() / d.norm());

    std::vector<std::vector<oracle::C>> a(static_cast<std::size_t>(m), std::vector<oracle::C>(static_cast<std::size_t>(n)));
    std::vector<oracle::C> rhs(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      rhs[static_cast<std::size_t>(i)] = b(i);
      for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = e.weighted(i, j);
    }
    const auto ref = oracle::min_norm_normal_equations(a, rhs);
    double num = 0.0;
    double den = 0.0;
    for (int j = 0; j < n; ++j) {
      num += std::norm(d(j) - ref[static_cast<std::size_t>(j)]);
      den += std::norm(ref[static_cast<std::size_t>(j)]);
    }
    worst_oracle = std::max(worst_oracle, std::sqrt(num / den));
  }
  const bool ok = systems == 50 && worst_perp <= 1e-10 && worst_oracle <= 1e-6;
  return {ok, std::to_string(systems) + " systems, complement projection " + printf_str("%.1e, oracle mismatch %.1e", worst_perp, worst_oracle)};
}

Outcome determinism() {
  std::size_t same = 0;
  const char* names[] = {"counterexample.json", "real_axis.json", "half_plane.json", "vertical_fail.json", "two_rays.json"};
  for (const char* name : names) {
    const auto s = parse_scenario(read(name));
    if (emit_report(run(s), Format::Machine) == emit_report(run(s), Format::Machine)) ++same;
  }
  return {same == std::size(names), std::to_string(same) + "/" + std::to_string(std::size(names)) +
                                        " scenarios byte-identical across two runs"};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"counterexample reproduction", counterexample},
      {"periodicity invariant", periodicity},
      {"plane case, positive", plane_positive},
      {"plane case, negative", plane_negative},
      {"half-plane case", half_plane},
      {"defect dimension", defect},
      {"non-uniqueness witnesses", non_uniqueness},
      {"sparse invariants", sparse_invariants},
      {"minimal-type probe", type_probe},
      {"min-norm KKT", min_norm_kkt},
      {"determinism", determinism},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::printf("%s  %2d  %-28s %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
