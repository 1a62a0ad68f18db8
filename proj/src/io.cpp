#include "expinterp/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "expinterp/error.hpp"
#include "json.hpp"

namespace expinterp {

using json = nlohmann::json;

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::SchemaError, path + ": " + msg);
}

void check_keys(const json& j, const std::string& path, std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) schema(path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      schema(path + "." + key, "unknown field");
    }
  }
}

double parse_real(const json& j, const std::string& path) {
  double v = 0.0;
  if (j.is_number()) {
    v = j.get<double>();
  } else if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end) schema(path, "'" + s + "' is not a decimal number");
  } else {
    schema(path, "expected a number");
  }
  if (!std::isfinite(v)) schema(path, "number must be finite");
  return v;
}

Complex parse_complex(const json& j, const std::string& path) {
  if (j.is_array()) {
    if (j.size() != 2) schema(path, "complex numbers are [re, im]");
    return {parse_real(j[0], path + "[0]"), parse_real(j[1], path + "[1]")};
  }
  return {parse_real(j, path), 0.0};
}

std::uint64_t parse_count(const json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(j.get<std::int64_t>());
  schema(path, "expected a non-negative integer");
}

bool parse_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) schema(path, "expected true or false");
  return j.get<bool>();
}

std::string parse_string(const json& j, const std::string& path) {
  if (!j.is_string()) schema(path, "expected a string");
  return j.get<std::string>();
}

GrowthFn parse_growth(const json& j, const std::string& path) {
  std::string name;
  std::optional<double> q;
  if (j.is_string()) {
    name = j.get<std::string>();
  } else {
    check_keys(j, path, {"tag", "q"});
    if (!j.contains("tag")) schema(path + ".tag", "missing");
    name = parse_string(j["tag"], path + ".tag");
    if (j.contains("q")) q = parse_real(j["q"], path + ".q");
  }
  const auto tag = parse_growth_tag(name);
  if (!tag) schema(path, "unknown growth tag '" + name + "'");
  if (*tag == GrowthTag::Geom) {
    if (!q) schema(path + ".q", "GEOM needs a ratio q");
    try {
      return GrowthFn::geom(*q);
    } catch (const Error& e) {
      schema(path + ".q", e.what());
    }
  }
  if (q) schema(path + ".q", "only GEOM takes a ratio");
  return {*tag, 0.0};
}

int parse_multiplicity(const json& j, const std::string& path) {
  const auto m = parse_count(j, path);
  if (m < 1 || m > 64) schema(path, "multiplicity must lie in 1..64");
  return static_cast<int>(m);
}

FamilySet parse_family_set(const json& j, const std::string& path) {
  check_keys(j, path, {"families", "sporadic"});
  FamilySet set;
  if (j.contains("families")) {
    const auto& fams = j["families"];
    if (!fams.is_array()) schema(path + ".families", "expected an array");
    for (std::size_t i = 0; i < fams.size(); ++i) {
      const std::string p = path + ".families[" + std::to_string(i) + "]";
      const auto& f = fams[i];
      check_keys(f, p, {"alpha", "beta", "phi", "gamma", "psi", "pi_units", "multiplicity"});
      FamilyEntry e;
      if (f.contains("alpha")) e.family.alpha = parse_complex(f["alpha"], p + ".alpha");
      if (f.contains("beta")) e.family.beta = parse_complex(f["beta"], p + ".beta");
      if (f.contains("phi")) e.family.phi = parse_growth(f["phi"], p + ".phi");
      if (f.contains("gamma")) e.family.gamma = parse_complex(f["gamma"], p + ".gamma");
      if (f.contains("psi")) e.family.psi = parse_growth(f["psi"], p + ".psi");
      if (f.contains("pi_units")) e.family.pi_units = parse_bool(f["pi_units"], p + ".pi_units");
      if (f.contains("multiplicity")) e.multiplicity = parse_multiplicity(f["multiplicity"], p + ".multiplicity");
      try {
        e.family.validate();
      } catch (const Error& err) {
        schema(p, err.what());
      }
      set.families.push_back(e);
    }
  }
  if (j.contains("sporadic")) {
    const auto& sp = j["sporadic"];
    if (!sp.is_array()) schema(path + ".sporadic", "expected an array");
    for (std::size_t i = 0; i < sp.size(); ++i) {
      const std::string p = path + ".sporadic[" + std::to_string(i) + "]";
      check_keys(sp[i], p, {"point", "multiplicity"});
      if (!sp[i].contains("point")) schema(p + ".point", "missing");
      SporadicPoint s;
      s.point = parse_complex(sp[i]["point"], p + ".point");
      if (sp[i].contains("multiplicity")) {
        s.multiplicity = parse_multiplicity(sp[i]["multiplicity"], p + ".multiplicity");
      }
      set.sporadic.push_back(s);
    }
  }
  return set;
}

Region parse_region(const json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("kind")) schema(path + ".kind", "missing");
  const std::string kind = parse_string(j["kind"], path + ".kind");
  Region r;
  if (kind == "whole_plane") {
    check_keys(j, path, {"kind"});
    r.kind = RegionKind::WholePlane;
  } else if (kind == "disk") {
    check_keys(j, path, {"kind", "center", "radius"});
    if (!j.contains("radius")) schema(path + ".radius", "missing");
    r.kind = RegionKind::Disk;
    if (j.contains("center")) r.center = parse_complex(j["center"], path + ".center");
    r.radius = parse_real(j["radius"], path + ".radius");
    if (!(r.radius > 0.0)) schema(path + ".radius", "radius must be positive");
  } else if (kind == "half_plane") {
    check_keys(j, path, {"kind", "omega", "offset"});
    r.kind = RegionKind::HalfPlane;
    if (j.contains("omega")) {
      const Complex w = parse_complex(j["omega"], path + ".omega");
      if (w == Complex{0.0, 0.0}) schema(path + ".omega", "direction must be nonzero");
      r.omega = Direction::normalize(w);
    }
    if (j.contains("offset")) r.offset = parse_real(j["offset"], path + ".offset");
  } else {
    schema(path + ".kind", "expected whole_plane, disk or half_plane");
  }
  return r;
}

Scenario scenario_from_json(const json& j) {
  check_keys(j, "$", {"lambda", "nodes", "data", "task", "params", "domain"});
  if (!j.contains("lambda")) schema("$.lambda", "missing");
  if (!j.contains("nodes")) schema("$.nodes", "missing");
  Scenario s;
  s.lambda = parse_family_set(j["lambda"], "$.lambda");
  s.nodes = parse_family_set(j["nodes"], "$.nodes");
  if (j.contains("data")) {
    const auto& data = j["data"];
    if (!data.is_array()) schema("$.data", "expected an array");
    for (std::size_t i = 0; i < data.size(); ++i) {
      const std::string p = "$.data[" + std::to_string(i) + "]";
      check_keys(data[i], p, {"node", "order", "value"});
      if (!data[i].contains("node")) schema(p + ".node", "missing");
      if (!data[i].contains("value")) schema(p + ".value", "missing");
      Datum d;
      d.node = static_cast<std::size_t>(parse_count(data[i]["node"], p + ".node"));
      if (data[i].contains("order")) {
        const auto o = parse_count(data[i]["order"], p + ".order");
        if (o > 63) schema(p + ".order", "derivative order too large");
        d.order = static_cast<int>(o);
      }
      d.value = parse_complex(data[i]["value"], p + ".value");
      s.data.push_back(d);
    }
  }
  if (j.contains("task")) {
    const std::string t = parse_string(j["task"], "$.task");
    const auto task = parse_task(t);
    if (!task) schema("$.task", "expected ANALYZE, SOLVE, VERIFY or PLOTDATA");
    s.task = *task;
  }
  if (j.contains("params")) {
    const auto& p = j["params"];
    check_keys(p, "$.params", {"N", "rho", "tol", "K", "seed", "q", "force_solve"});
    auto& o = s.params;
    if (p.contains("N")) o.n = static_cast<std::size_t>(parse_count(p["N"], "$.params.N"));
    if (p.contains("rho")) o.rho = parse_real(p["rho"], "$.params.rho");
    if (p.contains("tol")) o.tol = parse_real(p["tol"], "$.params.tol");
    if (p.contains("K")) o.horizon = static_cast<std::int64_t>(parse_count(p["K"], "$.params.K"));
    if (p.contains("seed")) o.seed = parse_count(p["seed"], "$.params.seed");
    if (p.contains("q")) o.q = static_cast<std::size_t>(parse_count(p["q"], "$.params.q"));
    if (p.contains("force_solve")) o.force_solve = parse_bool(p["force_solve"], "$.params.force_solve");
    if (o.n < 1 || o.n > 1024) schema("$.params.N", "N must lie in 1..1024");
    if (o.rho < 0.0) schema("$.params.rho", "rho must be >= 0");
    if (!(o.tol > 0.0)) schema("$.params.tol", "tol must be > 0");
    if (o.horizon < 1 || o.horizon > 1000000) schema("$.params.K", "K must lie in 1..1000000");
    if (o.q > 1024) schema("$.params.q", "q must be <= 1024");
  }
  if (j.contains("domain")) s.domain = parse_region(j["domain"], "$.domain");
  return s;
}

json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t pos = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n');
    throw Error(ErrorCode::SchemaError, "line " + std::to_string(line) + ": malformed JSON (" + e.what() + ")");
  }
}

json num(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

json cjson(Complex z) { return json::array({num(z.real()), num(z.imag())}); }

json dir_json(const Direction& d) { return cjson(d.value()); }

json dirs_json(const DirectionSet& set) {
  json a = json::array();
  for (const auto& d : set) a.push_back(dir_json(d));
  return a;
}

json threshold_json(const Threshold& t) { return t.minus_infinity ? json("-inf") : num(t.value); }

json growth_json(const GrowthFn& g) {
  if (g.tag == GrowthTag::Geom) return {{"tag", "GEOM"}, {"q", g.q}};
  return std::string(growth_tag_name(g.tag));
}

json family_set_json(const FamilySet& set) {
  json fams = json::array();
  for (const auto& e : set.families) {
    const auto& f = e.family;
    fams.push_back({{"alpha", cjson(f.alpha)},
                    {"beta", cjson(f.beta)},
                    {"phi", growth_json(f.phi)},
                    {"gamma", cjson(f.gamma)},
                    {"psi", growth_json(f.psi)},
                    {"pi_units", f.pi_units},
                    {"multiplicity", e.multiplicity}});
  }
  json sp = json::array();
  for (const auto& s : set.sporadic) sp.push_back({{"point", cjson(s.point)}, {"multiplicity", s.multiplicity}});
  return {{"families", fams}, {"sporadic", sp}};
}

json scenario_json(const Scenario& s) {
  json data = json::array();
  for (const auto& d : s.data) data.push_back({{"node", d.node}, {"order", d.order}, {"value", cjson(d.value)}});
  json j{{"lambda", family_set_json(s.lambda)},
         {"nodes", family_set_json(s.nodes)},
         {"data", data},
         {"task", std::string(task_name(s.task))},
         {"params",
          {{"N", s.params.n},
           {"rho", s.params.rho},
           {"tol", s.params.tol},
           {"K", s.params.horizon},
           {"seed", s.params.seed},
           {"q", s.params.q},
           {"force_solve", s.params.force_solve}}}};
  if (s.domain) {
    const auto& r = *s.domain;
    switch (r.kind) {
      case RegionKind::WholePlane: j["domain"] = {{"kind", "whole_plane"}}; break;
      case RegionKind::Disk:
        j["domain"] = {{"kind", "disk"}, {"center", cjson(r.center)}, {"radius", r.radius}};
        break;
      case RegionKind::HalfPlane:
        j["domain"] = {{"kind", "half_plane"}, {"omega", dir_json(r.omega)}, {"offset", r.offset}};
        break;
    }
  }
  return j;
}

json exponent_json(const Exponent& e) {
  json j{{"value", cjson(e.value)}};
  if (e.pi_scaled) j["pi_units"] = cjson(e.units);
  return j;
}

json expsum_json(const ExpSum& u) {
  json terms = json::array();
  for (const auto& t : u.terms()) {
    json e = exponent_json(t.exponent);
    e["scaled"] = cjson(t.scaled);
    terms.push_back(e);
  }
  return {{"rate", num(u.rate())}, {"bound", num(u.bound())}, {"truncated", u.truncated()}, {"terms", terms}};
}

json matrix_columns(const CMatrix& m) {
  json cols = json::array();
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    json col = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) col.push_back(cjson(m(r, c)));
    cols.push_back(col);
  }
  return cols;
}

json conditions_json(const ConditionReport& c) {
  json witnesses = json::array();
  for (const auto& w : c.witnesses) {
    witnesses.push_back({{"tau", dir_json(w.tau)},
                         {"omega", dir_json(w.omega)},
                         {"kind", w.kind == ConditionKind::A ? "A" : "B"},
                         {"kappa", threshold_json(w.kappa)}});
  }
  json coupled = json::array();
  for (const auto& cd : c.coupled) coupled.push_back({{"omega", dir_json(cd.omega)}, {"kappa", threshold_json(cd.kappa)}});
  json failures = json::array();
  for (const auto& f : c.failures) {
    json cands = json::array();
    for (const auto& r : f.candidates) cands.push_back({{"omega", dir_json(r.omega)}, {"reason", r.reason}});
    failures.push_back({{"tau", f.tau ? dir_json(*f.tau) : json(nullptr)}, {"candidates", cands}});
  }
  return {{"success", c.success},      {"vacuous", c.vacuous},   {"special_class", c.special_class},
          {"horizon", c.horizon},      {"witnesses", witnesses}, {"coupled", coupled},
          {"failures", failures}};
}

json report_json(const AnalysisReport& r) {
  json j;
  j["format"] = "expinterp-report/1";
  j["scenario"] = scenario_json(r.scenario);
  j["hard_error"] = r.hard_error;
  json stages = json::array();
  for (const auto& s : r.stages) {
    stages.push_back({{"name", s.name},
                      {"status", std::string(stage_status_name(s.status))},
                      {"code", s.code},
                      {"message", s.message}});
  }
  j["stages"] = stages;
  j["node_count"] = r.node_points.size();
  j["p_lambda"] = r.p_lambda ? dirs_json(*r.p_lambda) : json(nullptr);
  j["p_m"] = r.p_m ? dirs_json(*r.p_m) : json(nullptr);
  j["p_m_lambda"] = r.p_m_lambda ? dirs_json(*r.p_m_lambda) : json(nullptr);
  j["conditions"] = r.conditions ? conditions_json(*r.conditions) : json(nullptr);
  if (r.sparse) {
    json ex = json::array();
    for (std::size_t i = 0; i < r.sparse->size(); ++i) {
      json e = exponent_json(r.sparse->exponents[i]);
      e["family"] = r.sparse->source_family[i];
      e["index"] = r.sparse->source_index[i];
      ex.push_back(e);
    }
    j["sparse"] = {{"targets", dirs_json(r.sparse->targets)}, {"exponents", ex}};
  } else {
    j["sparse"] = nullptr;
  }
  if (r.defect) {
    json members = json::array();
    for (const auto& m : r.defect->members) members.push_back({{"node", cjson(m.node)}, {"multiplicity", m.multiplicity}});
    j["defect_set"] = {{"members", members}, {"columns", r.defect->column_count()}};
  } else {
    j["defect_set"] = nullptr;
  }
  if (r.defect_dim) {
    j["d_M"] = r.defect_dim->dimension;
    j["defect_dimension"] = {{"rows_used", r.defect_dim->rows_used},
                             {"null_dims", r.defect_dim->null_dims},
                             {"null_basis", matrix_columns(r.defect_dim->null_basis)}};
  } else {
    j["d_M"] = nullptr;
    j["defect_dimension"] = nullptr;
  }
  if (r.exceptional) {
    json xs = json::array();
    for (auto x : *r.exceptional) xs.push_back(cjson(x));
    j["exceptional"] = xs;
  } else {
    j["exceptional"] = nullptr;
  }
  if (r.domain) {
    json d{{"kind", r.domain->kind == DomainKind::WholePlane ? "WHOLE_PLANE" : "HALF_PLANE"},
           {"omega", dir_json(r.domain->omega)}};
    if (r.domain->kind == DomainKind::HalfPlane) {
      d["abscissa"] = num(r.domain->abscissa);
      d["attained"] = r.domain->attained;
    }
    j["domain"] = d;
  } else {
    j["domain"] = nullptr;
  }
  if (r.verdict) {
    json clauses = json::array();
    for (const auto& c : r.verdict->clauses) clauses.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["verdict"] = {{"soluble", r.verdict->soluble},
                    {"case", std::string(verdict_case_name(r.verdict->verdict_case))},
                    {"ambiguous_boundary", r.verdict->ambiguous_boundary},
                    {"clauses", clauses}};
  } else {
    j["verdict"] = nullptr;
  }
  if (r.solve) {
    const auto& o = *r.solve;
    json cert = nullptr;
    if (o.certificate) {
      cert = json::array();
      for (Eigen::Index i = 0; i < o.certificate->size(); ++i) cert.push_back(cjson((*o.certificate)(i)));
    }
    j["solve"] = {{"status", std::string(solve_status_name(o.status))},
                  {"rank", o.rank},
                  {"max_residual", num(o.max_residual)},
                  {"lsq_residual", num(o.lsq_residual)},
                  {"certificate", cert},
                  {"certificate_margin", num(o.certificate_margin)},
                  {"coefficients", o.coefficients ? expsum_json(*o.coefficients) : json(nullptr)}};
  } else {
    j["solve"] = "SKIPPED";
  }
  j["residual"] = r.residual ? num(*r.residual) : json(nullptr);
  j["kernel_check"] = r.kernel_check ? json(*r.kernel_check) : json(nullptr);
  json sums = json::array();
  for (const auto& w : r.null_witnesses) sums.push_back(expsum_json(w));
  j["null_witnesses"] = {{"count", r.null_witnesses.size()},
                         {"max_residual", r.null_residual ? num(*r.null_residual) : json(nullptr)},
                         {"sums", sums}};
  return j;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

std::string fmt(Complex z) {
  std::ostringstream os;
  os << std::setprecision(6) << z.real() << (std::signbit(z.imag()) ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

std::string fmt_dirs(const DirectionSet& set) {
  std::string out = "{";
  bool first = true;
  for (const auto& d : set) {
    if (!first) out += ", ";
    out += fmt(d.value());
    first = false;
  }
  return out + "}";
}

std::string human_report(const AnalysisReport& r) {
  std::ostringstream os;
  os << "task " << task_name(r.scenario.task) << ", " << r.node_points.size() << " nodes enumerated (K = "
     << r.scenario.params.horizon << ")\n";
  if (r.p_lambda) os << "P(Lambda)   " << fmt_dirs(*r.p_lambda) << "\n";
  if (r.p_m) os << "P(M)        " << fmt_dirs(*r.p_m) << "\n";
  if (r.p_m_lambda) os << "P_M(Lambda) " << fmt_dirs(*r.p_m_lambda) << "\n";
  if (r.conditions) {
    os << "conditions  " << (r.conditions->success ? "hold" : "fail") << (r.conditions->vacuous ? " (vacuous)" : "")
       << (r.conditions->special_class ? ", special class" : "") << "\n";
    for (const auto& c : r.conditions->coupled) {
      os << "  omega " << fmt(c.omega.value()) << "  kappa " << c.kappa.describe() << "\n";
    }
  }
  if (r.defect) os << "defect set  " << r.defect->members.size() << " nodes\n";
  if (r.defect_dim) os << "d_M         " << r.defect_dim->dimension << "\n";
  if (r.exceptional && !r.exceptional->empty()) {
    os << "xi          ";
    for (std::size_t i = 0; i < r.exceptional->size(); ++i) os << (i ? ", " : "") << fmt((*r.exceptional)[i]);
    os << "\n";
  }
  if (r.domain) {
    if (r.domain->kind == DomainKind::WholePlane) {
      os << "domain      whole plane\n";
    } else {
      os << "domain      Re(" << fmt(r.domain->omega.value()) << " z) < " << fmt(r.domain->abscissa) << "\n";
    }
  }
  if (r.verdict) {
    os << "verdict     " << (r.verdict->soluble ? "SOLUBLE" : "NOT SOLUBLE") << " ("
       << verdict_case_name(r.verdict->verdict_case) << ")" << (r.verdict->ambiguous_boundary ? " AMBIGUOUS_BOUNDARY" : "")
       << "\n";
    std::size_t width = 6;
    for (const auto& c : r.verdict->clauses) width = std::max(width, c.name.size());
    os << "  " << std::left << std::setw(static_cast<int>(width)) << "clause" << "  result  detail\n";
    for (const auto& c : r.verdict->clauses) {
      os << "  " << std::left << std::setw(static_cast<int>(width)) << c.name << "  " << (c.pass ? "pass  " : "FAIL  ")
         << "  " << c.detail << "\n";
    }
  }
  if (r.solve) {
    os << "solve       " << solve_status_name(r.solve->status) << ", rank " << r.solve->rank << ", max residual "
       << fmt(r.solve->max_residual) << ", lsq residual " << fmt(r.solve->lsq_residual) << "\n";
  }
  if (r.residual) os << "residual    " << fmt(*r.residual) << "\n";
  if (r.kernel_check) os << "kernel      " << (*r.kernel_check ? "exact zero" : "NONZERO") << "\n";
  if (!r.null_witnesses.empty()) {
    os << "null        " << r.null_witnesses.size() << " witnesses, max residual " << fmt(r.null_residual.value_or(0.0))
       << "\n";
  }
  os << "stages\n";
  for (const auto& s : r.stages) {
    os << "  " << std::left << std::setw(18) << s.name << stage_status_name(s.status);
    if (!s.code.empty()) os << " " << s.code;
    if (!s.message.empty()) os << "  " << s.message;
    os << "\n";
  }
  if (r.hard_error) os << "HARD ERROR\n";
  return os.str();
}

// Shortest round-trip text, so CSV values reparse exactly.
std::string csv(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc() ? std::string(buf, ptr) : std::string();
}

}  // namespace

Scenario parse_scenario(std::string_view text) { return scenario_from_json(parse_document(text)); }

std::string emit_scenario(const Scenario& s) { return scenario_json(s).dump(2) + "\n"; }

std::optional<Format> parse_format(std::string_view name) {
  if (name == "human" || name == "HUMAN") return Format::Human;
  if (name == "machine" || name == "MACHINE" || name == "json") return Format::Machine;
  return std::nullopt;
}

std::string emit_report(const AnalysisReport& report, Format format) {
  if (format == Format::Human) return human_report(report);
  return report_json(report).dump(2) + "\n";
}

Scenario scenario_from_report(std::string_view report_text) {
  const json j = parse_document(report_text);
  if (!j.is_object() || !j.contains("scenario")) schema("$.scenario", "missing");
  return scenario_from_json(j["scenario"]);
}

std::optional<PlotKind> parse_plot_kind(std::string_view name) {
  if (name == "NODES") return PlotKind::Nodes;
  if (name == "DIRECTIONS") return PlotKind::Directions;
  if (name == "DOMAIN_BOUNDARY") return PlotKind::DomainBoundary;
  if (name == "SOLUTION_MODULUS") return PlotKind::SolutionModulus;
  return std::nullopt;
}

Grid parse_grid(std::string_view text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  if (parts.size() != 6) throw Error(ErrorCode::InvalidArgument, "grid is re_min,re_max,im_min,im_max,nx,ny");
  double v[4];
  for (int i = 0; i < 4; ++i) {
    auto [ptr, ec] = std::from_chars(parts[i].data(), parts[i].data() + parts[i].size(), v[i]);
    if (ec != std::errc() || ptr != parts[i].data() + parts[i].size() || !std::isfinite(v[i])) {
      throw Error(ErrorCode::InvalidArgument, "grid bound '" + parts[i] + "' is not a number");
    }
  }
  std::size_t n[2];
  for (int i = 0; i < 2; ++i) {
    const auto& p = parts[4 + i];
    auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), n[i]);
    if (ec != std::errc() || ptr != p.data() + p.size() || n[i] < 1 || n[i] > 4096) {
      throw Error(ErrorCode::InvalidArgument, "grid size '" + p + "' must be an integer in 1..4096");
    }
  }
  return {v[0], v[1], v[2], v[3], n[0], n[1]};
}

std::string emit_plotdata(const AnalysisReport& r, PlotKind kind, const Grid& grid) {
  std::ostringstream os;
  switch (kind) {
    case PlotKind::Nodes: {
      const Stage* s = r.stage("enumerate");
      if (!s || s->status != StageStatus::Ok) throw Error(ErrorCode::PayloadMissing, "node enumeration unavailable");
      os << "index,re,im,multiplicity,family\n";
      for (std::size_t i = 0; i < r.node_points.size(); ++i) {
        const auto& p = r.node_points[i];
        os << i << ',' << csv(p.point.real()) << ',' << csv(p.point.imag()) << ',' << p.multiplicity << ','
           << p.family << '\n';
      }
      break;
    }
    case PlotKind::Directions: {
      if (!r.p_lambda && !r.p_m) throw Error(ErrorCode::PayloadMissing, "limit directions unavailable");
      os << "set,re,im,angle\n";
      auto rows = [&](const char* name, const std::optional<DirectionSet>& set) {
        if (!set) return;
        for (const auto& d : *set) {
          os << name << ',' << csv(d.value().real()) << ',' << csv(d.value().imag()) << ',' << csv(d.angle()) << '\n';
        }
      };
      rows("P_LAMBDA", r.p_lambda);
      rows("P_M", r.p_m);
      rows("P_M_LAMBDA", r.p_m_lambda);
      break;
    }
    case PlotKind::DomainBoundary: {
      if (!r.domain) throw Error(ErrorCode::PayloadMissing, "convergence domain unavailable");
      os << "t,re,im\n";
      if (r.domain->kind == DomainKind::HalfPlane) {
        // Re(omega z) = d  <=>  z = conj(omega) (d + i t).
        const Complex w = std::conj(r.domain->omega.value());
        const double span = std::max({std::abs(grid.re_min), std::abs(grid.re_max), std::abs(grid.im_min),
                                      std::abs(grid.im_max), 1.0});
        constexpr int kSamples = 101;
        for (int i = 0; i < kSamples; ++i) {
          const double t = -span + 2.0 * span * i / (kSamples - 1);
          const Complex z = w * Complex{r.domain->abscissa, t};
          os << csv(t) << ',' << csv(z.real()) << ',' << csv(z.imag()) << '\n';
        }
      }
      break;
    }
    case PlotKind::SolutionModulus: {
      if (!r.solve || !r.solve->coefficients) throw Error(ErrorCode::PayloadMissing, "no feasible solution in report");
      const ExpSum& u = *r.solve->coefficients;
      os << "re,im,modulus,tail_bound\n";
      for (std::size_t iy = 0; iy < grid.ny; ++iy) {
        const double y = grid.ny == 1 ? grid.im_min
                                      : grid.im_min + (grid.im_max - grid.im_min) * static_cast<double>(iy) /
                                                          static_cast<double>(grid.ny - 1);
        for (std::size_t ix = 0; ix < grid.nx; ++ix) {
          const double x = grid.nx == 1 ? grid.re_min
                                        : grid.re_min + (grid.re_max - grid.re_min) * static_cast<double>(ix) /
                                                            static_cast<double>(grid.nx - 1);
          os << csv(x) << ',' << csv(y) << ',';
          try {
            const auto e = evaluate(u, {x, y}, r.domain);
            os << csv(std::abs(e.value)) << ',' << csv(e.tail_bound);
          } catch (const Error& err) {
            if (err.code() != ErrorCode::DomainViolation) throw;
            os << ',';
          }
          os << '\n';
        }
      }
      break;
    }
  }
  return os.str();
}

std::string emit_expsum(const ExpSum& u) { return expsum_json(u).dump(2) + "\n"; }

ExpSum parse_expsum(std::string_view text) {
  json j = parse_document(text);
  if (j.is_object() && j.contains("format") && j.contains("solve")) {
    const auto& s = j["solve"];
    if (!s.is_object() || !s.contains("coefficients") || s["coefficients"].is_null()) {
      throw Error(ErrorCode::PayloadMissing, "report carries no coefficients");
    }
    j = s["coefficients"];
  }
  check_keys(j, "$", {"rate", "bound", "truncated", "terms"});
  if (!j.contains("rate")) schema("$.rate", "missing");
  if (!j.contains("terms") || !j["terms"].is_array()) schema("$.terms", "expected an array");
  const double rate = parse_real(j["rate"], "$.rate");
  const bool truncated = j.contains("truncated") && parse_bool(j["truncated"], "$.truncated");
  std::vector<ExpTerm> terms;
  for (std::size_t i = 0; i < j["terms"].size(); ++i) {
    const std::string p = "$.terms[" + std::to_string(i) + "]";
    const auto& t = j["terms"][i];
    check_keys(t, p, {"value", "pi_units", "scaled"});
    if (!t.contains("scaled")) schema(p + ".scaled", "missing");
    ExpTerm term;
    if (t.contains("pi_units")) {
      term.exponent = Exponent::in_pi_units(parse_complex(t["pi_units"], p + ".pi_units"));
    } else if (t.contains("value")) {
      term.exponent = Exponent::plain(parse_complex(t["value"], p + ".value"));
    } else {
      schema(p + ".value", "missing");
    }
    term.scaled = parse_complex(t["scaled"], p + ".scaled");
    terms.push_back(term);
  }
  try {
    return ExpSum(std::move(terms), rate, truncated);
  } catch (const Error& e) {
    schema("$", e.what());
  }
}

VerifyResult verify_solution(const AnalysisReport& report, const ExpSum& u) {
  const InterpolationProblem p = build_problem(report.scenario, report.node_points);
  VerifyResult v;
  double scale = 1.0;
  for (const auto& d : p.data) scale = std::max(scale, std::abs(d.value));
  v.tolerance = report.scenario.params.tol * scale;
  v.max_residual = residuals(u, p);
  v.pass = v.max_residual <= v.tolerance;
  if (report.sparse) {
    const bool on_seq = std::all_of(u.terms().begin(), u.terms().end(),
                                    [&](const ExpTerm& t) { return report.sparse->contains(t.exponent); });
    if (on_seq) {
      const ExpSum image = apply_convolution(*report.sparse, u);
      v.kernel_check = std::all_of(image.terms().begin(), image.terms().end(),
                                   [](const ExpTerm& t) { return t.scaled == Complex{0.0, 0.0}; });
    }
  }
  return v;
}

std::string emit_verify(const VerifyResult& v, Format format) {
  if (format == Format::Machine) {
    json j{{"max_residual", num(v.max_residual)},
           {"tolerance", num(v.tolerance)},
           {"pass", v.pass},
           {"kernel_check", v.kernel_check ? json(*v.kernel_check) : json(nullptr)}};
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << (v.pass ? "PASS" : "FAIL") << "  max residual " << fmt(v.max_residual) << " (tolerance " << fmt(v.tolerance)
     << ")";
  if (v.kernel_check) os << ", kernel " << (*v.kernel_check ? "exact zero" : "NONZERO");
  os << "\n";
  return os.str();
}

}  // namespace expinterp
