#include "expinterp/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "expinterp/error.hpp"

namespace expinterp {

namespace {

void append(std::string& detail, const std::string& item) {
  if (!detail.empty()) detail += "; ";
  detail += item;
}

bool close(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

std::string point_text(Complex z) {
  std::ostringstream os;
  os << "(" << z.real() << ", " << z.imag() << ")";
  return os.str();
}

std::int64_t horizon_of(const ConditionReport& report) {
  return report.horizon > 0 ? report.horizon : 512;
}

void append_single_direction_clauses(Verdict& v, const FamilySet& nodes, const Direction& omega,
                                     const ConditionReport& report, const ConvergenceDomain& dom,
                                     bool exempt_convergent) {
  Clause special{"special class: every line Re(s_omega z) = c holds at most one node", false, {}};
  try {
    const Threshold t = line_injectivity_threshold(nodes, omega, horizon_of(report));
    special.pass = t.minus_infinity;
    special.detail = "threshold " + t.describe();
  } catch (const Error& e) {
    special.detail = std::string(error_code_name(e.code())) + ": " + e.what();
  }
  v.clauses.push_back(special);

  if (dom.kind == DomainKind::WholePlane) {
    Clause lim{"lim Re(s_omega mu_k) = +inf", true, {}};
    for (std::size_t f = 0; f < nodes.families.size(); ++f) {
      const auto& fam = nodes.families[f].family;
      if (exempt_convergent && fam.finite_limit()) continue;
      const auto prof = re_profile(fam, omega.value());
      if (prof.kind != ProfileKind::ToPlusInf) {
        lim.pass = false;
        append(lim.detail, "family " + std::to_string(f) + " has Re-profile " + prof.describe());
      }
    }
    v.clauses.push_back(lim);
    v.clauses.push_back({"finitely many sporadic nodes", true,
                         std::to_string(nodes.sporadic.size()) + " sporadic"});
    return;
  }

  std::ostringstream d;
  d << dom.abscissa;
  v.clauses.push_back({"Re(s_omega mu_k) < d for all k", !dom.attained,
                       dom.attained ? "supremum d = " + d.str() + " is attained" : "d = " + d.str()});
  Clause lim{"lim Re(s_omega mu_k) = d", !nodes.families.empty(), {}};
  if (nodes.families.empty()) lim.detail = "no infinite node sequence";
  for (std::size_t f = 0; f < nodes.families.size(); ++f) {
    const auto prof = re_profile(nodes.families[f].family, omega.value());
    const bool ok = prof.kind == ProfileKind::FiniteLimit && prof.increasing && close(prof.value, dom.abscissa);
    if (!ok) {
      lim.pass = false;
      append(lim.detail, "family " + std::to_string(f) + " has Re-profile " + prof.describe());
    }
  }
  v.clauses.push_back(lim);
}

}  // namespace

std::string_view verdict_case_name(VerdictCase c) {
  switch (c) {
    case VerdictCase::Plane: return "PLANE";
    case VerdictCase::HalfPlane: return "HALF_PLANE";
    case VerdictCase::Domain: return "DOMAIN";
  }
  return "?";
}

void Verdict::finish() {
  soluble = std::all_of(clauses.begin(), clauses.end(), [](const Clause& c) { return c.pass; });
}

ConvergenceDomain convergence_domain(const FamilySet& nodes, const Direction& omega,
                                     std::int64_t horizon) {
  ConvergenceDomain dom;
  dom.omega = omega;
  const Complex s = omega.value();
  double best = -std::numeric_limits<double>::infinity();
  bool attained = false;
  auto offer = [&](double value, bool is_attained) {
    if (value > best) {
      best = value;
      attained = is_attained;
    } else if (value == best) {
      attained = attained || is_attained;
    }
  };
  for (const auto& p : nodes.sporadic) offer((s * p.point).real(), true);
  for (const auto& f : nodes.families) {
    const auto prof = re_profile(f.family, s);
    switch (prof.kind) {
      case ProfileKind::ToPlusInf:
        dom.kind = DomainKind::WholePlane;
        return dom;
      case ProfileKind::Constant:
        offer(prof.value, true);
        break;
      case ProfileKind::FiniteLimit:
        if (prof.increasing) {
          offer(prof.value, false);
        } else {
          offer((s * f.family.point(1)).real(), true);
        }
        break;
      case ProfileKind::ToMinusInf: {
        const std::int64_t kf = family_horizon(f.family, horizon);
        for (std::int64_t k = 1; k <= kf; ++k) offer((s * f.family.point(k)).real(), true);
        break;
      }
    }
  }
  if (!std::isfinite(best)) throw Error(ErrorCode::InvalidArgument, "node set is empty");
  dom.kind = DomainKind::HalfPlane;
  dom.abscissa = best;
  dom.attained = attained;
  return dom;
}

Verdict theorem2_verdict(const FamilySet& nodes, const FamilySet& exponents, const ConditionReport& report) {
  const DirectionSet p_lambda = limit_directions(exponents);
  if (p_lambda.size() != 1) {
    throw Error(ErrorCode::PreconditionMultidirection,
                "exponent set has " + std::to_string(p_lambda.size()) + " limit directions, expected 1");
  }
  const Direction omega = p_lambda[0];
  const auto dom = convergence_domain(nodes, omega, horizon_of(report));
  Verdict v;
  v.verdict_case = dom.kind == DomainKind::WholePlane ? VerdictCase::Plane : VerdictCase::HalfPlane;
  append_single_direction_clauses(v, nodes, omega, report, dom, false);
  v.finish();
  return v;
}

Verdict defect_verdict(const ConditionReport& report, std::optional<std::size_t> defect) {
  Verdict v;
  v.verdict_case = VerdictCase::Plane;
  v.clauses.push_back({"conditions (A)/(B) hold for every node direction", report.success,
                       report.success ? "" : report.failure_message()});
  Clause zero{"interpolation defect d_M = 0", defect && *defect == 0, {}};
  zero.detail = defect ? "d_M = " + std::to_string(*defect) : "d_M not computed";
  v.clauses.push_back(zero);
  v.finish();
  return v;
}

bool Region::contains(Complex z) const {
  switch (kind) {
    case RegionKind::WholePlane: return true;
    case RegionKind::Disk: return std::abs(z - center) < radius;
    case RegionKind::HalfPlane: return (omega.value() * z).real() < offset;
  }
  return false;
}

bool Region::in_closure(Complex z) const {
  return contains(z) || on_boundary(z);
}

bool Region::on_boundary(Complex z, double tol) const {
  switch (kind) {
    case RegionKind::WholePlane: return false;
    case RegionKind::Disk: return std::abs(std::abs(z - center) - radius) <= tol * std::max(1.0, radius);
    case RegionKind::HalfPlane:
      return std::abs((omega.value() * z).real() - offset) <= tol * std::max(1.0, std::abs(offset));
  }
  return false;
}

Verdict corollary_verdict(const Region& region, const FamilySet& nodes, const FamilySet& exponents,
                          const ConditionReport& report) {
  if (region.kind == RegionKind::WholePlane) {
    Verdict v = theorem2_verdict(nodes, exponents, report);
    v.verdict_case = VerdictCase::Domain;
    return v;
  }
  const DirectionSet p_lambda = limit_directions(exponents);
  if (p_lambda.size() != 1) {
    throw Error(ErrorCode::PreconditionMultidirection,
                "exponent set has " + std::to_string(p_lambda.size()) + " limit directions, expected 1");
  }
  const Direction omega = p_lambda[0];
  for (const auto& p : enumerate(nodes, horizon_of(report))) {
    if (!region.contains(p.point)) {
      throw Error(ErrorCode::NodeOutsideDomain, "node " + point_text(p.point) + " lies outside the domain");
    }
  }
  std::vector<Complex> limits;
  for (const auto& f : nodes.families) {
    if (auto lim = f.family.finite_limit()) {
      if (!region.in_closure(*lim)) {
        throw Error(ErrorCode::NodeOutsideDomain,
                    "limit point " + point_text(*lim) + " lies outside the closure of the domain");
      }
      limits.push_back(*lim);
    }
  }

  const auto dom = convergence_domain(nodes, omega, horizon_of(report));
  Verdict v;
  v.verdict_case = VerdictCase::Domain;
  for (const auto& lim : limits) {
    v.clauses.push_back({"limit point " + point_text(lim) + " on the boundary of D", region.on_boundary(lim), {}});
    Clause in_pi{"limit point " + point_text(lim) + " in Pi", dom.contains(lim), {}};
    if (dom.kind == DomainKind::HalfPlane && close((omega.value() * lim).real(), dom.abscissa)) {
      v.ambiguous_boundary = true;
      in_pi.detail = "on the boundary of Pi (AMBIGUOUS_BOUNDARY)";
    }
    v.clauses.push_back(in_pi);
  }
  append_single_direction_clauses(v, nodes, omega, report, dom, true);
  v.finish();
  return v;
}

bool abel_check(const ExpSum& u, const Direction& omega, Complex mu, std::span<const Complex> samples) {
  for (const auto& t : u.terms()) {
    if (t.exponent.modulus() == 0.0) continue;
    if (!Direction::normalize(t.exponent.value).approx_equal(omega, 1e-12)) {
      throw Error(ErrorCode::ExponentsNotOnRay, "exponent " + point_text(t.exponent.value) +
                                                    " is not on the ray through omega");
    }
  }
  const double edge = (omega.value() * mu).real();
  for (auto z : samples) {
    if ((omega.value() * z).real() > edge) {
      throw Error(ErrorCode::InvalidArgument,
                  "sample " + point_text(z) + " lies outside the Abel half-plane of mu");
    }
  }
  bool ok = true;
  for (auto z : samples) {
    const double proj = (omega.value() * z).real();
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double t = u.terms()[i].exponent.modulus();
      const double mag = std::abs(u.terms()[i].scaled);
      const double at_z = mag * std::exp(t * proj + u.log_weight(i));
      const double at_mu = mag * std::exp(t * edge + u.log_weight(i));
      ok = ok && at_z <= at_mu;
    }
  }
  return ok;
}

}  // namespace expinterp
