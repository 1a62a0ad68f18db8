#include "expinterp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "expinterp/error.hpp"

namespace expinterp {

Direction Direction::normalize(Complex v) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || v == Complex{}) {
    throw Error(ErrorCode::InvalidArgument, "direction needs a finite nonzero value");
  }
  if (v.imag() == 0.0) return Direction({v.real() > 0.0 ? 1.0 : -1.0, 0.0});
  if (v.real() == 0.0) return Direction({0.0, v.imag() > 0.0 ? 1.0 : -1.0});
  return Direction(v / std::abs(v));
}

Direction Direction::from_angle(double angle) {
  const double quarter = angle / (kPi / 2.0);
  const double n = std::round(quarter);
  if (std::abs(quarter - n) < 1e-12) {
    switch (((static_cast<long long>(n) % 4) + 4) % 4) {
      case 0: return Direction({1.0, 0.0});
      case 1: return Direction({0.0, 1.0});
      case 2: return Direction({-1.0, 0.0});
      default: return Direction({0.0, -1.0});
    }
  }
  return Direction(std::polar(1.0, angle));
}

double Direction::angle() const {
  double a = std::atan2(value_.imag(), value_.real());
  if (a < 0.0) a += 2.0 * kPi;
  return a;
}

bool DirectionSet::insert(const Direction& d) {
  if (contains(d)) return false;
  auto pos = std::lower_bound(items_.begin(), items_.end(), d,
                              [](const Direction& a, const Direction& b) { return a.angle() < b.angle(); });
  items_.insert(pos, d);
  return true;
}

bool DirectionSet::contains(const Direction& d) const {
  return std::any_of(items_.begin(), items_.end(), [&](const Direction& x) { return x.approx_equal(d); });
}

std::string Threshold::describe() const {
  if (minus_infinity) return "-inf";
  std::ostringstream os;
  os << value;
  return os.str();
}

DirectionSet limit_directions(const FamilySet& set) {
  DirectionSet out;
  for (const auto& f : set.families) {
    if (f.family.unbounded()) out.insert(Direction::normalize(f.family.beta));
  }
  return out;
}

namespace {

double eval_expansion(const ProjectionExpansion& e, std::int64_t k) {
  const auto kd = static_cast<double>(k);
  double v = e.constant;
  if (e.decay != 0.0) v += e.decay * std::ldexp(1.0, static_cast<int>(-std::min<std::int64_t>(k, 4096)));
  if (e.sqrt != 0.0) v += e.sqrt * std::sqrt(kd);
  if (e.linear != 0.0) v += e.linear * kd;
  if (e.square != 0.0) v += e.square * kd * kd;
  for (const auto& [q, c] : e.geom) v += c * std::pow(q, kd);
  return v;
}

struct Projected {
  double value;
  int family;  // -1 sporadic
};

bool same_value(double a, double b) {
  return std::abs(a - b) <= 1e-13 * std::max({1.0, std::abs(a), std::abs(b)});
}

std::string family_label(std::size_t f) { return "family " + std::to_string(f); }

}  // namespace

Threshold line_injectivity_threshold(const FamilySet& nodes, const Direction& omega,
                                     std::int64_t horizon) {
  if (horizon < 2) throw Error(ErrorCode::HorizonTooSmall, "horizon must be >= 2");
  const Complex s = omega.value();
  // Validates distinctness of the enumerated prefix.
  (void)enumerate(nodes, horizon);

  const std::size_t nf = nodes.families.size();
  std::vector<GrowthProfile> profiles(nf);
  std::vector<ProjectionExpansion> expansions(nf);
  std::vector<std::int64_t> limits(nf);
  for (std::size_t f = 0; f < nf; ++f) {
    profiles[f] = re_profile(nodes.families[f].family, s);
    expansions[f] = projection_expansion(nodes.families[f].family, s);
    limits[f] = family_horizon(nodes.families[f].family, horizon);
  }

  std::vector<Projected> entries;
  std::vector<double> collisions;
  for (const auto& p : nodes.sporadic) {
    entries.push_back({(s * p.point).real(), -1});
  }

  for (std::size_t f = 0; f < nf; ++f) {
    const auto& prof = profiles[f];
    const auto& e = expansions[f];
    const std::int64_t kf = limits[f];
    const int id = static_cast<int>(f);
    switch (prof.kind) {
      case ProfileKind::ToPlusInf:
      case ProfileKind::ToMinusInf: {
        if (kf < 2) {
          throw Error(ErrorCode::HorizonTooSmall, family_label(f) + " enumerates fewer than two points");
        }
        for (std::int64_t k = std::max<std::int64_t>(1, kf / 2); k < kf; ++k) {
          const double a = eval_expansion(e, k);
          const double b = eval_expansion(e, k + 1);
          if (prof.increasing ? !(b > a) : !(b < a)) {
            throw Error(ErrorCode::HorizonTooSmall,
                        family_label(f) + " projection not monotone at k = " + std::to_string(k));
          }
        }
        for (std::int64_t k = 1; k <= kf; ++k) entries.push_back({eval_expansion(e, k), id});
        break;
      }
      case ProfileKind::Constant:
        // Every node of the family sits on the single line Re(omega z) = c0.
        if (kf >= 2) collisions.push_back(prof.value);
        entries.push_back({prof.value, id});
        break;
      case ProfileKind::FiniteLimit: {
        // Beyond the resolution index the distance to the limit is below
        // binary64 resolution; the symbolic checks below cover that tail.
        const double floor_gap = 64.0 * std::numeric_limits<double>::epsilon() *
                                 std::max(1.0, std::abs(e.constant));
        for (std::int64_t k = 1; k <= kf; ++k) {
          const double gap = std::abs(e.decay) * std::ldexp(1.0, static_cast<int>(-std::min<std::int64_t>(k, 4096)));
          if (gap <= floor_gap) break;
          entries.push_back({eval_expansion(e, k), id});
        }
        break;
      }
    }
  }

  // Tails.
  for (std::size_t f = 0; f < nf; ++f) {
    for (std::size_t g = f + 1; g < nf; ++g) {
      const auto& pf = profiles[f];
      const auto& pg = profiles[g];
      if (pf.kind == ProfileKind::ToPlusInf && pg.kind == ProfileKind::ToPlusInf &&
          expansions[f].approx_equal(expansions[g], 1e-12)) {
        throw Error(ErrorCode::Unsatisfiable,
                    family_label(f) + " and " + family_label(g) +
                        " share the projection sequence; infinitely many lines hold two nodes");
      }
      if (pf.kind == ProfileKind::FiniteLimit && pg.kind == ProfileKind::FiniteLimit &&
          same_value(pf.value, pg.value) && pf.increasing == pg.increasing) {
        // c0 + c1 2^{-k} = c0 + c1' 2^{-j} recurs iff c1/c1' is a power of two.
        const double ratio = expansions[f].decay / expansions[g].decay;
        if (ratio > 0.0) {
          const double l = std::log2(ratio);
          if (std::abs(l - std::round(l)) < 1e-9 && pf.increasing) {
            collisions.push_back(pf.value);
          }
        }
      }
    }
  }

  std::sort(entries.begin(), entries.end(),
            [](const Projected& a, const Projected& b) { return a.value < b.value; });
  for (std::size_t i = 0; i + 1 < entries.size(); ++i) {
    const auto& a = entries[i];
    for (std::size_t j = i + 1; j < entries.size() && same_value(a.value, entries[j].value); ++j) {
      const auto& b = entries[j];
      const bool same_monotone_family =
          a.family >= 0 && a.family == b.family &&
          profiles[static_cast<std::size_t>(a.family)].kind == ProfileKind::FiniteLimit;
      if (!same_monotone_family) collisions.push_back(std::max(a.value, b.value));
    }
  }

  if (collisions.empty()) return Threshold::neg_inf();
  return Threshold::finite(*std::max_element(collisions.begin(), collisions.end()));
}

DirectionSet ConditionReport::coupled_directions() const {
  DirectionSet out;
  for (const auto& c : coupled) out.insert(c.omega);
  return out;
}

std::string ConditionReport::failure_message() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < failures.size(); ++i) {
    const auto& u = failures[i];
    if (i > 0) os << "; ";
    os << "uncovered direction ";
    if (u.tau) {
      os << "(" << u.tau->value().real() << ", " << u.tau->value().imag() << ")";
    } else {
      os << "(none)";
    }
    os << ":";
    if (u.candidates.empty()) os << " no exponent directions";
    for (const auto& r : u.candidates) {
      os << " [omega=(" << r.omega.value().real() << ", " << r.omega.value().imag() << ") "
         << r.reason << "]";
    }
  }
  return os.str();
}

ConditionReport check_conditions(const FamilySet& nodes, const FamilySet& exponents,
                                 std::int64_t horizon) {
  nodes.validate_nodes();
  exponents.validate_exponents();

  ConditionReport report;
  report.horizon = horizon;
  const DirectionSet p_m = limit_directions(nodes);
  const DirectionSet p_lambda = limit_directions(exponents);

  struct ThresholdResult {
    std::optional<Threshold> kappa;
    std::string error;
  };
  std::vector<ThresholdResult> thresholds;
  thresholds.reserve(p_lambda.size());
  for (const auto& omega : p_lambda) {
    try {
      thresholds.push_back({line_injectivity_threshold(nodes, omega, horizon), {}});
    } catch (const Error& e) {
      thresholds.push_back({std::nullopt, std::string(error_code_name(e.code())) + ": " + e.what()});
    }
  }

  auto add_coupled = [&report](const Direction& omega, const Threshold& kappa) {
    for (const auto& c : report.coupled) {
      if (c.omega.approx_equal(omega)) return;
    }
    report.coupled.push_back({omega, kappa});
  };

  if (p_m.empty()) {
    report.vacuous = true;
    UncoveredDirection none;
    for (std::size_t w = 0; w < p_lambda.size(); ++w) {
      if (thresholds[w].kappa) {
        add_coupled(p_lambda[w], *thresholds[w].kappa);
      } else {
        none.candidates.push_back({p_lambda[w], thresholds[w].error});
      }
    }
    report.success = !report.coupled.empty();
    if (!report.success) report.failures.push_back(none);
  } else {
    report.success = true;
    for (const auto& tau : p_m) {
      std::optional<std::size_t> best_a;
      std::optional<std::size_t> best_b;
      double best_a_dot = 0.0;
      UncoveredDirection uncovered{tau, {}};
      for (std::size_t w = 0; w < p_lambda.size(); ++w) {
        const Direction& omega = p_lambda[w];
        const double dot = (omega.value() * tau.value()).real();
        std::ostringstream why;
        if (dot < -kOrthogonalTol) {
          why << "Re(s_omega s_tau) = " << dot << " < 0";
          uncovered.candidates.push_back({omega, why.str()});
          continue;
        }
        if (!thresholds[w].kappa) {
          uncovered.candidates.push_back({omega, "line threshold failed: " + thresholds[w].error});
          continue;
        }
        if (dot > kOrthogonalTol) {
          // p_lambda is sorted by angle, so strict improvement keeps the
          // smallest angle on ties.
          if (!best_a || dot > best_a_dot + kOrthogonalTol) {
            best_a = w;
            best_a_dot = dot;
          }
          continue;
        }
        // Case B: every node family heading along tau must have Re(omega mu)
        // tending to +infinity.
        std::string bad;
        for (std::size_t f = 0; f < nodes.families.size(); ++f) {
          const auto& fam = nodes.families[f].family;
          if (!fam.unbounded() || !Direction::normalize(fam.beta).approx_equal(tau)) continue;
          const auto prof = re_profile(fam, omega.value());
          if (prof.kind != ProfileKind::ToPlusInf) {
            bad = "family " + std::to_string(f) + " Re-profile " + prof.describe() +
                  " is not TO_PLUS_INF";
            break;
          }
        }
        if (!bad.empty()) {
          uncovered.candidates.push_back({omega, bad});
          continue;
        }
        if (!best_b) best_b = w;
      }
      if (best_a) {
        report.witnesses.push_back({tau, p_lambda[*best_a], ConditionKind::A, *thresholds[*best_a].kappa});
      } else if (best_b) {
        report.witnesses.push_back({tau, p_lambda[*best_b], ConditionKind::B, *thresholds[*best_b].kappa});
      } else {
        report.success = false;
        report.failures.push_back(std::move(uncovered));
      }
    }
    for (const auto& w : report.witnesses) add_coupled(w.omega, w.kappa);
    std::sort(report.coupled.begin(), report.coupled.end(),
              [](const CoupledDirection& a, const CoupledDirection& b) {
                return a.omega.angle() < b.omega.angle();
              });
  }

  report.special_class =
      report.success && !report.coupled.empty() &&
      std::all_of(report.coupled.begin(), report.coupled.end(),
                  [](const CoupledDirection& c) { return c.kappa.minus_infinity; });
  return report;
}

}  // namespace expinterp
