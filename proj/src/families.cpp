#include "expinterp/families.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <utility>

#include "expinterp/error.hpp"

namespace expinterp {

namespace {

int growth_rank(GrowthTag tag) {
  switch (tag) {
    case GrowthTag::Decay: return 0;
    case GrowthTag::BoundedInc: return 1;
    case GrowthTag::Sqrt: return 2;
    case GrowthTag::Linear: return 3;
    case GrowthTag::Square: return 4;
    case GrowthTag::Geom: return 5;
  }
  return -1;
}

double re_mul(Complex a, Complex b) { return a.real() * b.real() - a.imag() * b.imag(); }

bool negligible(double x, double scale) { return std::abs(x) <= 1e-12 * scale; }

// Re(s * c) in true units, with coefficients below rounding level snapped to 0.
double projected(Complex s, Complex c, bool pi_units) {
  double v = re_mul(s, c);
  if (negligible(v, std::abs(c))) v = 0.0;
  return pi_units ? kPi * v : v;
}

}  // namespace

std::string_view growth_tag_name(GrowthTag tag) {
  switch (tag) {
    case GrowthTag::Decay: return "DECAY";
    case GrowthTag::BoundedInc: return "BOUNDED_INC";
    case GrowthTag::Sqrt: return "SQRT";
    case GrowthTag::Linear: return "LINEAR";
    case GrowthTag::Square: return "SQUARE";
    case GrowthTag::Geom: return "GEOM";
  }
  return "?";
}

std::optional<GrowthTag> parse_growth_tag(std::string_view name) {
  for (auto tag : {GrowthTag::Decay, GrowthTag::BoundedInc, GrowthTag::Sqrt,
                   GrowthTag::Linear, GrowthTag::Square, GrowthTag::Geom}) {
    if (growth_tag_name(tag) == name) return tag;
  }
  return std::nullopt;
}

GrowthFn GrowthFn::geom(double q) {
  if (!(q > 1.0) || !std::isfinite(q)) {
    throw Error(ErrorCode::InvalidArgument, "GEOM growth needs a finite ratio q > 1");
  }
  return {GrowthTag::Geom, q};
}

double GrowthFn::operator()(std::int64_t k) const {
  const auto kd = static_cast<double>(k);
  switch (tag) {
    case GrowthTag::Decay: return std::ldexp(1.0, static_cast<int>(-std::min<std::int64_t>(k, 4096)));
    case GrowthTag::BoundedInc: return 1.0 - std::ldexp(1.0, static_cast<int>(-std::min<std::int64_t>(k, 4096)));
    case GrowthTag::Sqrt: return std::sqrt(kd);
    case GrowthTag::Linear: return kd;
    case GrowthTag::Square: return kd * kd;
    case GrowthTag::Geom: return std::pow(q, kd);
  }
  return 0.0;
}

int compare_growth(const GrowthFn& a, const GrowthFn& b) {
  const int ra = growth_rank(a.tag);
  const int rb = growth_rank(b.tag);
  if (ra != rb) return ra < rb ? -1 : 1;
  if (a.tag == GrowthTag::Geom && a.q != b.q) return a.q < b.q ? -1 : 1;
  return 0;
}

void PointFamily::validate() const {
  if (beta == Complex{}) {
    throw Error(ErrorCode::InvalidArgument, "family needs a nonzero primary coefficient beta");
  }
  for (const auto* g : {&phi, &psi}) {
    if (g->tag == GrowthTag::Geom && (!(g->q > 1.0) || !std::isfinite(g->q))) {
      throw Error(ErrorCode::InvalidArgument, "GEOM growth needs a finite ratio q > 1");
    }
  }
  if (gamma != Complex{} && compare_growth(psi, phi) >= 0) {
    throw Error(ErrorCode::InvalidArgument,
                "secondary growth " + std::string(growth_tag_name(psi.tag)) +
                    " must be strictly dominated by primary growth " +
                    std::string(growth_tag_name(phi.tag)));
  }
  for (auto c : {alpha, beta, gamma}) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw Error(ErrorCode::InvalidArgument, "family coefficients must be finite");
    }
  }
}

Complex PointFamily::point_units(std::int64_t k) const {
  const double f = phi(k);
  double re = alpha.real() + beta.real() * f;
  double im = alpha.imag() + beta.imag() * f;
  if (gamma != Complex{}) {
    const double g = psi(k);
    re += gamma.real() * g;
    im += gamma.imag() * g;
  }
  return {re, im};
}

Complex PointFamily::point(std::int64_t k) const {
  const Complex u = point_units(k);
  return pi_units ? kPi * u : u;
}

Exponent PointFamily::exponent(std::int64_t k) const {
  const Complex u = point_units(k);
  return pi_units ? Exponent::in_pi_units(u) : Exponent::plain(u);
}

std::optional<Complex> PointFamily::finite_limit() const {
  if (!phi.bounded()) return std::nullopt;
  Complex lim = alpha + beta * phi.limit();
  if (gamma != Complex{}) lim += gamma * psi.limit();
  return pi_units ? kPi * lim : lim;
}

PointFamily PointFamily::scaled(Complex u) const {
  PointFamily out = *this;
  out.alpha *= u;
  out.beta *= u;
  out.gamma *= u;
  return out;
}

std::string_view profile_kind_name(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::ToPlusInf: return "TO_PLUS_INF";
    case ProfileKind::ToMinusInf: return "TO_MINUS_INF";
    case ProfileKind::FiniteLimit: return "FINITE_LIMIT";
    case ProfileKind::Constant: return "CONSTANT";
  }
  return "?";
}

std::string GrowthProfile::describe() const {
  std::ostringstream os;
  os << profile_kind_name(kind);
  if (kind == ProfileKind::FiniteLimit || kind == ProfileKind::Constant) {
    os << '(' << value << ')';
  }
  return os.str();
}

namespace {

// Re(s*point(k)) = c + a*phi(k) + g*psi(k) for bounded pieces reduces to
// c0 + c1 * 2^{-k}.
GrowthProfile bounded_profile(double c, double a, const GrowthFn& phi, double g,
                              const GrowthFn& psi) {
  double c0 = c;
  double c1 = 0.0;
  auto absorb = [&](double coef, const GrowthFn& fn) {
    if (coef == 0.0) return;
    if (fn.tag == GrowthTag::BoundedInc) {
      c0 += coef;
      c1 -= coef;
    } else {
      c1 += coef;
    }
  };
  absorb(a, phi);
  absorb(g, psi);
  GrowthProfile p;
  if (negligible(c1, std::abs(a) + std::abs(g))) {
    p.kind = ProfileKind::Constant;
    p.value = c0;
    return p;
  }
  p.kind = ProfileKind::FiniteLimit;
  p.value = c0;
  p.monotone = true;
  p.monotone_from_start = true;
  p.increasing = c1 < 0.0;
  return p;
}

}  // namespace

GrowthProfile re_profile(const PointFamily& family, Complex s) {
  const double c = projected(s, family.alpha, family.pi_units);
  const double a = projected(s, family.beta, family.pi_units);
  const double g = family.gamma == Complex{} ? 0.0 : projected(s, family.gamma, family.pi_units);

  GrowthProfile p;
  if (a != 0.0 && !family.phi.bounded()) {
    p.kind = a > 0.0 ? ProfileKind::ToPlusInf : ProfileKind::ToMinusInf;
    p.monotone = true;
    p.increasing = a > 0.0;
    return p;
  }
  if (!family.phi.bounded()) {
    // Leading term vanishes in this direction; the secondary term decides.
    if (g != 0.0 && !family.psi.bounded()) {
      p.kind = g > 0.0 ? ProfileKind::ToPlusInf : ProfileKind::ToMinusInf;
      p.monotone = true;
      p.increasing = g > 0.0;
      return p;
    }
    return bounded_profile(c, 0.0, family.phi, g, family.psi);
  }
  return bounded_profile(c, a, family.phi, g, family.psi);
}

bool ProjectionExpansion::approx_equal(const ProjectionExpansion& o, double rel_tol) const {
  auto eq = [rel_tol](double x, double y) {
    return std::abs(x - y) <= rel_tol * std::max({1.0, std::abs(x), std::abs(y)});
  };
  if (!eq(constant, o.constant) || !eq(decay, o.decay) || !eq(sqrt, o.sqrt) ||
      !eq(linear, o.linear) || !eq(square, o.square)) {
    return false;
  }
  auto coef = [](const std::vector<std::pair<double, double>>& terms, double q) {
    double total = 0.0;
    for (const auto& [tq, tc] : terms) {
      if (tq == q) total += tc;
    }
    return total;
  };
  for (const auto& [q, c] : geom) {
    if (!eq(c, coef(o.geom, q))) return false;
  }
  for (const auto& [q, c] : o.geom) {
    if (!eq(c, coef(geom, q))) return false;
  }
  return true;
}

ProjectionExpansion projection_expansion(const PointFamily& family, Complex s) {
  ProjectionExpansion e;
  e.constant = projected(s, family.alpha, family.pi_units);
  auto add = [&e](double coef, const GrowthFn& fn) {
    if (coef == 0.0) return;
    switch (fn.tag) {
      case GrowthTag::Decay: e.decay += coef; break;
      case GrowthTag::BoundedInc:
        e.constant += coef;
        e.decay -= coef;
        break;
      case GrowthTag::Sqrt: e.sqrt += coef; break;
      case GrowthTag::Linear: e.linear += coef; break;
      case GrowthTag::Square: e.square += coef; break;
      case GrowthTag::Geom: e.geom.emplace_back(fn.q, coef); break;
    }
  };
  add(projected(s, family.beta, family.pi_units), family.phi);
  if (family.gamma != Complex{}) add(projected(s, family.gamma, family.pi_units), family.psi);
  return e;
}

void FamilySet::validate_nodes() const {
  for (const auto& f : families) {
    f.family.validate();
    if (f.multiplicity < 1) throw Error(ErrorCode::InvalidArgument, "multiplicity must be >= 1");
  }
  for (const auto& p : sporadic) {
    if (p.multiplicity < 1) throw Error(ErrorCode::InvalidArgument, "multiplicity must be >= 1");
    if (!std::isfinite(p.point.real()) || !std::isfinite(p.point.imag())) {
      throw Error(ErrorCode::InvalidArgument, "sporadic points must be finite");
    }
  }
}

void FamilySet::validate_exponents() const {
  validate_nodes();
  bool any_unbounded = false;
  for (const auto& f : families) {
    if (f.multiplicity != 1) {
      throw Error(ErrorCode::InvalidArgument, "exponent sets carry multiplicity 1");
    }
    any_unbounded = any_unbounded || f.family.unbounded();
  }
  for (const auto& p : sporadic) {
    if (p.multiplicity != 1) {
      throw Error(ErrorCode::InvalidArgument, "exponent sets carry multiplicity 1");
    }
  }
  if (!any_unbounded) {
    throw Error(ErrorCode::InvalidArgument, "exponent set needs at least one unbounded family");
  }
}

std::int64_t family_horizon(const PointFamily& family, std::int64_t horizon) {
  const auto limit = family.finite_limit();
  Complex prev{};
  for (std::int64_t k = 1; k <= horizon; ++k) {
    const Complex p = family.point(k);
    if (!std::isfinite(p.real()) || !std::isfinite(p.imag())) return k - 1;
    if (k > 1 && p == prev) return k - 1;
    // Points within rounding of the limit are no longer distinct nodes.
    if (limit && std::abs(p - *limit) <= 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(*limit)))
      return k - 1;
    prev = p;
  }
  return horizon;
}

std::vector<EnumeratedPoint> enumerate(const FamilySet& set, std::int64_t horizon) {
  if (horizon < 1) throw Error(ErrorCode::InvalidArgument, "horizon must be >= 1");
  std::vector<EnumeratedPoint> out;
  std::set<std::pair<double, double>> seen;
  auto push = [&](EnumeratedPoint ep) {
    if (!seen.emplace(ep.point.real(), ep.point.imag()).second) {
      std::ostringstream os;
      os << "duplicate point (" << ep.point.real() << ", " << ep.point.imag() << ")";
      throw Error(ErrorCode::DuplicatePoint, os.str());
    }
    out.push_back(ep);
  };
  for (std::size_t i = 0; i < set.sporadic.size(); ++i) {
    push({set.sporadic[i].point, set.sporadic[i].multiplicity, -1, static_cast<std::int64_t>(i)});
  }
  std::vector<std::int64_t> limits;
  limits.reserve(set.families.size());
  for (const auto& f : set.families) limits.push_back(family_horizon(f.family, horizon));
  for (std::int64_t k = 1; k <= horizon; ++k) {
    for (std::size_t f = 0; f < set.families.size(); ++f) {
      if (k > limits[f]) continue;
      push({set.families[f].family.point(k), set.families[f].multiplicity, static_cast<int>(f), k});
    }
  }
  return out;
}

}  // namespace expinterp
