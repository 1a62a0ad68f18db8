#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "expinterp/numeric.hpp"

namespace expinterp {

/// Growth catalog for the index maps k -> phi(k), k >= 1.
enum class GrowthTag {
  Decay,       // 2^{-k}
  BoundedInc,  // 1 - 2^{-k}
  Sqrt,        // sqrt(k)
  Linear,      // k
  Square,      // k^2
  Geom,        // q^k, q > 1
};

std::string_view growth_tag_name(GrowthTag tag);
std::optional<GrowthTag> parse_growth_tag(std::string_view name);

struct GrowthFn {
  GrowthTag tag = GrowthTag::Linear;
  double q = 0.0;  // GEOM only

  static GrowthFn decay() { return {GrowthTag::Decay, 0.0}; }
  static GrowthFn bounded_inc() { return {GrowthTag::BoundedInc, 0.0}; }
  static GrowthFn sqrt() { return {GrowthTag::Sqrt, 0.0}; }
  static GrowthFn linear() { return {GrowthTag::Linear, 0.0}; }
  static GrowthFn square() { return {GrowthTag::Square, 0.0}; }
  static GrowthFn geom(double q);

  double operator()(std::int64_t k) const;

  bool bounded() const {
    return tag == GrowthTag::Decay || tag == GrowthTag::BoundedInc;
  }
  /// Limit as k -> infinity; bounded tags only.
  double limit() const { return tag == GrowthTag::BoundedInc ? 1.0 : 0.0; }
  bool increasing() const { return tag != GrowthTag::Decay; }

  friend bool operator==(const GrowthFn& a, const GrowthFn& b) {
    return a.tag == b.tag && (a.tag != GrowthTag::Geom || a.q == b.q);
  }
};

/// Order of eventual domination: negative if a = o(b), zero if same class.
/// DECAY < BOUNDED_INC < SQRT < LINEAR < SQUARE < GEOM(q) ordered by q.
int compare_growth(const GrowthFn& a, const GrowthFn& b);

/// point(k) = alpha + beta*phi(k) + gamma*psi(k) for k = 1, 2, ...
/// With pi_units the three coefficients are multiples of pi.
struct PointFamily {
  Complex alpha{};
  Complex beta{1.0, 0.0};
  GrowthFn phi = GrowthFn::linear();
  Complex gamma{};
  GrowthFn psi = GrowthFn::decay();
  bool pi_units = false;

  /// Throws InvalidArgument when beta is zero, q <= 1, or psi does not stay
  /// strictly below phi.
  void validate() const;

  /// Value in the declared units (divide-by-pi form when pi_units).
  Complex point_units(std::int64_t k) const;
  Complex point(std::int64_t k) const;
  Exponent exponent(std::int64_t k) const;

  bool unbounded() const { return !phi.bounded(); }
  Complex direction() const { return beta / std::abs(beta); }
  /// Finite limit point for convergent families.
  std::optional<Complex> finite_limit() const;

  /// Scale every coefficient by u.
  PointFamily scaled(Complex u) const;
};

enum class ProfileKind { ToPlusInf, ToMinusInf, FiniteLimit, Constant };

std::string_view profile_kind_name(ProfileKind kind);

/// Asymptotic class of k -> Re(s * point(k)).
struct GrowthProfile {
  ProfileKind kind = ProfileKind::Constant;
  double value = 0.0;  // FINITE_LIMIT / CONSTANT
  bool monotone = false;  // eventually strictly monotone
  bool increasing = false;
  /// For bounded families the projection is exactly c0 + c1*2^{-k}, strictly
  /// monotone from k = 1 whenever c1 != 0.
  bool monotone_from_start = false;

  std::string describe() const;
};

GrowthProfile re_profile(const PointFamily& family, Complex s);

/// Canonical expansion of Re(s * point(k)) keyed by growth class.
struct ProjectionExpansion {
  double constant = 0.0;
  double decay = 0.0;  // coefficient of 2^{-k}
  double sqrt = 0.0;
  double linear = 0.0;
  double square = 0.0;
  std::vector<std::pair<double, double>> geom;  // (q, coefficient)

  bool approx_equal(const ProjectionExpansion& other, double rel_tol) const;
};

ProjectionExpansion projection_expansion(const PointFamily& family, Complex s);

struct FamilyEntry {
  PointFamily family;
  int multiplicity = 1;
};

struct SporadicPoint {
  Complex point{};
  int multiplicity = 1;
};

struct FamilySet {
  std::vector<FamilyEntry> families;
  std::vector<SporadicPoint> sporadic;

  void validate_nodes() const;
  /// Exponent sets need at least one unbounded family and multiplicity 1.
  void validate_exponents() const;
};

struct EnumeratedPoint {
  Complex point{};
  int multiplicity = 1;
  /// -1 for sporadic points.
  int family = -1;
  /// Family index k (1-based) or sporadic position.
  std::int64_t index = 0;
};

/// Sporadic points first, then families round-robin by index. A family stops
/// early at the first index whose point is non-finite or repeats its
/// predecessor in binary64.
std::vector<EnumeratedPoint> enumerate(const FamilySet& set, std::int64_t horizon);

/// Last index k <= horizon that a family contributes to enumerate().
std::int64_t family_horizon(const PointFamily& family, std::int64_t horizon);

}  // namespace expinterp
