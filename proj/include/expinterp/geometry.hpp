#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "expinterp/families.hpp"

namespace expinterp {

inline constexpr double kDirectionTol = 1e-9;
/// |Re(s_omega s_tau)| at or below this is the orthogonal case (B).
inline constexpr double kOrthogonalTol = kDirectionTol;

/// Unit complex number s = e^{i tau}.
class Direction {
 public:
  static Direction normalize(Complex v);
  /// Exact at multiples of pi/2.
  static Direction from_angle(double angle);

  Complex value() const { return value_; }
  /// Angle in [0, 2 pi).
  double angle() const;
  bool approx_equal(const Direction& other, double tol = kDirectionTol) const {
    return std::abs(value_ - other.value_) <= tol;
  }

 private:
  explicit Direction(Complex v) : value_(v) {}
  Complex value_;
};

/// Finite set of directions, deduplicated under kDirectionTol, kept sorted by
/// angle.
class DirectionSet {
 public:
  /// Returns false when an equal direction is already present.
  bool insert(const Direction& d);
  bool contains(const Direction& d) const;

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const Direction& operator[](std::size_t i) const { return items_[i]; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

 private:
  std::vector<Direction> items_;
};

/// Threshold kappa for line injectivity. The minus-infinity case is a tag,
/// never a floating-point infinity.
struct Threshold {
  bool minus_infinity = true;
  double value = 0.0;

  static Threshold neg_inf() { return {true, 0.0}; }
  static Threshold finite(double v) { return {false, v}; }

  /// Re-projection x lies strictly above kappa.
  bool above(double x) const { return minus_infinity || x > value; }
  std::string describe() const;

  friend bool operator==(const Threshold& a, const Threshold& b) {
    return a.minus_infinity == b.minus_infinity && (a.minus_infinity || a.value == b.value);
  }
};

/// P(X): normalized leading coefficients of the unbounded families.
DirectionSet limit_directions(const FamilySet& set);

/// Smallest kappa such that every line Re(omega z) = c with c > kappa holds at
/// most one node. Enumerated collisions fix kappa; catalog asymptotics certify
/// the tails. Throws Unsatisfiable when two families share the same
/// projection sequence heading to +infinity, HorizonTooSmall when an unbounded
/// projection is not yet monotone on [K/2, K].
Threshold line_injectivity_threshold(const FamilySet& nodes, const Direction& omega,
                                     std::int64_t horizon);

enum class ConditionKind { A, B };

struct ConditionWitness {
  Direction tau;
  Direction omega;
  ConditionKind kind;
  Threshold kappa;
};

struct CoupledDirection {
  Direction omega;
  Threshold kappa;
};

struct Rejection {
  Direction omega;
  std::string reason;
};

struct UncoveredDirection {
  std::optional<Direction> tau;  // empty when nodes have no limit direction
  std::vector<Rejection> candidates;
};

struct ConditionReport {
  bool success = false;
  /// P(M) is empty, so conditions (A)/(B) hold vacuously and every usable
  /// direction of P(Lambda) is coupled.
  bool vacuous = false;
  std::vector<ConditionWitness> witnesses;
  std::vector<CoupledDirection> coupled;
  bool special_class = false;
  std::vector<UncoveredDirection> failures;
  std::int64_t horizon = 0;

  DirectionSet coupled_directions() const;
  std::string failure_message() const;
};

ConditionReport check_conditions(const FamilySet& nodes, const FamilySet& exponents,
                                 std::int64_t horizon);

}  // namespace expinterp
