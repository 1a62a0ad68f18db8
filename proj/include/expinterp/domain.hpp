#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "expinterp/expsum.hpp"
#include "expinterp/geometry.hpp"

namespace expinterp {

enum class DomainKind { WholePlane, HalfPlane };

/// Abel convergence domain: the plane, or { z : Re(omega z) < abscissa }.
struct ConvergenceDomain {
  DomainKind kind = DomainKind::WholePlane;
  Direction omega = Direction::from_angle(0.0);
  double abscissa = 0.0;  // HALF_PLANE only
  /// Some node attains the supremum (HALF_PLANE only).
  bool attained = false;

  bool contains(Complex z) const {
    return kind == DomainKind::WholePlane || (omega.value() * z).real() < abscissa;
  }
};

/// d(omega, M) = sup Re(omega mu_k), decided from the family profiles.
ConvergenceDomain convergence_domain(const FamilySet& nodes, const Direction& omega,
                                     std::int64_t horizon = 512);

enum class VerdictCase { Plane, HalfPlane, Domain };

std::string_view verdict_case_name(VerdictCase c);

struct Clause {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Verdict {
  bool soluble = false;
  VerdictCase verdict_case = VerdictCase::Plane;
  std::vector<Clause> clauses;
  /// A limit point sits on the boundary of Pi, where the domain criterion is
  /// ambiguous.
  bool ambiguous_boundary = false;

  void finish();
};

/// Single-direction criterion. Throws PreconditionMultidirection unless
/// P(Lambda) has exactly one direction. The special-class line condition is
/// reported as a clause.
Verdict theorem2_verdict(const FamilySet& nodes, const FamilySet& exponents,
                         const ConditionReport& report);

/// Multi-direction criterion: conditions (A)/(B) hold and the defect is zero.
Verdict defect_verdict(const ConditionReport& report, std::optional<std::size_t> defect);

enum class RegionKind { WholePlane, Disk, HalfPlane };

/// Domain D for the interpolation-in-a-domain test.
struct Region {
  RegionKind kind = RegionKind::WholePlane;
  Complex center{};   // disk
  double radius = 0.0;
  Direction omega = Direction::from_angle(0.0);  // half-plane Re(omega z) < c
  double offset = 0.0;

  bool contains(Complex z) const;
  bool in_closure(Complex z) const;
  bool on_boundary(Complex z, double tol = 1e-12) const;
};

/// Requires every enumerated node inside `region` (NodeOutsideDomain
/// otherwise); finite limit points must lie on the boundary of the region and
/// strictly inside Pi, on top of the single-direction clauses.
Verdict corollary_verdict(const Region& region, const FamilySet& nodes, const FamilySet& exponents,
                          const ConditionReport& report);

/// Termwise domination |c_n e^{lambda_n z}| <= |c_n e^{lambda_n mu}| for every
/// sample. Exponents must lie on the ray through omega (ExponentsNotOnRay);
/// samples beyond the Abel half-plane of mu are rejected (InvalidArgument).
bool abel_check(const ExpSum& u, const Direction& omega, Complex mu, std::span<const Complex> samples);

}  // namespace expinterp
