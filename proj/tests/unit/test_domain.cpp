#include <cmath>

#include "doctest.h"
#include "expinterp/domain.hpp"
#include "expinterp/error.hpp"
#include "../support/oracles.hpp"

using namespace expinterp;

namespace {

const Direction kOne = Direction::from_angle(0.0);

FamilySet one(PointFamily f) { return FamilySet{{{f, 1}}, {}}; }

const PointFamily kLinear{};
const PointFamily kVertical{0.0, Complex{0, 1}, GrowthFn::linear(), 0.0, GrowthFn::decay(), false};
const PointFamily kToOne{0.0, 1.0, GrowthFn::bounded_inc(), 0.0, GrowthFn::decay(), false};
// (1 - 2^{-k}) + i 2^{-k} = 1 + (-1 + i) 2^{-k}
const PointFamily kSlanted{1.0, Complex{-1, 1}, GrowthFn::decay(), 0.0, GrowthFn::decay(), false};

bool clause_passes(const Verdict& v, std::string_view prefix) {
  for (const auto& c : v.clauses) {
    if (c.name.rfind(prefix, 0) == 0) return c.pass;
  }
  FAIL("missing clause");
  return false;
}

// Profile oracle for the slanted family: sampled projections approach 1 from below.
void slanted_oracle() {
  double prev = -1.0;
  for (int k = 1; k <= 52; ++k) {
    const double re = 1.0 - std::ldexp(1.0, -k);
    CHECK(re < 1.0);
    CHECK(re > prev);
    prev = re;
  }
  CHECK(1.0 - prev < 1e-15);
}

}  // namespace

TEST_SUITE("domain") {
  TEST_CASE("convergence domains") {
    CHECK(convergence_domain(one(kLinear), kOne).kind == DomainKind::WholePlane);
    const auto h = convergence_domain(one(kToOne), kOne);
    CHECK(h.kind == DomainKind::HalfPlane);
    CHECK(h.abscissa == 1.0);
    CHECK_FALSE(h.attained);
    FamilySet s = one(kToOne);
    s.sporadic.push_back({Complex{2, 0}, 1});
    const auto h2 = convergence_domain(s, kOne);
    CHECK(h2.abscissa == 2.0);
    CHECK(h2.attained);
    CHECK_THROWS_AS(convergence_domain(FamilySet{}, kOne), Error);
  }

  TEST_CASE("property: adding nodes never lowers the abscissa") {
    oracle::Gen g(61);
    for (int trial = 0; trial < 200; ++trial) {
      FamilySet s = one(kToOne);
      const Direction w = Direction::from_angle(g.uniform(0.0, 2 * kPi));
      double prev = -1e300;
      for (int i = 0; i < 5; ++i) {
        const auto d = convergence_domain(s, w);
        if (d.kind == DomainKind::WholePlane) break;
        CHECK(d.abscissa >= prev);
        prev = d.abscissa;
        s.sporadic.push_back({g.complex(4.0), 1});
      }
      s.families.push_back({PointFamily{g.complex(1.0), -std::conj(w.value()), GrowthFn::linear(), 0.0,
                                        GrowthFn::decay(), false}, 1});
      CHECK(convergence_domain(s, w).kind == DomainKind::HalfPlane);
      s.families.push_back({PointFamily{0.0, std::conj(w.value()), GrowthFn::linear(), 0.0, GrowthFn::decay(), false}, 1});
      CHECK(convergence_domain(s, w).kind == DomainKind::WholePlane);
    }
  }

  TEST_CASE("single-direction verdicts") {
    const FamilySet lambda = one(kLinear);
    const auto plane = theorem2_verdict(one(kLinear), lambda, check_conditions(one(kLinear), lambda, 512));
    CHECK(plane.soluble);
    CHECK(plane.verdict_case == VerdictCase::Plane);

    const auto vert = theorem2_verdict(one(kVertical), lambda, check_conditions(one(kVertical), lambda, 512));
    CHECK_FALSE(vert.soluble);

    slanted_oracle();
    const auto half = theorem2_verdict(one(kSlanted), lambda, check_conditions(one(kSlanted), lambda, 512));
    CHECK(half.soluble);
    CHECK(half.verdict_case == VerdictCase::HalfPlane);
    for (const auto& c : half.clauses) CHECK(c.pass);

    FamilySet two = lambda;
    two.families.push_back({kVertical, 1});
    CHECK_THROWS_AS(theorem2_verdict(one(kLinear), two, check_conditions(one(kLinear), two, 512)), Error);
  }

  TEST_CASE("bounded-domain verdicts") {
    const FamilySet lambda = one(kLinear);
    const auto rep = check_conditions(one(kToOne), lambda, 512);

    Region big{RegionKind::Disk, 0.0, 2.0};
    const auto v1 = corollary_verdict(big, one(kToOne), lambda, rep);
    CHECK_FALSE(v1.soluble);
    CHECK(v1.verdict_case == VerdictCase::Domain);

    Region tight{RegionKind::Disk, 0.5, 0.5};
    const auto v2 = corollary_verdict(tight, one(kToOne), lambda, rep);
    CHECK_FALSE(v2.soluble);
    CHECK(v2.ambiguous_boundary);

    Region hp{RegionKind::HalfPlane, 0.0, 0.0, kOne, 1.0};
    const auto rs = check_conditions(one(kSlanted), lambda, 512);
    const auto v3 = corollary_verdict(hp, one(kSlanted), lambda, rs);
    CHECK_FALSE(v3.soluble);
    CHECK(v3.ambiguous_boundary);

    Region small{RegionKind::Disk, 0.0, 0.5};
    CHECK_THROWS_AS(corollary_verdict(small, one(kToOne), lambda, rep), Error);
  }

  TEST_CASE("whole-plane domain verdict matches the single-direction clauses") {
    const FamilySet lambda = one(kLinear);
    for (const auto& f : {kLinear, kVertical, kSlanted, kToOne}) {
      const auto rep = check_conditions(one(f), lambda, 512);
      const auto a = theorem2_verdict(one(f), lambda, rep);
      const auto b = corollary_verdict(Region{}, one(f), lambda, rep);
      CHECK(a.soluble == b.soluble);
      for (const auto& c : a.clauses) {
        bool found = false;
        for (const auto& d : b.clauses) {
          if (d.name == c.name) {
            found = true;
            CHECK(d.pass == c.pass);
          }
        }
        CHECK(found);
      }
    }
  }

  TEST_CASE("abel check") {
    const ExpSum u({{Exponent::plain(1.0), 1.0}, {Exponent::plain(4.0), Complex{0, 2}}}, 0.5);
    const Complex at_mu[] = {1.0};
    CHECK(abel_check(u, kOne, 1.0, at_mu));
    const Complex zero[] = {0.0, Complex{-3, 7}};
    CHECK(abel_check(u, kOne, 1.0, zero));
    const Complex beyond[] = {2.0};
    CHECK_THROWS_AS(abel_check(u, kOne, 1.0, beyond), Error);
    const ExpSum off({{Exponent::plain(Complex{0, 1}), 1.0}}, 0.0);
    CHECK_THROWS_AS(abel_check(off, kOne, 1.0, at_mu), Error);
    // Termwise: for real exponents the domination is e^{t x} <= e^{t mu}.
    oracle::Gen g(62);
    for (int i = 0; i < 200; ++i) {
      const Complex z{g.uniform(-5.0, 1.0), g.uniform(-5.0, 5.0)};
      const Complex pts[] = {z};
      CHECK(abel_check(u, kOne, 1.0, pts) == (std::exp(z.real()) <= std::exp(1.0)));
    }
  }
}
