#include <cmath>

#include "doctest.h"
#include "expinterp/error.hpp"
#include "expinterp/geometry.hpp"
#include "../support/oracles.hpp"

using namespace expinterp;

namespace {

PointFamily fam(Complex beta, GrowthFn phi = GrowthFn::linear(), Complex gamma = 0.0,
                GrowthFn psi = GrowthFn::decay(), Complex alpha = 0.0) {
  return {alpha, beta, phi, gamma, psi, false};
}

FamilySet set_of(std::initializer_list<PointFamily> fs) {
  FamilySet s;
  for (const auto& f : fs) s.families.push_back({f, 1});
  return s;
}

const Direction kOne = Direction::from_angle(0.0);
const Direction kI = Direction::from_angle(kPi / 2);

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("directions") {
    CHECK(kI.value() == Complex{0, 1});
    CHECK(Direction::normalize({3, 4}).value() == Complex{0.6, 0.8});
    CHECK(Direction::from_angle(kPi).value() == Complex{-1, 0});
    DirectionSet s;
    CHECK(s.insert(kOne));
    CHECK_FALSE(s.insert(Direction::normalize({1, 1e-12})));
    CHECK(s.size() == 1);
  }

  TEST_CASE("limit directions of the catalog examples") {
    auto a = limit_directions(set_of({fam(1.0)}));
    REQUIRE(a.size() == 1);
    CHECK(a[0].approx_equal(kOne));

    auto b = limit_directions(set_of({fam({0, 1}), fam(1.0)}));
    CHECK(b.size() == 2);
    CHECK(b.contains(kOne));
    CHECK(b.contains(kI));

    FamilySet with_bounded = set_of({fam(1.0, GrowthFn::bounded_inc())});
    with_bounded.sporadic.push_back({Complex{5, 5}, 1});
    CHECK(limit_directions(with_bounded).empty());
  }

  TEST_CASE("limit direction of i k^2 + k against sampled quotients") {
    const PointFamily f = fam({0, 1}, GrowthFn::square(), 1.0, GrowthFn::linear());
    auto dirs = limit_directions(set_of({f}));
    REQUIRE(dirs.size() == 1);
    double prev = 1.0;
    for (double k : {1e3, 1e4, 1e5}) {
      const oracle::C mu{k, k * k};
      const double dist = std::abs(mu / std::abs(mu) - dirs[0].value());
      CHECK(dist < 1e-2);
      CHECK(dist < prev);
      prev = dist;
    }
  }

  TEST_CASE("line injectivity thresholds") {
    CHECK(line_injectivity_threshold(set_of({fam(1.0)}), kOne, 512).minus_infinity);

    const auto twin = set_of({fam(1.0), fam(1.0, GrowthFn::linear(), 0.0, GrowthFn::decay(), {0, 1})});
    CHECK_THROWS_AS(line_injectivity_threshold(twin, kOne, 512), Error);
    try {
      line_injectivity_threshold(twin, kOne, 512);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Unsatisfiable);
    }

    const auto squares = set_of({fam(1.0), fam(1.0, GrowthFn::square(), 0.0, GrowthFn::decay(), {0, 1})});
    const auto t = line_injectivity_threshold(squares, kOne, 200);
    REQUIRE_FALSE(t.minus_infinity);
    CHECK(t.value == oracle::square_collision_threshold(200));
  }

  TEST_CASE("sporadic and constant collisions") {
    FamilySet s = set_of({fam(1.0)});
    s.sporadic.push_back({Complex{3, 2}, 1});
    const auto t = line_injectivity_threshold(s, kOne, 64);
    REQUIRE_FALSE(t.minus_infinity);
    CHECK(t.value == 3.0);
  }

  TEST_CASE("check_conditions: kind A witness") {
    auto r = check_conditions(set_of({fam(1.0)}), set_of({fam(1.0)}), 512);
    REQUIRE(r.success);
    REQUIRE(r.witnesses.size() == 1);
    CHECK(r.witnesses[0].kind == ConditionKind::A);
    CHECK(r.witnesses[0].tau.approx_equal(kOne));
    CHECK(r.witnesses[0].omega.approx_equal(kOne));
    CHECK(r.special_class);
  }

  TEST_CASE("check_conditions: kind B witness") {
    auto r = check_conditions(set_of({fam({0, 1}, GrowthFn::linear(), 1.0, GrowthFn::sqrt())}),
                              set_of({fam(1.0)}), 512);
    REQUIRE(r.success);
    REQUIRE(r.witnesses.size() == 1);
    CHECK(r.witnesses[0].kind == ConditionKind::B);
  }

  TEST_CASE("check_conditions: constant projection fails") {
    auto r = check_conditions(set_of({fam({0, 1})}), set_of({fam(1.0)}), 512);
    CHECK_FALSE(r.success);
    REQUIRE(r.failures.size() == 1);
    REQUIRE(r.failures[0].tau.has_value());
    CHECK(r.failures[0].tau->approx_equal(kI));
    CHECK(r.failure_message().find("CONSTANT(0)") != std::string::npos);
  }

  TEST_CASE("A preferred over B") {
    // tau = i; omega = -i gives A, omega = 1 gives B.
    auto r = check_conditions(set_of({fam({0, 1}, GrowthFn::linear(), 1.0, GrowthFn::sqrt())}),
                              set_of({fam(1.0), fam({0, -1})}), 512);
    REQUIRE(r.success);
    CHECK(r.witnesses[0].kind == ConditionKind::A);
    CHECK(r.witnesses[0].omega.approx_equal(Direction::normalize(Complex{0, -1})));
  }

  TEST_CASE("property: rotation equivariance of limit directions") {
    oracle::Gen g(21);
    for (int trial = 0; trial < 200; ++trial) {
      FamilySet s;
      for (int i = 0; i < g.integer(1, 3); ++i) {
        s.families.push_back({fam(std::polar(g.uniform(0.5, 3.0), g.uniform(0.0, 2 * kPi))), 1});
      }
      const Complex u = std::polar(1.0, g.uniform(0.0, 2 * kPi));
      FamilySet rotated = s;
      FamilySet stretched = s;
      for (auto& e : rotated.families) e.family = e.family.scaled(u);
      for (auto& e : stretched.families) e.family = e.family.scaled(g.uniform(0.5, 4.0));
      const auto a = limit_directions(s);
      const auto b = limit_directions(rotated);
      const auto c = limit_directions(stretched);
      REQUIRE(a.size() == b.size());
      REQUIRE(a.size() == c.size());
      for (const auto& d : a) {
        CHECK(b.contains(Direction::normalize(d.value() * u)));
        CHECK(c.contains(d));
      }
    }
  }

  TEST_CASE("property: witnesses verify on enumeration and special class means -inf") {
    oracle::Gen g(22);
    const GrowthFn growth[] = {GrowthFn::sqrt(), GrowthFn::linear(), GrowthFn::square()};
    const Complex axis[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    int verified = 0;
    for (int trial = 0; trial < 150; ++trial) {
      FamilySet m;
      for (int i = 0; i < g.integer(1, 2); ++i) {
        m.families.push_back({fam(axis[g.integer(0, 3)], growth[g.integer(0, 2)],
                                  g.coin() ? Complex{g.uniform(-2, 2), 0} : Complex{}, GrowthFn::decay(),
                                  Complex{static_cast<double>(g.integer(-3, 3)), static_cast<double>(g.integer(-3, 3))}),
                              1});
      }
      if (g.coin()) m.sporadic.push_back({Complex{static_cast<double>(g.integer(-4, 4)), 0.5}, 1});
      FamilySet lambda = set_of({fam(1.0)});
      if (g.coin()) lambda.families.push_back({fam({0, 1}), 1});
      ConditionReport r;
      try {
        r = check_conditions(m, lambda, 128);
      } catch (const Error&) {
        continue;
      }
      if (!r.success) continue;
      // Decaying offsets stay resolvable in double up to k = 48.
      const auto pts = enumerate(m, 48);
      for (const auto& w : r.witnesses) {
        std::vector<double> proj;
        for (const auto& p : pts) {
          const double x = (w.omega.value() * p.point).real();
          if (w.kappa.above(x)) proj.push_back(x);
        }
        std::sort(proj.begin(), proj.end());
        for (std::size_t i = 1; i < proj.size(); ++i) CHECK(proj[i] > proj[i - 1]);
        ++verified;
      }
      if (r.special_class) {
        for (const auto& c : r.coupled) CHECK(line_injectivity_threshold(m, c.omega, 128).minus_infinity);
      }
      // Enlarging P(Lambda) keeps success.
      FamilySet bigger = lambda;
      bigger.families.push_back({fam(std::polar(1.0, g.uniform(0.0, 2 * kPi))), 1});
      CHECK(check_conditions(m, bigger, 128).success);
    }
    CHECK(verified > 20);
  }
}
