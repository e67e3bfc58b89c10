#include <doctest.h>

#include <cmath>

#include "ccfom/catalog.hpp"
#include "ccfom/simplex_lp.hpp"
#include "support.hpp"

using namespace ccfom;
using testing_support::Gen;

namespace {

Vector vec(std::initializer_list<double> v) { return Point(v).coords(); }

double finite(const ExtendedReal& v) {
  REQUIRE(v.is_finite());
  return v.value();
}

}  // namespace

TEST_CASE("extended reals") {
  CHECK(to_string(ExtendedReal::plus_infinity()) == "+inf");
  CHECK((-ExtendedReal::plus_infinity()).is_minus_infinity());
  CHECK((ExtendedReal::finite(1.5) + 2.0).value() == 3.5);
  CHECK_THROWS_AS(ExtendedReal::plus_infinity() + ExtendedReal::minus_infinity(), Error);
  CHECK_THROWS_AS(ExtendedReal::finite(NAN), Error);
  CHECK_THROWS_AS(ExtendedReal::plus_infinity().value(), Error);
}

TEST_CASE("points and vector parsing") {
  CHECK_THROWS_AS(Point(Vector(0)), Error);
  CHECK_THROWS_AS(Point({1.0, INFINITY}), Error);
  CHECK(format_point(vec({0.1, -2})) == "0.10000000000000001,-2");
  CHECK(parse_vector("0.10000000000000001,-2") == vec({0.1, -2}));
  CHECK(parse_vector("1  2", ' ') == vec({1, 2}));
  CHECK_THROWS_AS(parse_vector("1,,2"), Error);
  CHECK_THROWS_AS(parse_vector("1,x"), Error);
}

TEST_CASE("fenchel gap examples") {
  const ProblemInstance sq = make_problem("quad:diag=1");
  CHECK(finite(fenchel_gap(sq, vec({3}), vec({1}))) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(finite(fenchel_gap(sq, vec({2}), vec({2}))) == 0.0);

  const ProblemInstance abs = make_problem("norm:G=1:dim=1");
  CHECK(finite(fenchel_gap(abs, vec({0.5}), vec({2}))) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(fenchel_gap(abs, vec({1.5}), vec({2})).is_plus_infinity());
  CHECK_THROWS_AS(fenchel_gap(abs, vec({0.5, 0}), vec({2})), Error);
}

TEST_CASE("quadratic family") {
  SUBCASE("identity") {
    const ProblemInstance p = make_quadratic(Matrix::Identity(1, 1), Vector::Zero(1));
    CHECK(p.value(vec({3})) == 4.5);
    CHECK(finite(p.conjugate(vec({-2}))) == 2.0);
    CHECK(*p.lipschitz_grad() == 1.0);
    CHECK(*p.optimal_value() == 0.0);
  }
  SUBCASE("diag(1,10)") {
    const ProblemInstance p = make_problem("quad:diag=1,10");
    CHECK(*p.lipschitz_grad() == doctest::Approx(10.0));
    CHECK(*p.optimal_value() == 0.0);
    CHECK(p.nearest_solution(vec({4, 4}))->isZero());
  }
  SUBCASE("diag(1,10) with b=(1,0)") {
    const ProblemInstance p = make_problem("quad:diag=1,10:b=1,0");
    for (const Vector& z : {vec({0, 0}), vec({2, -3}), vec({-1.5, 7})}) {
      const double expected = 0.5 * (z[0] - 1) * (z[0] - 1) + z[1] * z[1] / 20.0;
      CHECK(finite(p.conjugate(z)) == doctest::Approx(expected).epsilon(1e-14));
    }
    CHECK(*p.optimal_value() == doctest::Approx(-0.5));
    CHECK(p.nearest_solution(vec({0, 0}))->isApprox(vec({-1, 0})));
  }
  SUBCASE("construction errors") {
    CHECK_THROWS_AS(make_problem("quad:diag=1,0"), Error);
    CHECK_THROWS_AS(make_problem("quad:diag=1,-1"), Error);
    CHECK_THROWS_AS(make_problem("quad:matrix=1,2/0,1"), Error);  // not symmetric
    CHECK_THROWS_AS(make_problem("quad:diag=1,1e13"), Error);     // condition number guard
  }
}

TEST_CASE("scaled norm") {
  const ProblemInstance p = make_problem("norm:G=1:dim=1");
  CHECK(p.value(vec({-2})) == 2.0);
  CHECK(p.subgradient(vec({-2}))[0] == -1.0);
  CHECK(p.subgradient(vec({0}))[0] == 0.0);

  const ProblemInstance p2 = make_problem("norm:G=2:dim=2");
  CHECK(p2.conjugate(vec({0, 2.5})).is_plus_infinity());
  CHECK(finite(p2.conjugate(vec({0, 2}))) == 0.0);
  CHECK(p2.distance_to_solution(vec({3, 4})) == 5.0);
  CHECK_THROWS_AS(make_problem("norm:G=0"), Error);
  CHECK_THROWS_AS(make_problem("norm:G=-1"), Error);
}

TEST_CASE("log-sum-exp") {
  const ProblemInstance p = make_problem("lse:dim=2");
  CHECK(p.value(vec({0, 0})) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(p.gradient(vec({0, 0})).isApprox(vec({0.5, 0.5})));
  CHECK(finite(p.conjugate(vec({0.5, 0.5}))) == doctest::Approx(-std::log(2.0)).epsilon(1e-15));
  CHECK(p.conjugate(vec({0.6, 0.5})).is_plus_infinity());
  CHECK(p.conjugate(vec({-0.1, 1.1})).is_plus_infinity());
  CHECK_FALSE(p.optimal_value().has_value());  // unbounded below
  CHECK(p.value(vec({800, 799})) == doctest::Approx(800 + std::log1p(std::exp(-1.0))));  // no overflow

  SUBCASE("tilted variant has a solution line") {
    const ProblemInstance t = make_problem("lse:dim=2:tilt=uniform");
    CHECK(*t.optimal_value() == doctest::Approx(std::log(2.0)));
    CHECK(t.value(vec({5, 5})) == doctest::Approx(std::log(2.0)));
    // x0 = (3,-3): the solution set is the diagonal, distance 6/sqrt(2)
    CHECK(*t.distance_to_solution(vec({3, -3})) == doctest::Approx(6.0 / std::sqrt(2.0)));
  }
}

TEST_CASE("max-affine family") {
  const ProblemInstance linf = make_problem("linf:dim=2");
  CHECK(linf.value(vec({1, -3})) == 3.0);
  CHECK(linf.subgradient(vec({2, -2})).isApprox(vec({0.5, -0.5})));  // least-norm at a tie
  CHECK(finite(linf.conjugate(vec({0.5, -0.5}))) == 0.0);
  CHECK(linf.conjugate(vec({0.7, -0.5})).is_plus_infinity());

  const ProblemInstance l1 = make_problem("l1:dim=2");
  CHECK(l1.value(vec({1, -3})) == 4.0);
  CHECK(l1.conjugate(vec({1.2, 0})).is_plus_infinity());

  SUBCASE("generic pieces through the LP agree with the closed form") {
    const ProblemInstance lp = make_problem("maxaff:a=1,0/-1,0/0,1/0,-1:b=0,0,0,0:xstar=0,0");
    Gen gen(11);
    for (int i = 0; i < 50; ++i) {
      const Vector z = gen.vector(2, -0.8, 0.8);
      const ExtendedReal closed = linf.conjugate(z);
      const ExtendedReal viaLp = lp.conjugate(z);
      CHECK(closed.is_finite() == viaLp.is_finite());
      if (closed.is_finite()) CHECK(std::abs(viaLp.value()) <= 1e-12);
    }
    CHECK(*lp.optimal_value() == doctest::Approx(0.0));
  }
  SUBCASE("unique minimizer certificate") {
    CHECK_NOTHROW(make_problem("maxaff:a=1,1/-1,0/0,-1:b=-1,0,0:xstar=0.33333333333333331,0.33333333333333331"));
    // only two pieces: the minimizer set is a ray, so xstar cannot be unique
    CHECK_THROWS_AS(make_problem("maxaff:a=1,0/-1,0:b=0,0:xstar=0,0"), Error);
    // not optimal
    CHECK_THROWS_AS(make_problem("maxaff:a=1,0/-1,0/0,1/0,-1:xstar=1,0"), Error);
    CHECK_FALSE(make_problem("maxaff:a=1,1/-1,0/0,-1:b=-1,0,0").distance_to_solution(vec({0, 0})).has_value());
  }
  SUBCASE("random instances are minimized at x*") {
    for (int seed = 0; seed < 5; ++seed) {
      const ProblemInstance p = make_problem("maxaff:dim=4:pieces=10:seed=" + std::to_string(seed));
      const Vector xs = *p.nearest_solution(Vector::Zero(4));
      CHECK(std::abs(p.value(xs)) <= 1e-12);
      CHECK(*p.optimal_value() == doctest::Approx(0.0).epsilon(1e-9));
    }
    CHECK_THROWS_AS(make_problem("maxaff:dim=4:pieces=6"), Error);
  }
}

TEST_CASE("simplex LP") {
  // min x0 + 2 x1  s.t. x0 + x1 = 1, x >= 0
  Matrix M(1, 2);
  M << 1, 1;
  const LpResult r = solve_standard_form_lp(M, vec({1}), vec({1, 2}), 1e-10);
  CHECK(r.status == LpResult::Status::optimal);
  CHECK(r.objective == doctest::Approx(1.0));
  CHECK(solve_standard_form_lp(M, vec({-1}), vec({1, 2}), 1e-10).status == LpResult::Status::infeasible);
  CHECK(project_onto_simplex(vec({2, 0})).isApprox(vec({1, 0})));
  CHECK(project_onto_simplex(vec({0.5, 0.5})).isApprox(vec({0.5, 0.5})));
}

TEST_CASE("catalog grammar errors") {
  CHECK_THROWS_AS(make_problem("nosuch:dim=2"), Error);
  CHECK_THROWS_AS(make_problem("quad:diag=1:foo=2"), Error);
  CHECK_THROWS_AS(make_problem("quad:diag=1:diag=2"), Error);
  CHECK_THROWS_AS(make_problem("lse"), Error);
  for (const auto& id : catalog_examples()) CHECK_NOTHROW(make_problem(id));
}

TEST_CASE("property: Fenchel-Young and subgradient inequalities") {
  Gen gen(20240611);
  for (const auto& id : catalog_examples()) {
    const ProblemInstance p = make_problem(id);
    for (int trial = 0; trial < 40; ++trial) {
      const Vector x = gen.vector(p.dim());
      const Vector y = gen.vector(p.dim());
      const Vector g = p.subgradient(x);
      // f(y) >= f(x) + <g, y - x>
      const double fy = p.value(y), fx = p.value(x);
      CHECK(fy >= fx + g.dot(y - x) - 1e-9 * (1 + std::abs(fy) + std::abs(fx)));
      // f(x) + f*(g) = <g, x> at a subgradient pair
      const ExtendedReal gap = fenchel_gap(p, g, x);
      REQUIRE(gap.is_finite());
      CHECK(std::abs(gap.value()) <= 1e-8 * (1 + std::abs(fx)));
      // the gap is nonnegative for arbitrary z in the domain
      const ExtendedReal other = fenchel_gap(p, p.subgradient(y), x);
      CHECK(other.value() >= -1e-8 * (1 + std::abs(fx)));
      if (const auto G = p.lipschitz_f()) CHECK(g.norm() <= *G * (1 + 1e-12));
    }
  }
}

TEST_CASE("property: descent inequality with t = 1/L") {
  Gen gen(77);
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::Index n = gen.integer(1, 5);
    const ProblemInstance p = make_quadratic(gen.spd(n, 0.1, 10.0), gen.vector(n), gen.uniform(-1, 1));
    const double L = *p.lipschitz_grad();
    const Vector x = gen.vector(n);
    const Vector g = p.gradient(x);
    CHECK(p.value(x - g / L) <= p.value(x) - g.squaredNorm() / (2 * L) + 1e-9 * (1 + std::abs(p.value(x))));
  }
}
