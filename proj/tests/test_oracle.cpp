#include <doctest.h>

#include <cmath>

#include "ccfom/catalog.hpp"
#include "ccfom/oracle.hpp"

using namespace ccfom;

TEST_CASE("conjugate by grid") {
  const ProblemInstance sq = make_problem("quad:diag=1");
  const GridConjugate a = conjugate_by_grid(sq, Vector::Constant(1, 1.0), GridSpec::cube(1, 4.0, 8001));
  CHECK(a.value == doctest::Approx(0.5).epsilon(1e-15));  // maximizer x=1 is on the grid
  CHECK(a.argmax[0] == 1.0);

  const ProblemInstance abs = make_problem("norm:G=1:dim=1");
  const GridConjugate b = conjugate_by_grid(abs, Vector::Constant(1, 0.5), GridSpec::cube(1, 4.0, 8001));
  CHECK(b.value == 0.0);

  const ProblemInstance lse = make_problem("lse:dim=2");
  const GridConjugate c = conjugate_by_grid(lse, Vector::Constant(2, 0.5), GridSpec::cube(2, 6.0, 601));
  CHECK(std::abs(c.value - (-std::log(2.0))) <= c.error_bound);
  CHECK(c.value <= -std::log(2.0) + 1e-15);
}

TEST_CASE("min by grid") {
  const ProblemInstance sq = make_problem("quad:diag=1");
  const GridMinimum a = min_by_grid(sq, GridSpec::cube(1, 4.0, 8001));
  CHECK(a.value == 0.0);
  CHECK(a.argmin[0] == 0.0);

  // |x - 0.5| with 0.5 off the grid: 4 points on [-4, 4] have spacing 8/3
  const ProblemInstance shifted = make_problem("maxaff:a=1/-1:b=-0.5,0.5");
  const GridSpec coarse = GridSpec::cube(1, 4.0, 1000);
  const GridMinimum b = min_by_grid(shifted, coarse);
  CHECK(b.value <= coarse.step() / 2);

  const ProblemInstance q = make_problem("quad:diag=1,10:b=1,0");
  const GridMinimum c = min_by_grid(q, GridSpec::cube(2, 5.0, 1001));
  CHECK(c.argmin.isApprox(Vector{{-1.0, 0.0}}));
  CHECK(c.value == doctest::Approx(-0.5));
}

TEST_CASE("ties go to the lowest linear index") {
  // f = max(|x|, 1) is flat on [-1, 1]
  const ProblemInstance flat = make_problem("maxaff:a=1/-1/0:b=0,0,1");
  const GridMinimum m = min_by_grid(flat, GridSpec::cube(1, 4.0, 81));
  CHECK(m.argmin[0] == -1.0);
}

TEST_CASE("grid guards") {
  const ProblemInstance p = make_problem("lse:dim=5:tilt=uniform");
  CHECK_THROWS_AS(min_by_grid(p, GridSpec::cube(5, 1.0, 3)), Error);
  const ProblemInstance q = make_problem("lse:dim=3:tilt=uniform");
  try {
    min_by_grid(q, GridSpec::cube(3, 1.0, 1001));
    FAIL("expected a guard error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::guard);
  }
  CHECK_THROWS_AS(min_by_grid(q, GridSpec::cube(2, 1.0, 11)), Error);  // dimension mismatch
  CHECK_THROWS_AS(GridSpec::cube(1, 1.0, 1).validate(), Error);
}
