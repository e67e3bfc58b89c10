#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ccfom/problems.hpp"

namespace ccfom {

/// Builds a catalog instance from an identifier `family:key=value:key=value`.
/// List values are comma-separated; matrix rows are separated by '/'.
///
///   quad:diag=1,10[:b=1,0][:c=0]        quad:matrix=2,1/1,2[:b=..][:c=..]
///   norm[:G=1][:dim=1]                  lse:dim=2[:tilt=uniform|0.3,0.7]
///   linf:dim=3    l1:dim=3              maxaff:a=1,0/-1,0[:b=0,0][:xstar=..]
///   maxaff:dim=4:pieces=12[:seed=0]     lasso:dim=3[:rows=6][:seed=0]
///
/// `lasso` is the least-squares part ½‖Mx − y‖² of a seeded ℓ1-regularized
/// problem, with M and y drawn from N(0, 1).
ProblemInstance make_problem(std::string_view id);

/// Representative identifiers covering every family.
std::vector<std::string> catalog_examples();

}  // namespace ccfom
