#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "ccfom/methods.hpp"
#include "ccfom/tolerance.hpp"

namespace ccfom {

/// One experiment (or, with list values, a sweep). Flat `key = value` text;
/// `#` starts a comment line and list values are separated by `;`.
///
///   problem    = quad:diag=1,100          # list for sweeps
///   method     = gradient                 # subgradient|gradient|accelerated|prox_accelerated
///   x0         = 1,1                      # or a preset: ones, zeros
///   iterations = 1000                     # list for sweeps
///   schedule   = horizon_sqrt             # default: horizon_sqrt (subgradient), inverse_L
///   eps_rel    = 1e-9
///   eps_abs    = 1e-9
///   csv        = trace.csv                # relative to the output directory
///   report     = report.txt
///   svg        = plot.svg                 # optional
///   seed       = 0
///   test_points = 0,0; 1,1                # extra points for the chain checks
///   psi        = l1:lambda=0.1            # composite part for `conjecture`
///   instances  = 100
///   workers    = 1
struct ExperimentConfig {
  std::vector<std::string> problems;
  std::vector<Method> methods;
  std::string x0 = "ones";
  std::vector<std::size_t> iterations;
  std::optional<std::string> schedule;
  Tolerances tol;
  std::string csv = "trace.csv";
  std::string report = "report.txt";
  std::optional<std::string> svg;
  std::uint64_t seed = 0;
  std::vector<std::string> test_points;
  std::string psi = "zero";
  std::size_t instances = 1;
  unsigned workers = 1;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);

/// `ones`, `zeros` or explicit coordinates.
Point resolve_x0(const std::string& text, Eigen::Index dim);

/// The schedule a cell runs with; enforces that horizon_sqrt matches K and
/// that gradient-type methods use t = 1/L.
StepSchedule resolve_schedule(const ExperimentConfig& config, Method method, std::size_t K);

/// Method/problem compatibility: gradient methods need L, subgradient needs G.
void check_compatibility(const ProblemInstance& p, Method method);

}  // namespace ccfom
