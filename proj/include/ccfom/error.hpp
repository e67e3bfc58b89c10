#pragma once

#include <stdexcept>
#include <string>

namespace ccfom {

enum class ErrorKind {
  invalid_argument,
  construction,   // bad catalog parameters, non-PD matrix, ...
  configuration,  // experiment config / method-problem mismatch
  schema,         // CSV that does not follow the v1 schema
  oracle_failure, // non-finite value or gradient during a run
  unsupported,
  guard,          // size budgets (grid points, trace scalars)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) fail(kind, what);
}

}  // namespace ccfom
