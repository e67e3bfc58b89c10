#include "ccfom/ccfom.h"

#include <cmath>
#include <new>
#include <string>

#include "ccfom/catalog.hpp"
#include "ccfom/experiment.hpp"

struct ccfom_problem {
  ccfom::ProblemInstance instance;
};

struct ccfom_trace {
  ccfom::MethodTrace trace;
};

struct ccfom_audit {
  ccfom::Audit audit;
};

struct ccfom_result {
  ccfom::CommandOutcome outcome;
};

namespace {

thread_local std::string last_error;

ccfom_status status_for(ccfom::ErrorKind kind) {
  using ccfom::ErrorKind;
  switch (kind) {
    case ErrorKind::invalid_argument: return CCFOM_ERR_INVALID_ARGUMENT;
    case ErrorKind::construction: return CCFOM_ERR_CONSTRUCTION;
    case ErrorKind::configuration: return CCFOM_ERR_CONFIGURATION;
    case ErrorKind::schema: return CCFOM_ERR_SCHEMA;
    case ErrorKind::oracle_failure: return CCFOM_ERR_ORACLE;
    case ErrorKind::unsupported: return CCFOM_ERR_UNSUPPORTED;
    case ErrorKind::guard: return CCFOM_ERR_GUARD;
  }
  return CCFOM_ERR_INTERNAL;
}

template <typename F>
ccfom_status guard(F&& body) {
  try {
    body();
    last_error.clear();
    return CCFOM_OK;
  } catch (const ccfom::Error& e) {
    last_error = e.what();
    return status_for(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return CCFOM_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return CCFOM_ERR_INTERNAL;
  }
}

void need(const void* ptr, const char* what) {
  ccfom::require(ptr != nullptr, ccfom::ErrorKind::invalid_argument, std::string(what) + " is NULL");
}

ccfom::Vector view(const double* data, size_t n, const ccfom_problem* p) {
  need(data, "vector");
  ccfom::require(n == static_cast<size_t>(p->instance.dim()), ccfom::ErrorKind::invalid_argument,
                 "vector length " + std::to_string(n) + " does not match dimension " +
                     std::to_string(p->instance.dim()));
  return Eigen::Map<const ccfom::Vector>(data, static_cast<Eigen::Index>(n));
}

double to_c(const ccfom::ExtendedReal& v) {
  if (v.is_finite()) return v.value();
  return v.is_plus_infinity() ? HUGE_VAL : -HUGE_VAL;
}

ccfom::CommandOverrides overrides_from(const ccfom_overrides* o) {
  ccfom::CommandOverrides out;
  if (!o) return out;
  if (o->has_eps_rel) out.eps_rel = o->eps_rel;
  if (o->has_eps_abs) out.eps_abs = o->eps_abs;
  if (o->workers > 0) out.workers = o->workers;
  return out;
}

template <typename Cmd>
ccfom_status command(Cmd cmd, const char* input, const char* out_dir, const ccfom_overrides* o, ccfom_result** out) {
  return guard([&] {
    need(input, "input path");
    need(out_dir, "output directory");
    need(out, "result pointer");
    *out = new ccfom_result{cmd(input, out_dir, overrides_from(o))};
  });
}

}  // namespace

extern "C" {

const char* ccfom_version(void) { return "1.0.0"; }

const char* ccfom_last_error(void) { return last_error.c_str(); }

ccfom_status ccfom_problem_create(const char* id, ccfom_problem** out) {
  return guard([&] {
    need(id, "id");
    need(out, "out");
    *out = new ccfom_problem{ccfom::make_problem(id)};
  });
}

void ccfom_problem_destroy(ccfom_problem* p) { delete p; }

ccfom_status ccfom_problem_info_get(const ccfom_problem* p, ccfom_problem_info* out) {
  return guard([&] {
    need(p, "problem");
    need(out, "out");
    const auto& inst = p->instance;
    *out = ccfom_problem_info{};
    out->dim = static_cast<size_t>(inst.dim());
    if (inst.lipschitz_f()) out->has_lipschitz_f = 1, out->lipschitz_f = *inst.lipschitz_f();
    if (inst.lipschitz_grad()) out->has_lipschitz_grad = 1, out->lipschitz_grad = *inst.lipschitz_grad();
    if (inst.optimal_value()) out->has_optimal_value = 1, out->optimal_value = *inst.optimal_value();
    out->differentiable = inst.is_differentiable() ? 1 : 0;
  });
}

ccfom_status ccfom_problem_value(const ccfom_problem* p, const double* x, size_t n, double* out) {
  return guard([&] {
    need(p, "problem");
    need(out, "out");
    *out = p->instance.value(view(x, n, p));
  });
}

ccfom_status ccfom_problem_subgradient(const ccfom_problem* p, const double* x, size_t n, double* g_out) {
  return guard([&] {
    need(p, "problem");
    need(g_out, "g_out");
    const ccfom::Vector g = p->instance.subgradient(view(x, n, p));
    std::copy(g.data(), g.data() + g.size(), g_out);
  });
}

ccfom_status ccfom_problem_conjugate(const ccfom_problem* p, const double* z, size_t n, double* out) {
  return guard([&] {
    need(p, "problem");
    need(out, "out");
    *out = to_c(p->instance.conjugate(view(z, n, p)));
  });
}

ccfom_status ccfom_problem_fenchel_gap(const ccfom_problem* p, const double* z, const double* x, size_t n,
                                       double* out) {
  return guard([&] {
    need(p, "problem");
    need(out, "out");
    *out = to_c(ccfom::fenchel_gap(p->instance, view(z, n, p), view(x, n, p)));
  });
}

ccfom_status ccfom_run(const ccfom_problem* p, const char* method, const double* x0, size_t n, size_t K,
                       const char* schedule, ccfom_trace** out) {
  return guard([&] {
    need(p, "problem");
    need(method, "method");
    need(out, "out");
    const ccfom::Method m = ccfom::parse_method(method);
    const ccfom::Point start(view(x0, n, p));
    ccfom::ExperimentConfig config;
    if (schedule) config.schedule = schedule;
    ccfom::check_compatibility(p->instance, m);
    const ccfom::StepSchedule s = ccfom::resolve_schedule(config, m, K);
    ccfom::MethodTrace trace;
    switch (m) {
      case ccfom::Method::subgradient: trace = ccfom::run_subgradient(p->instance, start, s, K); break;
      case ccfom::Method::gradient: trace = ccfom::run_gradient(p->instance, start, K); break;
      case ccfom::Method::accelerated: trace = ccfom::run_accelerated(p->instance, start, K); break;
      default: ccfom::fail(ccfom::ErrorKind::unsupported, "ccfom_run: unsupported method");
    }
    *out = new ccfom_trace{std::move(trace)};
  });
}

void ccfom_trace_destroy(ccfom_trace* t) { delete t; }

ccfom_status ccfom_trace_length(const ccfom_trace* t, size_t* iterates) {
  return guard([&] {
    need(t, "trace");
    need(iterates, "out");
    *iterates = t->trace.x.size();
  });
}

ccfom_status ccfom_trace_value(const ccfom_trace* t, size_t k, double* fx) {
  return guard([&] {
    need(t, "trace");
    need(fx, "out");
    ccfom::require(k < t->trace.fx.size(), ccfom::ErrorKind::invalid_argument, "k out of range");
    *fx = t->trace.fx[k];
  });
}

ccfom_status ccfom_trace_iterate(const ccfom_trace* t, size_t k, double* x_out, size_t n) {
  return guard([&] {
    need(t, "trace");
    need(x_out, "out");
    ccfom::require(k < t->trace.x.size(), ccfom::ErrorKind::invalid_argument, "k out of range");
    const ccfom::Vector& x = t->trace.x[k].coords();
    ccfom::require(n == static_cast<size_t>(x.size()), ccfom::ErrorKind::invalid_argument, "buffer length mismatch");
    std::copy(x.data(), x.data() + x.size(), x_out);
  });
}

ccfom_status ccfom_audit_create(const ccfom_problem* p, const ccfom_trace* t, double eps_rel, double eps_abs,
                                ccfom_audit** out) {
  return guard([&] {
    need(p, "problem");
    need(t, "trace");
    need(out, "out");
    ccfom::require(eps_rel > 0 && eps_abs > 0, ccfom::ErrorKind::invalid_argument, "tolerances must be positive");
    ccfom::AuditOptions options;
    options.tol = {eps_rel, eps_abs};
    *out = new ccfom_audit{ccfom::audit_trace(t->trace, p->instance, options)};
  });
}

void ccfom_audit_destroy(ccfom_audit* a) { delete a; }

ccfom_status ccfom_audit_counts(const ccfom_audit* a, size_t* records, size_t* failures, size_t* vacuous) {
  return guard([&] {
    need(a, "audit");
    if (records) *records = a->audit.chain.records.size();
    if (failures) *failures = a->audit.chain.failures();
    if (vacuous) *vacuous = a->audit.chain.vacuous_records();
  });
}

ccfom_status ccfom_audit_record(const ccfom_audit* a, size_t index, ccfom_record* out) {
  return guard([&] {
    need(a, "audit");
    need(out, "out");
    const auto& records = a->audit.chain.records;
    ccfom::require(index < records.size(), ccfom::ErrorKind::invalid_argument, "record index out of range");
    const ccfom::ChainRecord& r = records[index];
    *out = ccfom_record{};
    out->k = r.k;
    out->fx = r.fx;
    out->lhs = r.lhs;
    out->certificate = to_c(r.certificate);
    out->vacuous = r.vacuous ? 1 : 0;
    out->mu = r.mu;
    if (r.theta) out->has_theta = 1, out->theta = *r.theta;
    if (r.theorem_bound) out->has_theorem_bound = 1, out->theorem_bound = *r.theorem_bound;
    out->residual_chain_max = r.residual_chain_max;
    if (r.residual_induction) out->has_residual_induction = 1, out->residual_induction = *r.residual_induction;
    out->verdict = static_cast<ccfom_verdict>(static_cast<int>(r.verdict));
  });
}

ccfom_status ccfom_cmd_run(const char* config, const char* out_dir, const ccfom_overrides* o, ccfom_result** out) {
  return command(ccfom::cmd_run, config, out_dir, o, out);
}

ccfom_status ccfom_cmd_verify(const char* trace_csv, const char* out_dir, const ccfom_overrides* o,
                              ccfom_result** out) {
  return command(ccfom::cmd_verify, trace_csv, out_dir, o, out);
}

ccfom_status ccfom_cmd_sweep(const char* config, const char* out_dir, const ccfom_overrides* o, ccfom_result** out) {
  return command(ccfom::cmd_sweep, config, out_dir, o, out);
}

ccfom_status ccfom_cmd_conjecture(const char* config, const char* out_dir, const ccfom_overrides* o,
                                  ccfom_result** out) {
  return command(ccfom::cmd_conjecture, config, out_dir, o, out);
}

int ccfom_result_exit_code(const ccfom_result* r) { return r ? r->outcome.exit_code : ccfom::kExitConfigError; }

const char* ccfom_result_summary(const ccfom_result* r) { return r ? r->outcome.summary.c_str() : ""; }

void ccfom_result_destroy(ccfom_result* r) { delete r; }

}  // extern "C"
