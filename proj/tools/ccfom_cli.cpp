// ccfom command line front end. Talks to the library only through ccfom.h.
#include <cstdio>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ccfom/ccfom.h"

namespace {

struct Options {
  std::string out_dir = ".";
  std::optional<double> eps_rel;
  std::optional<double> eps_abs;
  std::optional<unsigned> workers;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--out", o.out_dir, "output directory")->capture_default_str();
  cmd->add_option("--eps-rel", o.eps_rel, "relative tolerance (overrides the config)")->check(CLI::PositiveNumber);
  cmd->add_option("--eps-abs", o.eps_abs, "absolute tolerance (overrides the config)")->check(CLI::PositiveNumber);
}

using Command = ccfom_status (*)(const char*, const char*, const ccfom_overrides*, ccfom_result**);

int dispatch(Command cmd, const std::string& input, const Options& o) {
  ccfom_overrides ov{};
  if (o.eps_rel) ov.has_eps_rel = 1, ov.eps_rel = *o.eps_rel;
  if (o.eps_abs) ov.has_eps_abs = 1, ov.eps_abs = *o.eps_abs;
  if (o.workers) ov.workers = *o.workers;

  ccfom_result* result = nullptr;
  const ccfom_status status = cmd(input.c_str(), o.out_dir.c_str(), &ov, &result);
  if (status != CCFOM_OK) {
    std::fprintf(stderr, "ccfom: %s\n", ccfom_last_error());
    return 3;
  }
  const int code = ccfom_result_exit_code(result);
  std::fprintf(code == 0 ? stdout : stderr, "%s\n", ccfom_result_summary(result));
  ccfom_result_destroy(result);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certificate-checked first-order methods"};
  app.set_version_flag("--version", std::string(ccfom_version()));
  app.require_subcommand(1);

  Options o;
  std::string input;

  auto* run = app.add_subcommand("run", "run one method on one problem and audit the trace");
  run->add_option("--config", input, "experiment config")->required();
  add_common(run, o);

  auto* verify = app.add_subcommand("verify", "re-audit a trace CSV written by run");
  verify->add_option("trace", input, "trace CSV")->required();
  add_common(verify, o);

  auto* sweep = app.add_subcommand("sweep", "problems x methods x iterations");
  sweep->add_option("--config", input, "experiment config")->required();
  sweep->add_option("--workers", o.workers, "parallel cells")->check(CLI::PositiveNumber);
  add_common(sweep, o);

  auto* conjecture = app.add_subcommand("conjecture", "probe the proximal certificate on seeded instances");
  conjecture->add_option("--config", input, "experiment config")->required();
  add_common(conjecture, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  if (*run) return dispatch(ccfom_cmd_run, input, o);
  if (*verify) return dispatch(ccfom_cmd_verify, input, o);
  if (*sweep) return dispatch(ccfom_cmd_sweep, input, o);
  return dispatch(ccfom_cmd_conjecture, input, o);
}
