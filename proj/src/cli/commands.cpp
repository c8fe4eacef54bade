#include "zerocert/cli/commands.hpp"

#include <chrono>
#include <exception>
#include <optional>
#include <ostream>
#include <sstream>

#include "zerocert/cli/report.hpp"
#include "zerocert/errors.hpp"
#include "zerocert/functional.hpp"
#include "zerocert/kernels.hpp"
#include "zerocert/selftest.hpp"

namespace zerocert::cli {

namespace {

class PhaseTimer {
 public:
  template <typename Fn>
  auto time(const char* phase, Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    auto result = fn();
    const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
    timings_[phase] = elapsed.count();
    return result;
  }

  const Json& timings() const { return timings_; }

 private:
  Json timings_ = Json::object();
};

struct Outcome {
  RunReport report;
  std::optional<TransformSearchResult> search;
  std::optional<DescentResult> descent;
};

RunReport report_header(const char* command, const RunConfig& config, const ResidualProblem& problem) {
  return {{"command", command},
          {"config", to_json(config)},
          {"problem",
           {{"name", problem.name()},
            {"input_dim", problem.input_dim()},
            {"output_dim", problem.output_dim()},
            {"analytic_jacobian", problem.has_analytic_jacobian()}}},
          {"kernels", kernels::active().name}};
}

Json gradient_check_at_center(const ResidualProblem& problem, const Ball& ball, PhaseTimer& timer) {
  return timer.time("gradient_check_ms",
                    [&] { return gradient_check_summary(check_gradient(problem, ball.center)); });
}

std::string vector_summary(const Vector& v) {
  if (v.size() > 4) return "[" + std::to_string(v.size()) + " values, |u|=" + format_number(v.norm()) + "]";
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) out += (i ? "," : "") + format_number(v[i]);
  return out + "]";
}

Outcome run_certify(const RunConfig& config, std::ostream& out) {
  PhaseTimer timer;
  const ResidualProblem problem = build_problem(config.problem);
  Outcome o;
  o.report = report_header("certify", config, problem);
  const Certificate cert = timer.time("certify_ms", [&] { return certify(problem, config.ball, config.certify); });
  out << verdict_line(cert) << '\n';
  o.report["certificate"] = to_json(cert);
  o.report["verdict"] = cert.passed ? "PASS" : "FAIL";
  o.report["gradient_check"] = gradient_check_at_center(problem, config.ball, timer);
  o.report["timings"] = timer.timings();
  return o;
}

TransformSearchResult search_for(const RunConfig& config, const ResidualProblem& problem, MuGrid& grid) {
  grid = build_mu_grid(config.transform->grid);
  return search_mu(problem, config.ball, grid, config.certify);
}

void print_search(const TransformSearchResult& result, std::ostream& out) {
  if (result.excluded > 0 || result.excluded_radius > 0.0) {
    out << "excluded " << result.excluded << " grid value(s) with |mu| <= "
        << format_number(result.excluded_radius) << '\n';
  }
  out << "best mu=" << format_number(result.best_parameter) << " any_passed=" << (result.any_passed ? 1 : 0)
      << '\n';
  out << verdict_line(result.certificate) << '\n';
}

Outcome run_search(const RunConfig& config, std::ostream& out) {
  if (!config.transform) throw ConfigError("transform", "the search command needs a transform section");
  PhaseTimer timer;
  const ResidualProblem problem = build_problem(config.problem);
  Outcome o;
  o.report = report_header("search", config, problem);
  MuGrid grid;
  TransformSearchResult result = timer.time("search_ms", [&] { return search_for(config, problem, grid); });
  print_search(result, out);
  o.report["search"] = to_json(result);
  o.report["verdict"] = result.certificate.passed ? "PASS" : "FAIL";
  o.report["gradient_check"] = gradient_check_at_center(problem, config.ball, timer);
  o.report["timings"] = timer.timings();
  o.search = std::move(result);
  return o;
}

Outcome run_solve(const RunConfig& config, std::ostream& out) {
  PhaseTimer timer;
  const ResidualProblem original = build_problem(config.problem);
  Outcome o;
  o.report = report_header("solve", config, original);

  std::optional<IndependentTransform> transform;
  if (config.transform) {
    MuGrid grid;
    TransformSearchResult result = timer.time("search_ms", [&] { return search_for(config, original, grid); });
    print_search(result, out);
    o.report["search"] = to_json(result);
    transform = IndependentTransform::scale(result.best_parameter);
    o.search = std::move(result);
  } else {
    const Certificate cert =
        timer.time("certify_ms", [&] { return certify(original, config.ball, config.certify); });
    out << verdict_line(cert) << '\n';
    o.report["certificate"] = to_json(cert);
  }

  const ResidualProblem target = transform ? recover_problem_independent(*transform, original) : original;
  DescentResult descent = timer.time("descent_ms", [&] { return solve(target, config.ball, config.descent); });
  const bool verified =
      verify_solution(target, descent.u, config.ball, config.descent.residual_tolerance);
  const Vector u = transform ? pull_back_zero(*transform, descent.u) : descent.u;
  const double original_residual = original.norm(original.residual(u));
  const bool solved = descent.status == DescentStatus::converged && verified;

  out << (solved ? "SOLVED" : "FAIL") << " u=" << vector_summary(u)
      << " residual=" << format_number(original_residual) << " iterations=" << descent.iterations
      << " status=" << to_string(descent.status) << '\n';

  o.report["descent"] = to_json(descent);
  o.report["solution"] = {{"u", to_json(u)},
                          {"residual_norm", original_residual},
                          {"verified", verified},
                          {"transform_mu", transform ? Json(transform->mu()) : Json(nullptr)}};
  o.report["verdict"] = solved ? "PASS" : "FAIL";
  o.report["gradient_check"] = gradient_check_at_center(original, config.ball, timer);
  o.report["timings"] = timer.timings();
  o.descent = std::move(descent);
  return o;
}

std::string pick(const std::string& flag, const std::string& configured) {
  return flag.empty() ? configured : flag;
}

}  // namespace

RunReport cmd_certify(const RunConfig& config, std::ostream& out) { return run_certify(config, out).report; }
RunReport cmd_search(const RunConfig& config, std::ostream& out) { return run_search(config, out).report; }
RunReport cmd_solve(const RunConfig& config, std::ostream& out) { return run_solve(config, out).report; }

int cmd_selftest(std::ostream& out) {
  const SelftestReport report = run_selftest();
  print_selftest(out, report);
  return report.all_passed() ? kExitOk : kExitSelftestFailed;
}

int run(const Invocation& invocation, std::ostream& out, std::ostream& err) {
  if (invocation.subcommand == "selftest") {
    try {
      return cmd_selftest(out);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kExitSelftestFailed;
    }
  }

  RunConfig config;
  try {
    if (invocation.config_path.empty()) throw ConfigError("--config", "a config file is required");
    config = load_run_config(invocation.config_path);
    if (invocation.seed) config.certify.sampling.seed = *invocation.seed;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }

  const std::string report_path = pick(invocation.report_path, config.output.report);
  const std::string sweep_path = pick(invocation.sweep_csv_path, config.output.sweep_csv);
  const std::string trace_path = pick(invocation.trace_csv_path, config.output.trace_csv);
  config.descent.record_trace = !trace_path.empty();

  try {
    Outcome outcome;
    if (invocation.subcommand == "certify") {
      outcome = run_certify(config, out);
    } else if (invocation.subcommand == "search") {
      outcome = run_search(config, out);
    } else if (invocation.subcommand == "solve") {
      outcome = run_solve(config, out);
    } else {
      err << "unknown subcommand '" << invocation.subcommand << "'\n";
      return kExitConfigError;
    }
    if (!report_path.empty()) write_text_file(report_path, outcome.report.dump(2) + "\n");
    if (!sweep_path.empty() && outcome.search) {
      std::ostringstream csv;
      write_sweep_csv(csv, *outcome.search);
      write_text_file(sweep_path, csv.str());
    }
    if (!trace_path.empty() && outcome.descent) {
      std::ostringstream csv;
      write_trace_csv(csv, *outcome.descent);
      write_text_file(trace_path, csv.str());
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << '\n';
    return kExitRuntimeError;
  }
  return kExitOk;
}

}  // namespace zerocert::cli
