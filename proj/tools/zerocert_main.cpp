#include <CLI11.hpp>

#include <iostream>

#include "zerocert/cli/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"zerocert: least-squares existence certificates, transform search and ball-constrained descent"};
  app.require_subcommand(1);

  zerocert::cli::Invocation inv;
  std::uint64_t seed = 42;

  auto add_run_flags = [&](CLI::App* sub) {
    sub->add_option("--config", inv.config_path, "Run configuration (JSON)")->required();
    sub->add_option("--report", inv.report_path, "Write the JSON report here");
    sub->add_option("--sweep-csv", inv.sweep_csv_path, "Write the mu sweep as CSV");
    sub->add_option("--trace-csv", inv.trace_csv_path, "Write the descent trace as CSV");
    sub->add_option("--seed", seed, "Sampling seed (default 42)");
  };
  add_run_flags(app.add_subcommand("certify", "Check the existence certificate on the configured ball"));
  add_run_flags(app.add_subcommand("search", "Sweep the scale transform parameter mu"));
  add_run_flags(app.add_subcommand("solve", "Certify (and search), then locate the zero"));
  app.add_subcommand("selftest", "Run the built-in oracle suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : zerocert::cli::kExitConfigError;
  }

  CLI::App* chosen = app.get_subcommands().front();
  inv.subcommand = chosen->get_name();
  if (inv.subcommand != "selftest" && chosen->count("--seed") > 0) inv.seed = seed;
  return zerocert::cli::run(inv, std::cout, std::cerr);
}
