// Command-line front end for the parking experiments.
//
//   parking density-convergence --n-list 10,100,1000 --replicas 2000
//   parking density-curve --t-grid 0.25,0.5,1,2,4 --replicas 100000
//   parking trials --n-list 1000,10000 --replicas 100
//   parking oracle --n 4
//   parking site-vacancy [--n 20]
//   parking autocovariance --lags 0,1,2,30
//
// Data goes to standard output (or --out); diagnostics go to standard error.
// Exit status is 0 iff every in-run check passed.

#include "parking/harness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using parking::harness::Command;
using parking::harness::Format;
using parking::harness::RunConfig;

void add_common(CLI::App& sub, RunConfig& config, std::string& dist, std::string& format) {
  sub.add_option("--replicas", config.replicas, "Monte Carlo replicas")->check(CLI::PositiveNumber);
  sub.add_option("--seed", config.seed, "Master seed (default: $PARKING_SEED or 20260101)");
  sub.add_option("--dist", dist, "Arrival distribution")->check(CLI::IsMember({"exp", "uniform"}));
  sub.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub.add_option("--out", config.out_path, "Output file (default: standard output)");
  sub.add_option("--threads", config.threads, "Worker threads (0 = all cores)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dimer parking process: simulation, exact analytics and convergence tables"};
  app.require_subcommand(1);

  RunConfig config;
  try {
    config.seed = parking::harness::default_seed();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  std::string dist = "exp";
  std::string format = "csv";
  std::size_t single_n = 0;

  struct Spec {
    Command command;
    const char* help;
  };
  const Spec specs[] = {
      {Command::DensityConvergence, "Exact and simulated E[M_n]/n against 1-e^-2"},
      {Command::DensityCurve, "Density 1-exp(-2F(t)) of the infinite line against simulation"},
      {Command::Trials, "Attempt counts T_n/(n log n) and the coupon-collector bound"},
      {Command::Oracle, "Exhaustive enumeration for small n (JSON)"},
      {Command::SiteVacancy, "Per-site vacancy; without --n, the infinite line"},
      {Command::Autocovariance, "Covariance of occupancies on the infinite line"},
  };
  for (const auto& spec : specs) {
    auto* sub = app.add_subcommand(std::string(parking::harness::to_string(spec.command)), spec.help);
    add_common(*sub, config, dist, format);
    sub->add_option("--n", single_n, "Number of sites");
    sub->add_option("--n-list", config.n_list, "Comma-separated site counts, ascending")->delimiter(',');
    sub->add_option("--t-grid", config.t_grid, "Comma-separated times, ascending")->delimiter(',');
    sub->add_option("--lags", config.lags, "Comma-separated lags, ascending")->delimiter(',');
    sub->callback([&config, command = spec.command] { config.command = command; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (single_n != 0) config.n_list.insert(config.n_list.begin(), single_n);
    config.dist = parking::parse_dist_kind(dist);
    config.format = format == "json" ? Format::Json : Format::Csv;
    if (config.command == Command::Oracle) config.format = Format::Json;

    std::cerr << "parking " << parking::harness::to_string(config.command) << ": seed " << config.seed << ", "
              << config.replicas << " replicas\n";
    const auto result = parking::harness::run(config);
    const auto text = parking::harness::render(result, config.format);
    if (config.out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(config.out_path, std::ios::binary);
      if (!out) throw parking::Error("cannot open " + config.out_path);
      out << text;
    }
    for (const auto& failure : result.failures) std::cerr << "check failed: " << failure << '\n';
    return result.passed() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
