#include "parking/harness.hpp"

#include "parking/exact.hpp"
#include "parking/finite.hpp"
#include "parking/infinite.hpp"
#include "parking/oracle.hpp"
#include "parking/trials.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace parking::harness {

using ojson = nlohmann::ordered_json;
using parking::to_string;

namespace {

constexpr struct {
  Command command;
  std::string_view name;
} kCommandNames[] = {
    {Command::DensityConvergence, "density-convergence"},
    {Command::DensityCurve, "density-curve"},
    {Command::Trials, "trials"},
    {Command::Oracle, "oracle"},
    {Command::SiteVacancy, "site-vacancy"},
    {Command::Autocovariance, "autocovariance"},
};

ojson cell_to_json(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> ojson {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, double>) {
          if (!std::isfinite(v)) return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
          return v;
        } else {
          return v;
        }
      },
      cell);
}

ojson config_json(const RunConfig& config) {
  ojson j;
  j["seed"] = config.seed;
  j["replicas"] = config.replicas;
  j["dist"] = std::string(to_string(config.dist));
  return j;
}

// Envelope shared by every tabular command.
std::string table_json(const RunConfig& config, const Table& table, const std::vector<std::string>& failures) {
  ojson doc;
  doc["command"] = std::string(to_string(config.command));
  doc["config"] = config_json(config);
  doc["columns"] = table.columns;
  ojson rows = ojson::array();
  for (const auto& row : table.rows) {
    ojson obj = ojson::object();
    for (std::size_t c = 0; c < table.columns.size(); ++c) obj[table.columns[c]] = cell_to_json(row[c]);
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  doc["checks_passed"] = failures.empty();
  doc["failures"] = failures;
  return doc.dump(2) + "\n";
}

void finish(CommandResult& result, const RunConfig& config) {
  result.json = table_json(config, result.table, result.failures);
}

std::string describe(double value) { return format_number(value); }

}  // namespace

std::string_view to_string(Command command) {
  for (const auto& entry : kCommandNames)
    if (entry.command == command) return entry.name;
  return "unknown";
}

Command parse_command(std::string_view text) {
  for (const auto& entry : kCommandNames)
    if (entry.name == text) return entry.command;
  throw Error("unknown command: " + std::string(text));
}

void RunConfig::validate() const {
  if (replicas == 0) throw Error("--replicas must be positive");
  if (!std::is_sorted(n_list.begin(), n_list.end())) throw Error("--n-list must be sorted ascending");
  if (!std::is_sorted(t_grid.begin(), t_grid.end())) throw Error("--t-grid must be sorted ascending");
  if (!std::is_sorted(lags.begin(), lags.end())) throw Error("--lags must be sorted ascending");
  for (double t : t_grid)
    if (!(t >= 0.0) || !std::isfinite(t)) throw Error("--t-grid values must be finite and nonnegative");
  for (auto n : n_list)
    if (n < 2) throw InvalidSize("n must be at least 2, got " + std::to_string(n));
  switch (command) {
    case Command::DensityConvergence:
      if (n_list.empty()) throw Error("density-convergence needs --n or --n-list");
      break;
    case Command::DensityCurve:
      if (t_grid.empty()) throw Error("density-curve needs --t-grid");
      break;
    case Command::Trials:
      if (n_list.empty()) throw Error("trials needs --n or --n-list");
      for (auto n : n_list)
        if (n < 3) throw InvalidSize("trials needs n >= 3");
      break;
    case Command::Oracle:
      if (n_list.size() != 1) throw Error("oracle needs exactly one --n");
      break;
    case Command::SiteVacancy:
      if (n_list.size() > 1) throw Error("site-vacancy takes at most one --n");
      break;
    case Command::Autocovariance:
      if (lags.empty()) throw Error("autocovariance needs --lags");
      break;
  }
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv(kSeedEnvVar); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const auto value = std::strtoull(env, &end, 0);
    if (end == nullptr || *end != '\0') throw Error(std::string(kSeedEnvVar) + " is not an integer: " + env);
    return value;
  }
  return kDefaultSeed;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return buf;
}

CommandResult cmd_density_convergence(const RunConfig& config) {
  CommandResult result;
  auto& table = result.table;
  table.columns = {"n",        "exact_mean_M",  "exact_density",   "mc_density",   "mc_stderr", "replicas",
                   "seed",     "abs_delta_M",   "abs_delta_density", "bound_12_over_n", "exact"};
  const auto limits = limit_constants();
  const auto e_table = expected_M_table(config.n_list.back());
  for (auto n : config.n_list) {
    const long double exact = e_table[n];
    const bool rational = n <= kRationalMeanCap;
    const std::string exact_text = rational && n <= kRationalDisplayCap ? to_string(expected_M(n)) : describe(static_cast<double>(exact));
    const double density = static_cast<double>(exact / static_cast<long double>(n));
    const auto mc = measure_M_T(n, config.replicas, config.seed, config.threads);
    const double mc_density = mc.M.mean / static_cast<double>(n);
    const double mc_se = mc.M.std_error / static_cast<double>(n);
    const double offset = static_cast<double>(exact - static_cast<long double>(n) * limits.jamming_density);
    table.rows.push_back({n, exact_text, density, mc_density, mc_se, config.replicas,
                          config.seed, std::fabs(offset), std::fabs(density - static_cast<double>(limits.jamming_density)),
                          12.0 / static_cast<double>(n), rational});
    if (std::fabs(offset) > 12.0)
      result.failures.push_back("n=" + std::to_string(n) + ": |E[M_n] - n(1-e^-2)| = " + describe(std::fabs(offset)) + " > 12");
    if (mc_se > 0.0 && std::fabs(mc_density - density) > 5.0 * mc_se)
      result.failures.push_back("n=" + std::to_string(n) + ": Monte Carlo density more than 5 stderr from exact");
  }
  finish(result, config);
  return result;
}

CommandResult cmd_density_curve(const RunConfig& config) {
  CommandResult result;
  auto& table = result.table;
  table.columns = {"t",        "F_t",          "closed_form",       "mc_estimate",
                   "mc_stderr", "odd_descent_closed", "odd_descent_mc", "odd_descent_stderr",
                   "replicas", "seed"};
  const ArrivalDistribution dist(config.dist);
  const auto density = density_curve_mc(config.t_grid, dist, config.replicas, config.seed, config.threads);
  const auto odd = odd_descent_time_curve_mc(config.t_grid, dist, config.replicas, config.seed, config.threads);
  const auto closed = density_curve_closed_form(dist, config.t_grid);
  for (std::size_t k = 0; k < config.t_grid.size(); ++k) {
    const double t = config.t_grid[k];
    const double f_closed = odd_descent_closed_form(dist, t);
    table.rows.push_back({t, dist.cdf(t), closed.rho[k], density[k].mean, density[k].std_error, f_closed, odd[k].mean,
                          odd[k].std_error, config.replicas, config.seed});
    if (std::fabs(closed.rho[k] - density[k].mean) > 4.0 * density[k].std_error + 1e-12)
      result.failures.push_back("t=" + describe(t) + ": density estimate more than 4 stderr from 1-exp(-2F(t))");
    if (std::fabs(f_closed - odd[k].mean) > 4.0 * odd[k].std_error + 1e-12)
      result.failures.push_back("t=" + describe(t) + ": f(t) estimate more than 4 stderr from 1-exp(-F(t))");
  }
  finish(result, config);
  return result;
}

CommandResult cmd_trials(const RunConfig& config) {
  CommandResult result;
  auto& table = result.table;
  table.columns = {"n",           "replicas",      "seed",          "mean_T",        "T_stderr",
                   "ratio",       "ratio_stderr",  "coupon_mean",   "coupon_stderr", "coupon_exact",
                   "tau_star_mean", "tau_star_stderr", "upper_tail_1_2"};
  for (auto n : config.n_list) {
    const auto row = trials_row(n, config.replicas, config.seed, config.threads);
    table.rows.push_back({n, config.replicas, config.seed, row.T.mean, row.T.std_error,
                          row.ratio.mean, row.ratio.std_error, row.coupon.mean, row.coupon.std_error,
                          row.coupon_exact, row.tau_star.mean, row.tau_star.std_error, row.upper_tail});
    const double combined = std::hypot(row.T.std_error, row.coupon.std_error);
    if (row.T.mean > row.coupon.mean + 3.0 * combined)
      result.failures.push_back("n=" + std::to_string(n) + ": mean T exceeds the coupon-collector mean");
  }
  finish(result, config);
  return result;
}

CommandResult cmd_oracle(const RunConfig& config) {
  const std::size_t n = config.n_list.front();
  const auto report = enumerate_orderings(n);
  const auto expected_T = expected_T_exact(n);
  const auto lemma = verify_lemma1(n);

  CommandResult result;
  auto& table = result.table;
  table.columns = {"site", "vacancy", "vacancy_float"};
  for (std::size_t i = 0; i < n; ++i)
    table.rows.push_back({i + 1, to_string(report.per_site_vacancy[i]), report.per_site_vacancy[i].get_d()});

  if (report.expected_M != expected_M(n)) result.failures.push_back("oracle E[M_n] differs from the recursion");
  const auto dist = distribution_M(n);
  if (dist.rational != report.distribution_M) result.failures.push_back("oracle law of M_n differs from the recursion");
  for (std::size_t i = 1; i <= n; ++i)
    if (report.per_site_vacancy[i - 1] != per_site_vacancy_exact(n, i))
      result.failures.push_back("oracle vacancy at site " + std::to_string(i) + " differs from the run-parity formula");
  if (!lemma.pass) result.failures.push_back("run-parity classifier disagrees with replay");

  ojson doc;
  doc["command"] = "oracle";
  doc["n"] = n;
  doc["orderings"] = report.orderings;
  doc["expected_M"] = to_string(report.expected_M);
  doc["expected_T"] = to_string(expected_T);
  ojson law = ojson::object();
  for (const auto& [m, p] : report.distribution_M) law[std::to_string(m)] = to_string(p);
  doc["distribution_M"] = std::move(law);
  ojson vacancy = ojson::array();
  for (const auto& p : report.per_site_vacancy) vacancy.push_back(to_string(p));
  doc["per_site_vacancy"] = std::move(vacancy);
  doc["lemma1"] = {{"pass", lemma.pass}, {"orderings", lemma.orderings}};
  if (lemma.counterexample) {
    const auto& c = *lemma.counterexample;
    doc["lemma1"]["counterexample"] = {{"ranks", c.ranks},
                                       {"site", c.site},
                                       {"replay_vacant", c.replay_vacant},
                                       {"classifier_vacant", c.classifier_vacant}};
  }
  doc["checks_passed"] = result.failures.empty();
  doc["failures"] = result.failures;
  result.json = doc.dump(2) + "\n";
  return result;
}

CommandResult cmd_site_vacancy(const RunConfig& config) {
  CommandResult result;
  auto& table = result.table;
  const auto limits = limit_constants();
  const double e2 = static_cast<double>(limits.vacancy);

  if (config.n_list.empty()) {
    table.columns = {"site", "closed_form", "mc_vacancy", "mc_stderr", "even_descent", "even_descent_stderr",
                     "even_descent_squared", "replicas", "seed"};
    const auto est = vacancy_mc(config.replicas, config.seed, ArrivalDistribution(config.dist), config.threads);
    const double squared = est.even_descent.mean * est.even_descent.mean;
    table.rows.push_back({std::int64_t{0}, e2, est.vacant.mean, est.vacant.std_error, est.even_descent.mean,
                          est.even_descent.std_error, squared, config.replicas, config.seed});
    if (std::fabs(est.vacant.mean - e2) > 4.0 * est.vacant.std_error)
      result.failures.push_back("infinite-line vacancy more than 4 stderr from e^-2");
    finish(result, config);
    return result;
  }

  const std::size_t n = config.n_list.front();
  table.columns = {"site",     "vacancy_exact", "vacancy", "infinite_limit", "abs_delta", "coupling_bound",
                   "mc_vacancy", "mc_stderr",   "replicas", "seed"};
  const auto vacant_counts = run_replicas(config.replicas, config.threads, [&](std::uint64_t r) {
    return simulate_direct(n, SeedSpec{config.seed, r}).final_config;
  });
  std::vector<double> indicator(config.replicas);
  for (std::size_t i = 1; i <= n; ++i) {
    const long double exact = per_site_vacancy_float(n, i);
    const std::string exact_text = n <= kRationalDisplayCap ? to_string(per_site_vacancy_exact(n, i)) : std::string();
    for (std::size_t r = 0; r < config.replicas; ++r) indicator[r] = vacant_counts[r].occupied(i) ? 0.0 : 1.0;
    const auto mc = summarize(indicator);
    const double delta = std::fabs(static_cast<double>(exact) - e2);
    const double bound = coupling_bound(n, i);
    table.rows.push_back({i, exact_text, static_cast<double>(exact), e2, delta, bound, mc.mean, mc.std_error,
                          config.replicas, config.seed});
    if (delta > bound) result.failures.push_back("site " + std::to_string(i) + ": vacancy outside the coupling bound");
    if (std::fabs(mc.mean - static_cast<double>(exact)) > 5.0 * mc.std_error + 1e-12)
      result.failures.push_back("site " + std::to_string(i) + ": Monte Carlo vacancy more than 5 stderr from exact");
  }
  finish(result, config);
  return result;
}

CommandResult cmd_autocovariance(const RunConfig& config) {
  CommandResult result;
  auto& table = result.table;
  table.columns = {"lag", "covariance", "stderr", "reflected_covariance", "reflected_stderr", "replicas", "seed"};
  const double p = static_cast<double>(limit_constants().jamming_density);
  for (auto lag : config.lags) {
    const auto right = autocovariance_mc(lag, config.replicas, config.seed, false, config.threads);
    const auto left = autocovariance_mc(lag, config.replicas, config.seed, true, config.threads);
    table.rows.push_back({lag, right.covariance, right.std_error, left.covariance, left.std_error,
                          config.replicas, config.seed});
    if (lag == 0 && std::fabs(right.covariance - p * (1.0 - p)) > 4.0 * right.std_error)
      result.failures.push_back("lag 0: variance more than 4 stderr from p(1-p)");
    if (lag >= 30 && std::fabs(right.covariance) > 4.0 * right.std_error)
      result.failures.push_back("lag " + std::to_string(lag) + ": covariance not consistent with zero");
  }
  finish(result, config);
  return result;
}

CommandResult run(const RunConfig& config) {
  config.validate();
  switch (config.command) {
    case Command::DensityConvergence: return cmd_density_convergence(config);
    case Command::DensityCurve: return cmd_density_curve(config);
    case Command::Trials: return cmd_trials(config);
    case Command::Oracle: return cmd_oracle(config);
    case Command::SiteVacancy: return cmd_site_vacancy(config);
    case Command::Autocovariance: return cmd_autocovariance(config);
  }
  throw Error("unhandled command");
}

std::string render_csv(const Table& table) {
  std::ostringstream out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      std::visit(
          [&out](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, double>) out << format_number(v);
            else if constexpr (std::is_same_v<V, bool>) out << (v ? "true" : "false");
            else out << v;
          },
          row[c]);
    }
    out << '\n';
  }
  return out.str();
}

std::string render(const CommandResult& result, Format format) {
  return format == Format::Json ? result.json : render_csv(result.table);
}

}  // namespace parking::harness
