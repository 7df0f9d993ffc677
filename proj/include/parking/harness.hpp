#pragma once

// Experiment commands behind the `parking` CLI. Each command produces a
// table (or a JSON document) plus the list of in-run checks that failed.

#include "parking/core.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace parking::harness {

inline constexpr std::uint64_t kDefaultSeed = 20260101;
inline constexpr const char* kSeedEnvVar = "PARKING_SEED";
// Rationals longer than this many sites are reported in floating point only.
inline constexpr std::size_t kRationalDisplayCap = 64;

enum class Command { DensityConvergence, DensityCurve, Trials, Oracle, SiteVacancy, Autocovariance };
enum class Format { Csv, Json };

std::string_view to_string(Command command);
Command parse_command(std::string_view text);

struct RunConfig {
  Command command = Command::DensityConvergence;
  std::vector<std::size_t> n_list;
  std::size_t replicas = 1000;
  std::uint64_t seed = kDefaultSeed;
  DistKind dist = DistKind::Exponential;
  std::vector<double> t_grid;
  std::vector<std::size_t> lags;
  Format format = Format::Csv;
  std::string out_path;  // empty: standard output
  unsigned threads = 0;

  // Throws Error unless every parameter is in range and lists are ascending.
  void validate() const;
};

// Seed from PARKING_SEED when set, else kDefaultSeed.
std::uint64_t default_seed();

using Cell = std::variant<std::uint64_t, std::int64_t, double, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct CommandResult {
  Table table;
  std::string json;  // full JSON document
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

CommandResult cmd_density_convergence(const RunConfig& config);
CommandResult cmd_density_curve(const RunConfig& config);
CommandResult cmd_trials(const RunConfig& config);
CommandResult cmd_oracle(const RunConfig& config);
CommandResult cmd_site_vacancy(const RunConfig& config);
CommandResult cmd_autocovariance(const RunConfig& config);

CommandResult run(const RunConfig& config);

// Rendered output for the configured format.
std::string render(const CommandResult& result, Format format);
std::string render_csv(const Table& table);

std::string format_number(double value);

}  // namespace parking::harness
