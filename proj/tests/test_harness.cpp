#include "parking/harness.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdlib>

using namespace parking;
using namespace parking::harness;

namespace {

RunConfig make(Command command) {
  RunConfig config;
  config.command = command;
  config.replicas = 500;
  config.seed = 99;
  return config;
}

nlohmann::json run_json(RunConfig config) {
  config.format = Format::Json;
  return nlohmann::json::parse(render(run(config), Format::Json));
}

}  // namespace

TEST_CASE("commands are deterministic across runs and thread counts") {
  std::vector<RunConfig> configs;
  auto dc = make(Command::DensityConvergence);
  dc.n_list = {4, 50};
  configs.push_back(dc);
  auto curve = make(Command::DensityCurve);
  curve.t_grid = {0.0, 0.5, 1.0};
  configs.push_back(curve);
  auto trials = make(Command::Trials);
  trials.n_list = {100};
  trials.replicas = 20;
  configs.push_back(trials);
  auto oracle = make(Command::Oracle);
  oracle.n_list = {6};
  configs.push_back(oracle);
  auto vacancy = make(Command::SiteVacancy);
  configs.push_back(vacancy);
  auto finite = make(Command::SiteVacancy);
  finite.n_list = {12};
  configs.push_back(finite);
  auto autocov = make(Command::Autocovariance);
  autocov.lags = {0, 1, 3};
  configs.push_back(autocov);

  for (auto config : configs) {
    for (auto format : {Format::Csv, Format::Json}) {
      config.format = format;
      config.threads = 1;
      const auto first = render(run(config), format);
      const auto second = render(run(config), format);
      config.threads = 3;
      const auto threaded = render(run(config), format);
      CHECK(first == second);
      CHECK(first == threaded);
    }
  }
}

TEST_CASE("oracle output") {
  auto config = make(Command::Oracle);
  config.n_list = {4};
  const auto doc = run_json(config);
  CHECK(doc["expected_M"] == "10/3");
  CHECK(doc["distribution_M"]["2"] == "1/3");
  CHECK(doc["lemma1"]["pass"] == true);
  CHECK(doc["checks_passed"] == true);

  config.n_list = {2};
  CHECK(run_json(config)["expected_M"] == "2");

  config.n_list = {11};
  try {
    run(config);
    FAIL("no exception");
  } catch (const CapExceeded& e) {
    CHECK(std::string(e.what()).find("oracle cap exceeded") != std::string::npos);
  }
}

TEST_CASE("density-convergence rows") {
  auto config = make(Command::DensityConvergence);
  config.n_list = {2, 4};
  const auto result = run(config);
  CHECK(result.passed());
  const auto doc = run_json(config);
  CHECK(doc["rows"][0]["abs_delta_M"].get<double>() == doctest::Approx(2.0 * std::exp(-2.0)));
  CHECK(doc["rows"][1]["exact_mean_M"] == "10/3");
  CHECK(doc["config"]["seed"] == 99);

  const auto csv = render(result, Format::Csv);
  CHECK(csv.rfind("n,exact_mean_M,exact_density,mc_density,mc_stderr,replicas,seed,", 0) == 0);
}

TEST_CASE("density-curve rows") {
  auto config = make(Command::DensityCurve);
  config.t_grid = {0.0, std::log(2.0), 20.0};
  config.replicas = 2000;
  const auto doc = run_json(config);
  CHECK(doc["rows"][0]["closed_form"].get<double>() == 0.0);
  CHECK(doc["rows"][0]["mc_estimate"].get<double>() == 0.0);
  CHECK(doc["rows"][1]["closed_form"].get<double>() == doctest::Approx(1.0 - std::exp(-1.0)));
  CHECK(std::fabs(doc["rows"][2]["closed_form"].get<double>() - (1.0 - std::exp(-2.0))) < 1e-8);
}

TEST_CASE("trials rows") {
  auto config = make(Command::Trials);
  config.n_list = {3};
  config.replicas = 100;
  const auto doc = run_json(config);
  CHECK(doc["rows"][0]["mean_T"].get<double>() == 1.0);
  CHECK(doc["checks_passed"] == true);
}

TEST_CASE("configuration validation") {
  auto config = make(Command::DensityConvergence);
  CHECK_THROWS_AS(config.validate(), Error);
  config.n_list = {10, 5};
  CHECK_THROWS_AS(config.validate(), Error);
  config.n_list = {1};
  CHECK_THROWS_AS(config.validate(), InvalidSize);
  config.n_list = {5};
  config.replicas = 0;
  CHECK_THROWS_AS(config.validate(), Error);

  auto curve = make(Command::DensityCurve);
  curve.t_grid = {-1.0};
  CHECK_THROWS_AS(curve.validate(), Error);

  auto trials = make(Command::Trials);
  trials.n_list = {2};
  CHECK_THROWS_AS(trials.validate(), InvalidSize);

  CHECK(parse_command("site-vacancy") == Command::SiteVacancy);
  CHECK(to_string(Command::DensityCurve) == "density-curve");
  CHECK_THROWS_AS(parse_command("nope"), Error);
}

TEST_CASE("seed from the environment") {
  ::unsetenv(kSeedEnvVar);
  CHECK(default_seed() == kDefaultSeed);
  ::setenv(kSeedEnvVar, "12345", 1);
  CHECK(default_seed() == 12345);
  ::setenv(kSeedEnvVar, "not-a-number", 1);
  CHECK_THROWS_AS(default_seed(), Error);
  ::unsetenv(kSeedEnvVar);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(1.0 / 3.0) == "0.3333333333");
  CHECK(format_number(INFINITY) == "inf");
  CHECK(format_number(NAN) == "nan");
}
