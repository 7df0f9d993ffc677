#include "parking/core.hpp"
#include "parking/stats.hpp"

#include <doctest.h>

#include <cmath>

using namespace parking;

TEST_CASE("summarize") {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  const auto s = summarize(v);
  CHECK(s.count == 4);
  CHECK(s.mean == doctest::Approx(2.5));
  CHECK(s.variance == doctest::Approx(5.0 / 3.0));
  CHECK(s.std_error == doctest::Approx(std::sqrt(5.0 / 12.0)));
  CHECK(summarize(std::vector<double>{2.0}).variance == 0.0);
}

TEST_CASE("replica results do not depend on the thread count") {
  auto job = [](std::uint64_t r) {
    Rng rng(SeedSpec{99, r});
    return rng.uniform();
  };
  const auto one = run_replicas(1000, 1, job);
  const auto four = run_replicas(1000, 4, job);
  CHECK(one == four);
}

TEST_CASE("worker exceptions reach the caller") {
  auto job = [](std::uint64_t r) -> int {
    if (r == 17) throw Error("boom");
    return 0;
  };
  CHECK_THROWS_AS(run_replicas(64, 3, job), Error);
}

TEST_CASE("two-sample chi-square") {
  Rng rng(SeedSpec{1, 0});
  std::map<std::int64_t, std::size_t> a;
  std::map<std::int64_t, std::size_t> b;
  std::map<std::int64_t, std::size_t> shifted;
  for (int k = 0; k < 20'000; ++k) {
    ++a[static_cast<std::int64_t>(rng.below(6))];
    ++b[static_cast<std::int64_t>(rng.below(6))];
    ++shifted[static_cast<std::int64_t>(rng.below(6) + (rng.below(4) == 0 ? 1 : 0))];
  }
  CHECK(chi_square_two_sample(a, b).p_value > 0.001);
  CHECK(chi_square_two_sample(a, shifted).p_value < 1e-6);
  CHECK(chi_square_two_sample(a, a).statistic == 0.0);
}

TEST_CASE("KS distance of a perfect grid") {
  std::vector<double> grid;
  for (int k = 0; k < 1000; ++k) grid.push_back((k + 0.5) / 1000.0);
  CHECK(ks_distance(grid, [](double t) { return t; }) == doctest::Approx(0.0005));
}

TEST_CASE("covariance of independent and identical series") {
  Rng rng(SeedSpec{3, 0});
  std::vector<double> x(50'000);
  std::vector<double> y(50'000);
  for (auto& v : x) v = rng.uniform();
  for (auto& v : y) v = rng.uniform();
  const auto indep = covariance(x, y);
  CHECK(std::fabs(indep.covariance) < 4.0 * indep.std_error);
  const auto self = covariance(x, x);
  CHECK(self.covariance == doctest::Approx(summarize(x).variance));
}
