#include "parking/core.hpp"
#include "parking/stats.hpp"

#include <doctest.h>

#include <array>
#include <cmath>
#include <set>

using namespace parking;

namespace {

ParkingConfiguration from_string(const std::string& bits) {
  std::vector<std::uint8_t> v;
  for (char c : bits) v.push_back(c == '1' ? 1 : 0);
  return ParkingConfiguration::from_bits(v);
}

}  // namespace

TEST_CASE("recount_free_pairs on the documented configurations") {
  CHECK(recount_free_pairs(from_string("0000")) == 3);
  CHECK(recount_free_pairs(from_string("1101111011011")) == 0);
  CHECK(recount_free_pairs(from_string("0110")) == 0);
  CHECK(recount_free_pairs(from_string("1001")) == 1);
  CHECK(from_string("1101111011011").jammed());
}

TEST_CASE("free pair count stays equal to a recount under random parking") {
  Rng rng(SeedSpec{7, 0});
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.below(40);
    ParkingConfiguration config(n);
    CHECK(config.free_pair_count() == n - 1);
    while (!config.jammed()) {
      const auto slot = 1 + rng.below(n - 1);
      const bool was_free = config.slot_free(slot);
      CHECK(config.try_park(slot) == was_free);
      REQUIRE(config.free_pair_count() == recount_free_pairs(config));
    }
    const auto m = config.occupied_count();
    CHECK(m % 2 == 0);
    CHECK(2 * m >= n);
  }
}

TEST_CASE("rng streams are a pure function of the seed") {
  Rng a(SeedSpec{42, 3});
  Rng b(SeedSpec{42, 3});
  Rng c(SeedSpec{42, 4});
  Rng d(SeedSpec{43, 3});
  bool differs_replica = false;
  bool differs_master = false;
  for (int k = 0; k < 100; ++k) {
    const auto x = a.bits();
    CHECK(x == b.bits());
    differs_replica |= x != c.bits();
    differs_master |= x != d.bits();
  }
  CHECK(differs_replica);
  CHECK(differs_master);
}

TEST_CASE("bounded integers are uniform") {
  Rng rng(SeedSpec{11, 0});
  std::array<std::size_t, 7> counts{};
  for (int k = 0; k < 70'000; ++k) ++counts[rng.below(7)];
  CHECK(chi_square_uniform(counts).p_value > 0.001);
  for (int k = 0; k < 1000; ++k) CHECK(rng.below(1) == 0);
}

TEST_CASE("sample_priority_field") {
  SUBCASE("two sites carry one priority") {
    const auto xi = sample_priority_field(2, ArrivalDistribution::exponential(), SeedSpec{1, 0});
    CHECK(xi.size() == 1);
    CHECK(xi.site_count() == 2);
  }
  SUBCASE("deterministic given the seed") {
    const auto a = sample_priority_field(5, ArrivalDistribution::exponential(), SeedSpec{9, 2});
    const auto b = sample_priority_field(5, ArrivalDistribution::exponential(), SeedSpec{9, 2});
    CHECK(std::equal(a.values().begin(), a.values().end(), b.values().begin(), b.values().end()));
  }
  SUBCASE("fewer than two sites is rejected") {
    CHECK_THROWS_AS(sample_priority_field(1, ArrivalDistribution::exponential(), SeedSpec{}), InvalidSize);
    CHECK_THROWS_AS(sample_priority_field(0, ArrivalDistribution::uniform(), SeedSpec{}), InvalidSize);
  }
  SUBCASE("empirical CDF matches F") {
    for (auto dist : {ArrivalDistribution::exponential(), ArrivalDistribution::uniform()}) {
      const auto xi = sample_priority_field(100'001, dist, SeedSpec{5, 0});
      std::vector<double> v(xi.values().begin(), xi.values().end());
      CHECK(ks_distance(v, [dist](double t) { return dist.cdf(t); }) < 0.01);
    }
  }
  SUBCASE("sampled priorities are distinct") {
    const auto xi = sample_priority_field(100'000, ArrivalDistribution::exponential(), SeedSpec{6, 0});
    std::set<double> seen(xi.values().begin(), xi.values().end());
    CHECK(seen.size() == xi.size());
  }
}

TEST_CASE("ties are ordered by the smaller slot") {
  const auto xi = PriorityField::finite({0.5, 0.5, 0.25});
  CHECK(xi.precedes(1, 2));
  CHECK_FALSE(xi.precedes(2, 1));
  CHECK(xi.arrival_order() == std::vector<std::int64_t>{3, 1, 2});
}

TEST_CASE("arrival distribution") {
  const auto e = ArrivalDistribution::exponential();
  const auto u = ArrivalDistribution::uniform();
  CHECK(e.cdf(0.0) == 0.0);
  CHECK(u.cdf(0.0) == 0.0);
  CHECK(e.cdf(std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(u.cdf(2.0) == 1.0);
  CHECK(e.cdf(1e9) == 1.0);
  for (double p : {0.0, 0.1, 0.5, 0.9, 0.999}) {
    CHECK(e.cdf(e.quantile(p)) == doctest::Approx(p).epsilon(1e-12));
    CHECK(u.cdf(u.quantile(p)) == doctest::Approx(p));
  }
  double previous = 0.0;
  for (double t = 0.0; t < 20.0; t += 0.125) {
    CHECK(e.cdf(t) >= previous);
    previous = e.cdf(t);
  }
  CHECK(parse_dist_kind("exp") == DistKind::Exponential);
  CHECK(parse_dist_kind("uniform") == DistKind::Uniform);
  CHECK_THROWS_AS(parse_dist_kind("gamma"), Error);
}
