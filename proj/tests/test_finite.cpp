#include "parking/exact.hpp"
#include "parking/finite.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace parking;

namespace {

std::string bits_of(const JammedOutcome& out) { return out.final_config.to_string(); }

void check_jammed_invariants(const JammedOutcome& out) {
  const auto& c = out.final_config;
  const std::size_t n = c.size();
  CHECK(c.jammed());
  CHECK(recount_free_pairs(c) == 0);
  CHECK(out.M == c.occupied_count());
  CHECK(out.M % 2 == 0);
  CHECK(2 * out.M >= n);
  CHECK(out.M <= n);
  CHECK(2 * out.T >= out.M);
}

}  // namespace

TEST_CASE("simulate_direct on the smallest intervals") {
  for (std::uint64_t r = 0; r < 50; ++r) {
    const auto two = simulate_direct(2, SeedSpec{1, r});
    CHECK(two.M == 2);
    CHECK(two.T == 1);
    const auto three = simulate_direct(3, SeedSpec{1, r});
    CHECK(three.M == 2);
    CHECK(three.T == 1);
  }
  CHECK_THROWS_AS(simulate_direct(1, SeedSpec{}), InvalidSize);
}

TEST_CASE("simulate_direct n=4 averages") {
  // Exact values 10/3 and 3 come from enumerating the three-slot chain.
  const auto stats = measure_M_T(4, 100'000, 2024, 1);
  CHECK(std::fabs(stats.M.mean - 10.0 / 3.0) < 3.0 * stats.M.std_error);
  CHECK(std::fabs(stats.T.mean - 3.0) < 3.0 * stats.T.std_error);
}

TEST_CASE("jammed outcomes satisfy the structural invariants") {
  for (std::uint64_t r = 0; r < 300; ++r) {
    const std::size_t n = 2 + r % 60;
    check_jammed_invariants(simulate_direct(n, SeedSpec{5, r}));
    const auto xi = sample_priority_field(n, ArrivalDistribution::exponential(), SeedSpec{6, r});
    check_jammed_invariants(construct_from_priorities(xi));
  }
}

TEST_CASE("construct_from_priorities worked examples") {
  const auto a = construct_from_priorities(PriorityField::finite({1, 3, 2}));
  CHECK(bits_of(a) == "1111");
  CHECK(a.M == 4);

  const auto b = construct_from_priorities(PriorityField::finite({2, 4, 3, 1}), true);
  CHECK(bits_of(b) == "11011");
  CHECK(b.M == 4);
  CHECK_FALSE(b.final_config.occupied(3));
  // Slot 4 parks at time 1, slot 1 at time 2; slots 3 and 2 are blocked.
  REQUIRE(b.per_car_times.has_value());
  CHECK(*b.per_car_times == std::vector<double>{2, 2, kNever, 1, 1});
  CHECK(b.T == 2);

  const auto c = construct_from_priorities(PriorityField::finite({0.7}));
  CHECK(c.M == 2);
}

TEST_CASE("rise_descent_at") {
  SUBCASE("increasing field, last site") {
    const auto rd = rise_descent_at(PriorityField::finite({1, 2, 3, 4}), 5);
    CHECK(rd.rise_length == 4);
    CHECK(rd.descent_length == 0);
  }
  SUBCASE("interior local maximum") {
    const auto rd = rise_descent_at(PriorityField::finite({2, 4, 3, 1}), 3);
    CHECK(rd.rise_length == 2);
    CHECK(rd.descent_length == 2);
  }
  SUBCASE("unit runs") {
    const auto rd = rise_descent_at(PriorityField::finite({5, 1, 2, 6}), 3);
    CHECK(rd.rise_length == 1);
    CHECK(rd.descent_length == 1);
  }
  SUBCASE("first site has an empty rise") {
    const auto rd = rise_descent_at(PriorityField::finite({3, 1, 2}), 1);
    CHECK(rd.rise_length == 0);
    CHECK(rd.descent_length == 2);
  }
}

TEST_CASE("classify_site") {
  const auto xi = PriorityField::finite({2, 4, 3, 1});
  CHECK(classify_site(xi, 3) == SiteState::Vacant);
  for (std::int64_t site : {1, 2, 4, 5}) CHECK(classify_site(xi, site) == SiteState::Occupied);

  SUBCASE("both sites of a local minimum are occupied") {
    for (std::uint64_t r = 0; r < 200; ++r) {
      const auto field = sample_priority_field(30, ArrivalDistribution::uniform(), SeedSpec{8, r});
      for (std::int64_t slot = 1; slot <= 29; ++slot) {
        const bool left_higher = slot == 1 || field.precedes(slot, slot - 1);
        const bool right_higher = slot == 29 || field.precedes(slot, slot + 1);
        if (left_higher && right_higher) {
          CHECK(classify_site(field, slot) == SiteState::Occupied);
          CHECK(classify_site(field, slot + 1) == SiteState::Occupied);
        }
      }
    }
  }
}

TEST_CASE("run-parity classifier matches the sequential construction for every ordering, n <= 8") {
  for (std::size_t n = 2; n <= 8; ++n) {
    std::vector<double> ranks(n - 1);
    std::iota(ranks.begin(), ranks.end(), 1.0);
    std::size_t orderings = 0;
    do {
      ++orderings;
      const auto xi = PriorityField::finite(ranks);
      const auto seq = construct_from_priorities(xi, true);
      const auto runs = construct_by_runs(xi);
      REQUIRE(seq.final_config == runs.final_config);
      REQUIRE(*seq.per_car_times == *runs.per_car_times);
      REQUIRE(seq.T == runs.T);
      for (std::size_t site = 1; site <= n; ++site) {
        const bool vacant = classify_site(xi, static_cast<std::int64_t>(site)) == SiteState::Vacant;
        REQUIRE(vacant == !seq.final_config.occupied(site));
      }
    } while (std::next_permutation(ranks.begin(), ranks.end()));
    CHECK(orderings == static_cast<std::size_t>(std::tgamma(static_cast<double>(n))));
  }
}

TEST_CASE("construct_by_runs agrees with the sequential construction on random fields") {
  for (std::uint64_t r = 0; r < 200; ++r) {
    const std::size_t n = 2 + (r * 37) % 500;
    const auto xi = sample_priority_field(n, ArrivalDistribution::exponential(), SeedSpec{12, r});
    const auto seq = construct_from_priorities(xi, true);
    const auto runs = construct_by_runs(xi);
    REQUIRE(seq.final_config == runs.final_config);
    REQUIRE(*seq.per_car_times == *runs.per_car_times);
    REQUIRE(seq.T == runs.T);
  }
}

TEST_CASE("direct draws and priority construction give the same law of M, n = 10") {
  const std::size_t n = 10;
  const std::size_t replicas = 100'000;
  const auto direct = run_replicas(replicas, 0, [&](std::uint64_t r) { return simulate_direct(n, SeedSpec{31, r}).M; });
  const auto constructed = run_replicas(replicas, 0, [&](std::uint64_t r) {
    return construct_from_priorities(sample_priority_field(n, ArrivalDistribution::exponential(), SeedSpec{32, r})).M;
  });
  CHECK(chi_square_two_sample(histogram(direct), histogram(constructed)).p_value > 0.001);
}

TEST_CASE("measure_M_T") {
  const auto two = measure_M_T(2, 100, 1, 1);
  CHECK(two.M.mean == 2.0);
  CHECK(two.M.variance == 0.0);

  const std::size_t n = 1000;
  const auto big = measure_M_T(n, 10'000, 77);
  const double exact = static_cast<double>(expected_M_float(n)) / n;
  CHECK(std::fabs(big.M.mean / n - exact) < 3.0 * big.M.std_error / n);
  CHECK(std::fabs(big.M.mean / n - 0.8646647) < 0.01);
  CHECK_THROWS_AS(measure_M_T(10, 0, 1), Error);
}
