#include "parking/finite.hpp"

#include <cassert>

namespace parking {

namespace {

void require_sites(std::size_t n) {
  if (n < 2) throw InvalidSize("parking needs at least 2 sites, got " + std::to_string(n));
}

}  // namespace

JammedOutcome simulate_direct(std::size_t n, Rng& rng) {
  require_sites(n);
  JammedOutcome out;
  out.final_config = ParkingConfiguration(n);
  auto& config = out.final_config;
  const std::uint64_t slots = n - 1;
  std::size_t draws = 0;
  while (!config.jammed()) {
    ++draws;
    config.try_park(static_cast<std::size_t>(rng.below(slots)) + 1);
    assert(config.free_pair_count() == recount_free_pairs(config));
  }
  out.T = draws;
  out.M = config.occupied_count();
  return out;
}

JammedOutcome simulate_direct(std::size_t n, SeedSpec seed) {
  Rng rng(seed);
  return simulate_direct(n, rng);
}

JammedOutcome construct_from_priorities(const PriorityField& xi, bool timed) {
  const std::size_t n = xi.site_count();
  require_sites(n);
  JammedOutcome out;
  out.final_config = ParkingConfiguration(n);
  auto& config = out.final_config;
  if (timed) out.per_car_times.emplace(n, kNever);

  std::size_t turns = 0;
  for (std::int64_t slot : xi.arrival_order()) {
    if (config.jammed()) break;
    ++turns;
    const auto s = static_cast<std::size_t>(slot);
    if (config.try_park(s) && timed) {
      (*out.per_car_times)[s - 1] = xi[slot];
      (*out.per_car_times)[s] = xi[slot];
    }
  }
  out.T = turns;
  out.M = config.occupied_count();
  return out;
}

JammedOutcome construct_by_runs(const PriorityField& xi) {
  const std::size_t n = xi.site_count();
  require_sites(n);
  const std::size_t slots = n - 1;

  // ascending[k]: length of the increasing run ending at slot k+1.
  // descending[k]: length of the decreasing run starting at slot k+1.
  std::vector<std::uint32_t> ascending(slots);
  std::vector<std::uint32_t> descending(slots);
  ascending[0] = 1;
  for (std::size_t k = 1; k < slots; ++k) {
    const auto slot = static_cast<std::int64_t>(k + 1);
    ascending[k] = xi.precedes(slot - 1, slot) ? ascending[k - 1] + 1 : 1;
  }
  descending[slots - 1] = 1;
  for (std::size_t k = slots - 1; k-- > 0;) {
    const auto slot = static_cast<std::int64_t>(k + 1);
    descending[k] = xi.precedes(slot + 1, slot) ? descending[k + 1] + 1 : 1;
  }

  std::vector<std::uint8_t> bits(n, 0);
  std::vector<double> times(n, kNever);
  std::int64_t last_slot = 0;
  for (std::size_t site = 1; site <= n; ++site) {
    const std::uint32_t rise = site >= 2 ? ascending[site - 2] : 0;
    const std::uint32_t descent = site <= slots ? descending[site - 1] : 0;
    const bool rise_odd = rise % 2 == 1;
    const bool descent_odd = descent % 2 == 1;
    if (!rise_odd && !descent_odd) continue;
    const auto left = static_cast<std::int64_t>(site) - 1;
    const auto right = static_cast<std::int64_t>(site);
    std::int64_t car;
    if (rise_odd && descent_odd) car = xi.precedes(left, right) ? left : right;
    else car = rise_odd ? left : right;
    bits[site - 1] = 1;
    times[site - 1] = xi[car];
    if (last_slot == 0 || xi.precedes(last_slot, car)) last_slot = car;
  }

  JammedOutcome out;
  out.final_config = ParkingConfiguration::from_bits(bits);
  out.M = out.final_config.occupied_count();
  std::size_t turns = 0;
  for (std::int64_t slot = 1; slot <= static_cast<std::int64_t>(slots); ++slot)
    if (slot == last_slot || xi.precedes(slot, last_slot)) ++turns;
  out.T = turns;
  out.per_car_times = std::move(times);
  return out;
}

RiseDescent rise_descent_at(const PriorityField& xi, std::int64_t site) {
  RiseDescent rd;
  std::int64_t slot = site - 1;
  if (xi.contains(slot)) {
    rd.rise_length = 1;
    while (xi.contains(slot - 1) && xi.precedes(slot - 1, slot)) {
      --slot;
      ++rd.rise_length;
    }
  }
  slot = site;
  if (xi.contains(slot)) {
    rd.descent_length = 1;
    while (xi.contains(slot + 1) && xi.precedes(slot + 1, slot)) {
      ++slot;
      ++rd.descent_length;
    }
  }
  return rd;
}

SiteState classify_site(const PriorityField& xi, std::int64_t site) {
  const auto rd = rise_descent_at(xi, site);
  return rd.rise_length % 2 == 0 && rd.descent_length % 2 == 0 ? SiteState::Vacant : SiteState::Occupied;
}

MTStatistics measure_M_T(std::size_t n, std::size_t replicas, std::uint64_t seed, unsigned threads) {
  require_sites(n);
  if (replicas == 0) throw Error("replicas must be positive");
  auto outcomes = run_replicas(replicas, threads, [&](std::uint64_t r) {
    const auto out = simulate_direct(n, SeedSpec{seed, r});
    return std::pair<double, double>(static_cast<double>(out.M), static_cast<double>(out.T));
  });
  std::vector<double> ms(replicas);
  std::vector<double> ts(replicas);
  for (std::size_t r = 0; r < replicas; ++r) {
    ms[r] = outcomes[r].first;
    ts[r] = outcomes[r].second;
  }
  return {n, summarize(ms), summarize(ts)};
}

}  // namespace parking
