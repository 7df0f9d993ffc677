#pragma once

#include "parking/core.hpp"
#include "parking/stats.hpp"

#include <limits>
#include <optional>

namespace parking {

inline constexpr double kNever = std::numeric_limits<double>::infinity();

struct JammedOutcome {
  ParkingConfiguration final_config{0};
  std::size_t M = 0;
  // simulate_direct: every draw, rejected ones included, up to the jamming
  // draw. Priority constructions: turns taken up to the last successful car.
  std::size_t T = 0;
  // Timed mode only: arrival time of the car covering site i at index i-1,
  // kNever for vacant sites.
  std::optional<std::vector<double>> per_car_times;
};

// Run lengths at a site. Zero-length runs occur only at the ends of a
// finite interval (site 1 has no slot to its left, site n none to its right).
struct RiseDescent {
  std::size_t rise_length = 0;
  std::size_t descent_length = 0;
};

enum class SiteState { Occupied, Vacant };

// Sequential uniform draws over slots 1..n-1 until no free pair remains.
JammedOutcome simulate_direct(std::size_t n, Rng& rng);
JammedOutcome simulate_direct(std::size_t n, SeedSpec seed);

// Replays slots in increasing priority; a car parks when both its sites are
// still free. With `timed`, records the arrival time of every car.
JammedOutcome construct_from_priorities(const PriorityField& xi, bool timed = false);

// Same outcome as construct_from_priorities, computed in one linear pass
// from the monotone runs of xi around every site. Always timed.
JammedOutcome construct_by_runs(const PriorityField& xi);

// Rise: slots in the maximal increasing run of xi ending at slot i-1.
// Descent: slots in the maximal decreasing run starting at slot i.
RiseDescent rise_descent_at(const PriorityField& xi, std::int64_t site);

// Vacant iff both run lengths are even.
SiteState classify_site(const PriorityField& xi, std::int64_t site);

struct MTStatistics {
  std::size_t n = 0;
  SampleSummary M;
  SampleSummary T;
};

MTStatistics measure_M_T(std::size_t n, std::size_t replicas, std::uint64_t seed, unsigned threads = 0);

}  // namespace parking
