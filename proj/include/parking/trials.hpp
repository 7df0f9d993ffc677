#pragma once

// Poissonized arrivals: every slot receives cars at the points of its own
// unit-rate Poisson process. The first arrivals drive the parking, later
// ones are the rejected attempts counted by T.

#include "parking/core.hpp"
#include "parking/stats.hpp"

#include <optional>

namespace parking {

struct TrialOutcome {
  double tau_star = 0.0;   // arrival time of the last car that parks
  std::size_t T = 0;       // attempts at times <= tau_star, over all slots
  std::size_t M = 0;       // occupied sites at the end
  std::int64_t first_slot = 0;  // slot of the overall first arrival
  std::optional<std::vector<std::uint32_t>> per_slot_counts;
};

TrialOutcome simulate_poissonized(std::size_t n, SeedSpec seed, bool keep_counts = false);

struct TauStarStats {
  std::size_t n = 0;
  QuantileSummary summary;
  std::vector<double> samples;

  double fraction_at_least(double threshold) const;
};

TauStarStats tau_star_statistics(std::size_t n, std::size_t replicas, std::uint64_t seed, unsigned threads = 0);

// Draws needed to see each of k equally likely coupons at least once.
std::uint64_t coupon_collector_draws(std::size_t k, Rng& rng);
SampleSummary coupon_collector_mc(std::size_t k, std::size_t replicas, std::uint64_t seed, unsigned threads = 0);
// k * H_k
double coupon_collector_mean(std::size_t k);

struct TrialsRow {
  std::size_t n = 0;
  std::size_t replicas = 0;
  SampleSummary T;
  SampleSummary ratio;  // T / (n log n)
  SampleSummary coupon;  // over the n-1 slots
  double coupon_exact = 0.0;
  SampleSummary tau_star;
  double upper_tail = 0.0;  // fraction of replicas with T/(n log n) >= 1.2
};

TrialsRow trials_row(std::size_t n, std::size_t replicas, std::uint64_t seed, unsigned threads = 0);
std::vector<TrialsRow> trials_ratio_sweep(std::span<const std::size_t> n_list, std::size_t replicas,
                                          std::uint64_t seed, unsigned threads = 0);

}  // namespace parking
