#include "parking/trials.hpp"

#include "parking/finite.hpp"

#include <algorithm>
#include <cmath>

namespace parking {

namespace {

// Separates the coupon-collector streams from the parking streams.
constexpr std::uint64_t kCouponStream = 0x636f75706f6eULL;

}  // namespace

TrialOutcome simulate_poissonized(std::size_t n, SeedSpec seed, bool keep_counts) {
  if (n < 2) throw InvalidSize("parking needs at least 2 sites, got " + std::to_string(n));
  Rng rng(seed);
  // First pass: first arrivals decide the configuration and tau_star.
  const auto xi = sample_priority_field(n, ArrivalDistribution::exponential(), rng);
  const auto outcome = construct_by_runs(xi);

  TrialOutcome out;
  out.M = outcome.M;
  for (double tau : *outcome.per_car_times)
    if (tau != kNever) out.tau_star = std::max(out.tau_star, tau);

  // Second pass: extend each slot's arrival stream up to tau_star. Arrivals
  // after tau_star are never drawn.
  const std::size_t slots = n - 1;
  if (keep_counts) out.per_slot_counts.emplace(slots, 0);
  std::int64_t first = 1;
  std::size_t total = 0;
  for (std::size_t k = 0; k < slots; ++k) {
    const auto slot = static_cast<std::int64_t>(k + 1);
    if (xi.precedes(slot, first)) first = slot;
    double arrival = xi[slot];
    std::uint32_t count = 0;
    while (arrival <= out.tau_star) {
      ++count;
      arrival += rng.exponential();
    }
    total += count;
    if (keep_counts) (*out.per_slot_counts)[k] = count;
  }
  out.T = total;
  out.first_slot = first;
  return out;
}

double TauStarStats::fraction_at_least(double threshold) const {
  if (samples.empty()) return 0.0;
  const auto hits = std::count_if(samples.begin(), samples.end(), [threshold](double v) { return v >= threshold; });
  return static_cast<double>(hits) / static_cast<double>(samples.size());
}

TauStarStats tau_star_statistics(std::size_t n, std::size_t replicas, std::uint64_t seed, unsigned threads) {
  if (replicas == 0) throw Error("replicas must be positive");
  TauStarStats stats;
  stats.n = n;
  stats.samples = run_replicas(replicas, threads,
                               [&](std::uint64_t r) { return simulate_poissonized(n, SeedSpec{seed, r}).tau_star; });
  stats.summary = summarize_with_quantiles(stats.samples);
  return stats;
}

std::uint64_t coupon_collector_draws(std::size_t k, Rng& rng) {
  if (k == 0) throw InvalidSize("coupon collector needs at least one coupon");
  // Sum of geometric waiting times: with j coupons seen, a new one
  // arrives with probability (k - j) / k.
  std::uint64_t draws = 1;
  const double kd = static_cast<double>(k);
  for (std::size_t seen = 1; seen < k; ++seen) {
    const double miss = static_cast<double>(seen) / kd;
    const double u = rng.uniform_pos();
    draws += 1 + static_cast<std::uint64_t>(std::floor(std::log(u) / std::log(miss)));
  }
  return draws;
}

SampleSummary coupon_collector_mc(std::size_t k, std::size_t replicas, std::uint64_t seed, unsigned threads) {
  if (replicas == 0) throw Error("replicas must be positive");
  const auto draws = run_replicas(replicas, threads, [&](std::uint64_t r) {
    Rng rng(SeedSpec{seed ^ kCouponStream, r});
    return static_cast<double>(coupon_collector_draws(k, rng));
  });
  return summarize(draws);
}

double coupon_collector_mean(std::size_t k) {
  double harmonic = 0.0;
  for (std::size_t j = k; j >= 1; --j) harmonic += 1.0 / static_cast<double>(j);
  return static_cast<double>(k) * harmonic;
}

TrialsRow trials_row(std::size_t n, std::size_t replicas, std::uint64_t seed, unsigned threads) {
  if (n < 3) throw InvalidSize("trials sweep needs n >= 3, got " + std::to_string(n));
  if (replicas == 0) throw Error("replicas must be positive");
  const auto outcomes = run_replicas(replicas, threads, [&](std::uint64_t r) {
    const auto out = simulate_poissonized(n, SeedSpec{seed, r});
    return std::pair<double, double>(static_cast<double>(out.T), out.tau_star);
  });
  const double scale = static_cast<double>(n) * std::log(static_cast<double>(n));
  std::vector<double> ts(replicas);
  std::vector<double> ratios(replicas);
  std::vector<double> taus(replicas);
  std::size_t upper = 0;
  for (std::size_t r = 0; r < replicas; ++r) {
    ts[r] = outcomes[r].first;
    ratios[r] = ts[r] / scale;
    taus[r] = outcomes[r].second;
    if (ratios[r] >= 1.2) ++upper;
  }
  TrialsRow row;
  row.n = n;
  row.replicas = replicas;
  row.T = summarize(ts);
  row.ratio = summarize(ratios);
  row.tau_star = summarize(taus);
  row.coupon = coupon_collector_mc(n - 1, replicas, seed, threads);
  row.coupon_exact = coupon_collector_mean(n - 1);
  row.upper_tail = static_cast<double>(upper) / static_cast<double>(replicas);
  return row;
}

std::vector<TrialsRow> trials_ratio_sweep(std::span<const std::size_t> n_list, std::size_t replicas,
                                          std::uint64_t seed, unsigned threads) {
  std::vector<TrialsRow> rows;
  rows.reserve(n_list.size());
  for (auto n : n_list) rows.push_back(trials_row(n, replicas, seed, threads));
  return rows;
}

}  // namespace parking
