#pragma once

#include "parking/core.hpp"
#include "parking/finite.hpp"
#include "parking/stats.hpp"

namespace parking {

// Maximum number of slots generated on either side of the origin before a
// replica is abandoned with WindowOverflow.
inline constexpr std::size_t kWindowCap = 10'000;

// Priorities on the whole line, drawn lazily outward from slot 0. Slot -1
// and slot 0 are the two slots covering site 0.
class InfiniteField {
public:
  InfiniteField(ArrivalDistribution dist, SeedSpec seed, std::size_t cap = kWindowCap);

  double operator[](std::int64_t slot);
  bool precedes(std::int64_t a, std::int64_t b) {
    const double va = (*this)[a];
    const double vb = (*this)[b];
    return va < vb || (va == vb && a < b);
  }

  RiseDescent rise_descent_at(std::int64_t site);

  // Occupancy and arrival time (kNever if vacant) of the car covering site.
  struct SiteResult {
    bool occupied = false;
    double tau = kNever;
    RiseDescent runs;
  };
  SiteResult classify(std::int64_t site);

  std::int64_t leftmost() const { return -static_cast<std::int64_t>(left_.size()); }
  std::int64_t rightmost() const { return static_cast<std::int64_t>(right_.size()) - 1; }
  // Every slot generated so far, as one contiguous field.
  PriorityField materialized() const;

private:
  ArrivalDistribution dist_;
  Rng rng_;
  std::size_t cap_;
  std::vector<double> right_;  // slots 0, 1, 2, ...
  std::vector<double> left_;   // slots -1, -2, ...
};

struct WindowSample {
  // Slots m-1 .. m'+1, where m and m' are the nearest local minima of xi
  // to the left (rise start) and right (descent end) of site 0.
  PriorityField xi_window;
  bool occupied = false;
  double tau = kNever;
  RiseDescent runs;
};

WindowSample sample_site_infinite(ArrivalDistribution dist, SeedSpec seed);

struct VacancyEstimate {
  SampleSummary vacant;        // indicator X(0) = 0
  SampleSummary even_rise;     // indicator of an even rise at 0
  SampleSummary even_descent;  // indicator of an even descent at 0
  std::size_t max_half_window = 0;
};

VacancyEstimate vacancy_mc(std::size_t replicas, std::uint64_t seed,
                           ArrivalDistribution dist = ArrivalDistribution::exponential(), unsigned threads = 0);

// Estimates of P(tau_0 <= t) at every t in the grid, all from the same replicas.
std::vector<SampleSummary> density_curve_mc(std::span<const double> t_grid, ArrivalDistribution dist,
                                            std::size_t replicas, std::uint64_t seed, unsigned threads = 0);

SampleSummary density_at_time_mc(double t, ArrivalDistribution dist, std::size_t replicas, std::uint64_t seed,
                                 unsigned threads = 0);

// Estimates of f(t) = P(xi_0 <= t and the descent at 0 is odd).
std::vector<SampleSummary> odd_descent_time_curve_mc(std::span<const double> t_grid, ArrivalDistribution dist,
                                                     std::size_t replicas, std::uint64_t seed, unsigned threads = 0);

SampleSummary odd_descent_time_prob_mc(double t, ArrivalDistribution dist, std::size_t replicas, std::uint64_t seed,
                                       unsigned threads = 0);

// Cov(X(0), X(lag)); with `reflected`, Cov(X(0), X(-lag)) instead.
CovarianceEstimate autocovariance_mc(std::size_t lag, std::size_t replicas, std::uint64_t seed,
                                     bool reflected = false, unsigned threads = 0);

}  // namespace parking
