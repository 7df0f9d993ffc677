#include "parking/infinite.hpp"

#include <algorithm>

namespace parking {

InfiniteField::InfiniteField(ArrivalDistribution dist, SeedSpec seed, std::size_t cap)
    : dist_(dist), rng_(seed), cap_(cap) {}

double InfiniteField::operator[](std::int64_t slot) {
  // Grow contiguously toward `slot` so the draw sequence is fixed by the
  // order of queries alone.
  if (slot >= 0) {
    const auto k = static_cast<std::size_t>(slot);
    if (k >= cap_) throw WindowOverflow("infinite window exceeded " + std::to_string(cap_) + " slots to the right");
    while (right_.size() <= k) right_.push_back(dist_.sample(rng_));
    return right_[k];
  }
  const auto k = static_cast<std::size_t>(-slot - 1);
  if (k >= cap_) throw WindowOverflow("infinite window exceeded " + std::to_string(cap_) + " slots to the left");
  while (left_.size() <= k) left_.push_back(dist_.sample(rng_));
  return left_[k];
}

RiseDescent InfiniteField::rise_descent_at(std::int64_t site) {
  RiseDescent rd{1, 1};
  for (std::int64_t slot = site - 1; precedes(slot - 1, slot); --slot) ++rd.rise_length;
  for (std::int64_t slot = site; precedes(slot + 1, slot); ++slot) ++rd.descent_length;
  return rd;
}

InfiniteField::SiteResult InfiniteField::classify(std::int64_t site) {
  SiteResult res;
  res.runs = rise_descent_at(site);
  const bool rise_odd = res.runs.rise_length % 2 == 1;
  const bool descent_odd = res.runs.descent_length % 2 == 1;
  if (!rise_odd && !descent_odd) return res;
  const std::int64_t left = site - 1;
  const std::int64_t right = site;
  std::int64_t car;
  if (rise_odd && descent_odd) car = precedes(left, right) ? left : right;
  else car = rise_odd ? left : right;
  res.occupied = true;
  res.tau = (*this)[car];
  return res;
}

PriorityField InfiniteField::materialized() const {
  std::vector<double> values(left_.rbegin(), left_.rend());
  values.insert(values.end(), right_.begin(), right_.end());
  return PriorityField(std::move(values), leftmost());
}

WindowSample sample_site_infinite(ArrivalDistribution dist, SeedSpec seed) {
  InfiniteField field(dist, seed);
  const auto site = field.classify(0);
  WindowSample out;
  out.occupied = site.occupied;
  out.tau = site.tau;
  out.runs = site.runs;
  out.xi_window = field.materialized();
  return out;
}

namespace {

template <class Fn>
std::vector<double> indicator_samples(std::size_t replicas, unsigned threads, Fn&& fn) {
  return run_replicas(replicas, threads, std::forward<Fn>(fn));
}

std::vector<SampleSummary> threshold_curve(std::span<const double> t_grid, const std::vector<double>& times) {
  std::vector<SampleSummary> out;
  out.reserve(t_grid.size());
  std::vector<double> hits(times.size());
  for (double t : t_grid) {
    std::transform(times.begin(), times.end(), hits.begin(), [t](double tau) { return tau <= t ? 1.0 : 0.0; });
    out.push_back(summarize(hits));
  }
  return out;
}

}  // namespace

VacancyEstimate vacancy_mc(std::size_t replicas, std::uint64_t seed, ArrivalDistribution dist, unsigned threads) {
  struct Draw {
    RiseDescent runs;
  };
  const auto draws = run_replicas(replicas, threads, [&](std::uint64_t r) {
    InfiniteField field(dist, SeedSpec{seed, r});
    return Draw{field.rise_descent_at(0)};
  });
  std::vector<double> vacant(replicas);
  std::vector<double> even_rise(replicas);
  std::vector<double> even_descent(replicas);
  VacancyEstimate est;
  for (std::size_t r = 0; r < replicas; ++r) {
    const auto& rd = draws[r].runs;
    even_rise[r] = rd.rise_length % 2 == 0 ? 1.0 : 0.0;
    even_descent[r] = rd.descent_length % 2 == 0 ? 1.0 : 0.0;
    vacant[r] = even_rise[r] * even_descent[r];
    est.max_half_window = std::max({est.max_half_window, rd.rise_length, rd.descent_length});
  }
  est.vacant = summarize(vacant);
  est.even_rise = summarize(even_rise);
  est.even_descent = summarize(even_descent);
  return est;
}

std::vector<SampleSummary> density_curve_mc(std::span<const double> t_grid, ArrivalDistribution dist,
                                            std::size_t replicas, std::uint64_t seed, unsigned threads) {
  const auto taus = indicator_samples(replicas, threads, [&](std::uint64_t r) {
    InfiniteField field(dist, SeedSpec{seed, r});
    return field.classify(0).tau;
  });
  return threshold_curve(t_grid, taus);
}

SampleSummary density_at_time_mc(double t, ArrivalDistribution dist, std::size_t replicas, std::uint64_t seed,
                                 unsigned threads) {
  return density_curve_mc(std::span<const double>(&t, 1), dist, replicas, seed, threads).front();
}

std::vector<SampleSummary> odd_descent_time_curve_mc(std::span<const double> t_grid, ArrivalDistribution dist,
                                                     std::size_t replicas, std::uint64_t seed, unsigned threads) {
  // Only the descent side is needed: xi_0, xi_1, ... until the run ends.
  const auto times = indicator_samples(replicas, threads, [&](std::uint64_t r) {
    InfiniteField field(dist, SeedSpec{seed, r});
    std::size_t length = 1;
    for (std::int64_t slot = 0; field.precedes(slot + 1, slot); ++slot) ++length;
    return length % 2 == 1 ? field[0] : kNever;
  });
  return threshold_curve(t_grid, times);
}

SampleSummary odd_descent_time_prob_mc(double t, ArrivalDistribution dist, std::size_t replicas, std::uint64_t seed,
                                       unsigned threads) {
  return odd_descent_time_curve_mc(std::span<const double>(&t, 1), dist, replicas, seed, threads).front();
}

CovarianceEstimate autocovariance_mc(std::size_t lag, std::size_t replicas, std::uint64_t seed, bool reflected,
                                     unsigned threads) {
  const auto pairs = run_replicas(replicas, threads, [&](std::uint64_t r) {
    InfiniteField field(ArrivalDistribution::exponential(), SeedSpec{seed, r});
    const auto other = reflected ? -static_cast<std::int64_t>(lag) : static_cast<std::int64_t>(lag);
    const double x0 = field.classify(0).occupied ? 1.0 : 0.0;
    const double xk = field.classify(other).occupied ? 1.0 : 0.0;
    return std::pair<double, double>(x0, xk);
  });
  std::vector<double> x(replicas);
  std::vector<double> y(replicas);
  for (std::size_t r = 0; r < replicas; ++r) {
    x[r] = pairs[r].first;
    y[r] = pairs[r].second;
  }
  return covariance(x, y);
}

}  // namespace parking
