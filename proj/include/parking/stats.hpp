#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <span>
#include <thread>
#include <type_traits>
#include <vector>

namespace parking {

struct SampleSummary {
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double std_error = 0.0;
};

SampleSummary summarize(std::span<const double> samples);

struct QuantileSummary {
  SampleSummary moments;
  double q05 = 0.0;
  double median = 0.0;
  double q95 = 0.0;
};

QuantileSummary summarize_with_quantiles(std::span<const double> samples);

// Number of worker threads to use for `requested` (0 = hardware default).
unsigned resolve_threads(unsigned requested);

// Runs job(replica_index) for every index in [0, replicas) and returns the
// results in index order, independent of the thread count.
template <class Job>
auto run_replicas(std::size_t replicas, unsigned threads, Job&& job)
    -> std::vector<std::invoke_result_t<Job&, std::uint64_t>> {
  using Result = std::invoke_result_t<Job&, std::uint64_t>;
  std::vector<Result> results(replicas);
  const unsigned workers = std::max(1u, std::min<unsigned>(resolve_threads(threads),
                                                           static_cast<unsigned>(std::max<std::size_t>(replicas, 1))));
  if (workers == 1) {
    for (std::size_t r = 0; r < replicas; ++r) results[r] = job(static_cast<std::uint64_t>(r));
    return results;
  }
  std::vector<std::exception_ptr> failures(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t r = w; r < replicas; r += workers) results[r] = job(static_cast<std::uint64_t>(r));
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& failure : failures)
    if (failure) std::rethrow_exception(failure);
  return results;
}

// Two-sample chi-square homogeneity test on integer-valued samples. Cells
// with small expected counts are pooled from the tails inward.
struct ChiSquareResult {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
};

ChiSquareResult chi_square_two_sample(const std::map<std::int64_t, std::size_t>& a,
                                      const std::map<std::int64_t, std::size_t>& b);

// Goodness of fit of observed counts against category probabilities.
ChiSquareResult chi_square_uniform(std::span<const std::size_t> counts);

template <class Range>
std::map<std::int64_t, std::size_t> histogram(const Range& values) {
  std::map<std::int64_t, std::size_t> h;
  for (auto v : values) ++h[static_cast<std::int64_t>(v)];
  return h;
}

// Kolmogorov-Smirnov distance between the empirical CDF of `samples` and cdf.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);

// Sample covariance of paired observations with a delta-method stderr.
struct CovarianceEstimate {
  double covariance = 0.0;
  double std_error = 0.0;
};

CovarianceEstimate covariance(std::span<const double> x, std::span<const double> y);

}  // namespace parking
