#include "parking/stats.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace parking {

SampleSummary summarize(std::span<const double> samples) {
  SampleSummary s;
  s.count = samples.size();
  if (s.count == 0) return s;
  // Welford, sequential so the result does not depend on threading.
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t k = 0;
  for (double x : samples) {
    ++k;
    const double delta = x - mean;
    mean += delta / static_cast<double>(k);
    m2 += delta * (x - mean);
  }
  s.mean = mean;
  if (s.count > 1) {
    s.variance = m2 / static_cast<double>(s.count - 1);
    s.std_error = std::sqrt(s.variance / static_cast<double>(s.count));
  }
  return s;
}

QuantileSummary summarize_with_quantiles(std::span<const double> samples) {
  QuantileSummary q;
  q.moments = summarize(samples);
  if (samples.empty()) return q;
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  auto at = [&](double p) {
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
  };
  q.q05 = at(0.05);
  q.median = at(0.5);
  q.q95 = at(0.95);
  return q;
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

namespace {

double chi_square_sf(double statistic, std::size_t dof) {
  if (dof == 0) return 1.0;
  return boost::math::gamma_q(static_cast<double>(dof) / 2.0, statistic / 2.0);
}

}  // namespace

ChiSquareResult chi_square_two_sample(const std::map<std::int64_t, std::size_t>& a,
                                      const std::map<std::int64_t, std::size_t>& b) {
  std::map<std::int64_t, std::pair<double, double>> cells;
  double na = 0.0;
  double nb = 0.0;
  for (auto [k, c] : a) { cells[k].first += static_cast<double>(c); na += static_cast<double>(c); }
  for (auto [k, c] : b) { cells[k].second += static_cast<double>(c); nb += static_cast<double>(c); }
  if (na == 0.0 || nb == 0.0) throw std::invalid_argument("chi-square needs two non-empty samples");
  const double total = na + nb;
  const double min_share = std::min(na, nb) / total;

  // Pool consecutive categories until each pooled cell expects >= 5 per sample.
  std::vector<std::pair<double, double>> pooled;
  std::pair<double, double> acc{0.0, 0.0};
  for (const auto& [key, counts] : cells) {
    acc.first += counts.first;
    acc.second += counts.second;
    if ((acc.first + acc.second) * min_share >= 5.0) {
      pooled.push_back(acc);
      acc = {0.0, 0.0};
    }
  }
  if (acc.first + acc.second > 0.0) {
    if (pooled.empty()) pooled.push_back(acc);
    else { pooled.back().first += acc.first; pooled.back().second += acc.second; }
  }

  ChiSquareResult result;
  for (auto [oa, ob] : pooled) {
    const double cell = oa + ob;
    const double ea = cell * na / total;
    const double eb = cell * nb / total;
    result.statistic += (oa - ea) * (oa - ea) / ea + (ob - eb) * (ob - eb) / eb;
  }
  result.dof = pooled.size() - 1;
  result.p_value = chi_square_sf(result.statistic, result.dof);
  return result;
}

ChiSquareResult chi_square_uniform(std::span<const std::size_t> counts) {
  ChiSquareResult result;
  if (counts.size() < 2) return result;
  const double total = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::size_t{0}));
  const double expected = total / static_cast<double>(counts.size());
  for (auto c : counts) {
    const double d = static_cast<double>(c) - expected;
    result.statistic += d * d / expected;
  }
  result.dof = counts.size() - 1;
  result.p_value = chi_square_sf(result.statistic, result.dof);
  return result;
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

CovarianceEstimate covariance(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("covariance: length mismatch");
  CovarianceEstimate est;
  const std::size_t n = x.size();
  if (n < 2) return est;
  const double mx = summarize(x).mean;
  const double my = summarize(y).mean;
  std::vector<double> products(n);
  for (std::size_t i = 0; i < n; ++i) products[i] = (x[i] - mx) * (y[i] - my);
  const auto s = summarize(products);
  est.covariance = s.mean * static_cast<double>(n) / static_cast<double>(n - 1);
  est.std_error = s.std_error;
  return est;
}

}  // namespace parking
