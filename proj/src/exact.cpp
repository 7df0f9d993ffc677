#include "parking/exact.hpp"

#include <algorithm>
#include <cmath>

namespace parking {

std::string to_string(const mpq_class& q) {
  mpq_class c(q);
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

mpq_class expected_M(std::size_t n) {
  if (n > kRationalMeanCap)
    throw CapExceeded("exact E[M_n] is limited to n <= " + std::to_string(kRationalMeanCap));
  std::vector<mpq_class> e(std::max<std::size_t>(n + 1, 2), 0);
  mpq_class prefix = 0;  // sum of e[0..k-2]
  for (std::size_t k = 2; k <= n; ++k) {
    prefix += e[k - 2];
    e[k] = 2 + mpq_class(2 * prefix) / mpq_class(static_cast<unsigned long>(k - 1));
    e[k].canonicalize();
  }
  return e[n];
}

std::vector<long double> expected_M_table(std::size_t n_max) {
  std::vector<long double> e(std::max<std::size_t>(n_max + 1, 2), 0.0L);
  long double prefix = 0.0L;  // sum of e[0..k-2]
  for (std::size_t k = 2; k <= n_max; ++k) {
    prefix += e[k - 2];
    e[k] = 2.0L + 2.0L * prefix / static_cast<long double>(k - 1);
  }
  e.resize(n_max + 1);
  return e;
}

long double expected_M_float(std::size_t n) { return expected_M_table(n)[n]; }

long double MDistribution::mean() const {
  long double m = 0.0L;
  for (const auto& [value, p] : floating) m += static_cast<long double>(value) * p;
  return m;
}

namespace {

std::size_t slot_count(std::size_t sites) { return sites >= 2 ? sites - 1 : 0; }

MDistribution distribution_exact(std::size_t n) {
  // counts[k][m]: orderings of the k-1 slots of a k-site interval with M = m.
  std::vector<mpz_class> factorial(n + 1);
  factorial[0] = 1;
  for (std::size_t j = 1; j <= n; ++j) factorial[j] = factorial[j - 1] * static_cast<unsigned long>(j);

  std::vector<std::vector<mpz_class>> counts(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    counts[k].assign(k + 1, 0);
    if (k < 2) {
      counts[k][0] = 1;
      continue;
    }
    const std::size_t rest = slot_count(k) - 1;
    for (std::size_t first = 1; first <= k - 1; ++first) {
      const std::size_t left = first - 1;
      const std::size_t right = k - first - 1;
      // Interleavings of the left and right slot orders among the remaining
      // slots; the two blocked neighbours of the first car are free.
      const mpz_class weight = factorial[rest] / (factorial[slot_count(left)] * factorial[slot_count(right)]);
      const auto& cl = counts[left];
      const auto& cr = counts[right];
      for (std::size_t a = 0; a < cl.size(); ++a) {
        if (sgn(cl[a]) == 0) continue;
        const mpz_class wa = weight * cl[a];
        for (std::size_t b = 0; b < cr.size(); ++b) {
          if (sgn(cr[b]) == 0) continue;
          counts[k][a + b + 2] += wa * cr[b];
        }
      }
    }
  }

  MDistribution d;
  d.n = n;
  d.exact = true;
  const mpz_class& total = factorial[slot_count(n)];
  for (std::size_t m = 0; m < counts[n].size(); ++m) {
    if (sgn(counts[n][m]) == 0) continue;
    mpq_class p(counts[n][m], total);
    p.canonicalize();
    d.floating[m] = static_cast<long double>(p.get_d());
    d.rational.emplace(m, std::move(p));
  }
  return d;
}

MDistribution distribution_float(std::size_t n) {
  std::vector<std::vector<long double>> probs(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    probs[k].assign(k + 1, 0.0L);
    if (k < 2) {
      probs[k][0] = 1.0L;
      continue;
    }
    const long double weight = 1.0L / static_cast<long double>(k - 1);
    for (std::size_t first = 1; first <= k - 1; ++first) {
      const auto& pl = probs[first - 1];
      const auto& pr = probs[k - first - 1];
      for (std::size_t a = 0; a < pl.size(); ++a) {
        if (pl[a] == 0.0L) continue;
        const long double wa = weight * pl[a];
        for (std::size_t b = 0; b < pr.size(); ++b)
          if (pr[b] != 0.0L) probs[k][a + b + 2] += wa * pr[b];
      }
    }
  }
  MDistribution d;
  d.n = n;
  d.exact = false;
  for (std::size_t m = 0; m < probs[n].size(); ++m)
    if (probs[n][m] != 0.0L) d.floating[m] = probs[n][m];
  return d;
}

}  // namespace

MDistribution distribution_M(std::size_t n, std::size_t rational_cap) {
  return n <= rational_cap ? distribution_exact(n) : distribution_float(n);
}

mpq_class partial_sum_S(std::size_t k) {
  mpq_class sum = 0;
  mpz_class factorial = 1;  // (2l+1)!
  for (std::size_t l = 1; l <= k; ++l) {
    factorial *= static_cast<unsigned long>(2 * l);
    factorial *= static_cast<unsigned long>(2 * l + 1);
    sum += mpq_class(mpz_class(static_cast<unsigned long>(2 * l)), factorial);
  }
  sum.canonicalize();
  return sum;
}

mpq_class even_run_probability(std::size_t slots) {
  // A run of exactly l < slots has probability l/(l+1)!; the run covering
  // all slots up to the interval end has probability 1/slots!.
  mpq_class p = 0;
  mpz_class factorial = 1;  // (l+1)!
  for (std::size_t l = 1; l < slots; ++l) {
    factorial *= static_cast<unsigned long>(l + 1);
    if (l % 2 == 0) p += mpq_class(mpz_class(static_cast<unsigned long>(l)), factorial);
  }
  if (slots % 2 == 0) {
    mpz_class full = 1;
    for (std::size_t j = 2; j <= slots; ++j) full *= static_cast<unsigned long>(j);
    p += mpq_class(1, full);
  }
  p.canonicalize();
  return p;
}

long double even_run_probability_float(std::size_t slots) {
  long double p = 0.0L;
  long double inv_factorial = 1.0L;  // 1/(l+1)!
  for (std::size_t l = 1; l < slots; ++l) {
    inv_factorial /= static_cast<long double>(l + 1);
    if (inv_factorial == 0.0L) break;
    if (l % 2 == 0) p += static_cast<long double>(l) * inv_factorial;
  }
  if (slots % 2 == 0) {
    long double full = 1.0L;
    for (std::size_t j = 2; j <= slots && full != 0.0L; ++j) full /= static_cast<long double>(j);
    p += full;
  }
  return p;
}

namespace {

void require_site(std::size_t n, std::size_t site) {
  if (n < 2) throw InvalidSize("parking needs at least 2 sites, got " + std::to_string(n));
  if (site < 1 || site > n) throw InvalidSize("site " + std::to_string(site) + " outside 1.." + std::to_string(n));
}

}  // namespace

mpq_class per_site_vacancy_exact(std::size_t n, std::size_t site) {
  require_site(n, site);
  mpq_class p = even_run_probability(site - 1) * even_run_probability(n - site);
  p.canonicalize();
  return p;
}

long double per_site_vacancy_float(std::size_t n, std::size_t site) {
  require_site(n, site);
  return even_run_probability_float(site - 1) * even_run_probability_float(n - site);
}

double coupling_bound(std::size_t n, std::size_t site) {
  const double i = static_cast<double>(site);
  const double rest = static_cast<double>(n) - i;
  return 2.0 * std::max(std::pow(2.0 / 3.0, i / 3.0 - 1.0), std::pow(2.0 / 3.0, rest / 3.0 - 1.0));
}

LimitConstants limit_constants() {
  const long double e2 = std::exp(-2.0L);
  return {1.0L - e2, e2, 1.0L - 3.0L * e2};
}

double density_closed_form(ArrivalDistribution dist, double t) { return -std::expm1(-2.0 * dist.cdf(t)); }

double odd_descent_closed_form(ArrivalDistribution dist, double t) { return -std::expm1(-dist.cdf(t)); }

DensityCurve density_curve_closed_form(ArrivalDistribution dist, std::span<const double> t_grid) {
  DensityCurve curve;
  curve.t.assign(t_grid.begin(), t_grid.end());
  curve.rho.reserve(t_grid.size());
  for (double t : t_grid) {
    if (t < 0.0) throw Error("time grid must be nonnegative");
    curve.rho.push_back(density_closed_form(dist, t));
  }
  return curve;
}

ExactTable build_exact_table(std::size_t n) {
  ExactTable table;
  table.n = n;
  table.expected_M = expected_M(n);
  table.expected_M_float = expected_M_float(n);
  table.distribution = distribution_M(n);
  table.per_site_vacancy.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) table.per_site_vacancy.push_back(per_site_vacancy_exact(n, i));
  return table;
}

}  // namespace parking
