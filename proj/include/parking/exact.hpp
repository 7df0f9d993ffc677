#pragma once

// Exact finite-n quantities of the parking process and the closed-form
// limits they converge to.

#include "parking/core.hpp"

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

namespace parking {

// Largest n for which expected_M is returned as an exact rational.
inline constexpr std::size_t kRationalMeanCap = 2048;
// Largest n for which distribution_M is computed in exact rational mode.
inline constexpr std::size_t kRationalDistributionCap = 256;

std::string to_string(const mpq_class& q);

// E[M_n] from conditioning on the first car: E[M_n] = 2 + 2/(n-1) * sum_{j<n-1} E[M_j],
// with E[M_0] = E[M_1] = 0.
mpq_class expected_M(std::size_t n);

// The same recursion in extended precision, for all n' <= n_max.
std::vector<long double> expected_M_table(std::size_t n_max);
long double expected_M_float(std::size_t n);

struct MDistribution {
  std::size_t n = 0;
  bool exact = false;
  std::map<std::size_t, mpq_class> rational;    // filled iff exact
  std::map<std::size_t, long double> floating;  // always filled

  long double mean() const;
};

// Law of M_n by full convolution over the position of the first car.
MDistribution distribution_M(std::size_t n, std::size_t rational_cap = kRationalDistributionCap);

// sum_{l=1..k} 2l / (2l+1)!
mpq_class partial_sum_S(std::size_t k);

// Probability that a monotone run adjacent to a site, inside a stretch of
// `slots` i.i.d. priorities bounded by the interval end, has even length.
mpq_class even_run_probability(std::size_t slots);
long double even_run_probability_float(std::size_t slots);

// P(X_n(i) = 0) as the product of the even-rise and even-descent laws.
mpq_class per_site_vacancy_exact(std::size_t n, std::size_t site);
long double per_site_vacancy_float(std::size_t n, std::size_t site);

// 2 * max{(2/3)^(i/3 - 1), (2/3)^((n-i)/3 - 1)}: distance bound between the
// finite and infinite-line vacancy at site i.
double coupling_bound(std::size_t n, std::size_t site);

struct LimitConstants {
  long double jamming_density;  // 1 - e^-2
  long double vacancy;          // e^-2
  long double friedman_offset;  // 1 - 3e^-2
};

LimitConstants limit_constants();

struct DensityCurve {
  std::vector<double> t;
  std::vector<double> rho;
};

// rho(t) = 1 - exp(-2 F(t)).
double density_closed_form(ArrivalDistribution dist, double t);
// f(t) = 1 - exp(-F(t)).
double odd_descent_closed_form(ArrivalDistribution dist, double t);
DensityCurve density_curve_closed_form(ArrivalDistribution dist, std::span<const double> t_grid);

struct ExactTable {
  std::size_t n = 0;
  mpq_class expected_M;
  long double expected_M_float = 0.0L;
  MDistribution distribution;
  std::vector<mpq_class> per_site_vacancy;  // index i-1 for site i
};

ExactTable build_exact_table(std::size_t n);

}  // namespace parking
