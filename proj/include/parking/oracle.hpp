#pragma once

// Exhaustive ground truth for small intervals: every arrival ordering of
// the slots, replayed one by one.

#include "parking/core.hpp"

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace parking {

inline constexpr std::size_t kOracleCap = 10;
inline constexpr std::size_t kTOracleCap = 12;

struct OracleReport {
  std::size_t n = 0;
  std::size_t orderings = 0;
  mpq_class expected_M;
  std::map<std::size_t, mpq_class> distribution_M;
  std::vector<mpq_class> per_site_vacancy;  // index i-1 for site i
  // Arrival order of the slots and the jammed configuration it produces.
  std::optional<std::vector<std::pair<std::vector<int>, std::string>>> per_permutation_configs;
};

OracleReport enumerate_orderings(std::size_t n, bool keep_configs = false);

// Exact E[T_n] for the uniform-draw process, by backward recursion over the
// reachable configurations of the absorbing chain.
mpq_class expected_T_exact(std::size_t n);

struct Lemma1Counterexample {
  std::vector<int> ranks;  // priority rank of slots 1..n-1
  std::size_t site = 0;
  bool replay_vacant = false;
  bool classifier_vacant = false;
};

struct Lemma1Check {
  std::size_t n = 0;
  std::size_t orderings = 0;
  bool pass = true;
  std::optional<Lemma1Counterexample> counterexample;
};

// Checks the run-parity classifier and both priority constructions against
// a plain replay for every ordering.
Lemma1Check verify_lemma1(std::size_t n);

}  // namespace parking
