#include "parking/oracle.hpp"

#include "parking/finite.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace parking {

namespace {

void require_oracle_size(std::size_t n, std::size_t cap) {
  if (n < 2) throw InvalidSize("parking needs at least 2 sites, got " + std::to_string(n));
  if (n > cap) throw CapExceeded("oracle cap exceeded: n = " + std::to_string(n) + " > " + std::to_string(cap));
}

// Plain replay, deliberately free of the library's configuration type.
std::vector<char> replay(std::size_t n, const std::vector<int>& order) {
  std::vector<char> occupied(n, 0);
  for (int slot : order) {
    const auto s = static_cast<std::size_t>(slot);
    if (!occupied[s - 1] && !occupied[s]) occupied[s - 1] = occupied[s] = 1;
  }
  return occupied;
}

mpz_class factorial(std::size_t k) {
  mpz_class f = 1;
  for (std::size_t j = 2; j <= k; ++j) f *= static_cast<unsigned long>(j);
  return f;
}

}  // namespace

OracleReport enumerate_orderings(std::size_t n, bool keep_configs) {
  require_oracle_size(n, kOracleCap);
  const std::size_t slots = n - 1;
  std::vector<int> order(slots);
  std::iota(order.begin(), order.end(), 1);

  std::map<std::size_t, std::uint64_t> m_counts;
  std::vector<std::uint64_t> vacant_counts(n, 0);
  OracleReport report;
  report.n = n;
  if (keep_configs) report.per_permutation_configs.emplace();
  do {
    const auto occupied = replay(n, order);
    std::size_t m = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (occupied[i]) ++m;
      else ++vacant_counts[i];
    }
    ++m_counts[m];
    ++report.orderings;
    if (keep_configs) {
      std::string bits(n, '0');
      for (std::size_t i = 0; i < n; ++i)
        if (occupied[i]) bits[i] = '1';
      report.per_permutation_configs->emplace_back(order, std::move(bits));
    }
  } while (std::next_permutation(order.begin(), order.end()));

  const mpz_class total = factorial(slots);
  report.expected_M = 0;
  for (auto [m, c] : m_counts) {
    mpq_class p(mpz_class(static_cast<unsigned long>(c)), total);
    p.canonicalize();
    report.expected_M += p * static_cast<unsigned long>(m);
    report.distribution_M.emplace(m, std::move(p));
  }
  report.expected_M.canonicalize();
  for (auto c : vacant_counts) {
    mpq_class p(mpz_class(static_cast<unsigned long>(c)), total);
    p.canonicalize();
    report.per_site_vacancy.push_back(std::move(p));
  }
  return report;
}

mpq_class expected_T_exact(std::size_t n) {
  require_oracle_size(n, kTOracleCap);
  const std::size_t slots = n - 1;
  using State = std::uint32_t;  // bit i-1 set iff site i occupied
  std::unordered_map<State, mpq_class> memo;

  auto free_slot = [](State s, std::size_t slot) { return !((s >> (slot - 1)) & 3u); };

  // Draws from state s until jammed: each draw hits one of the f free slots
  // with probability f/(n-1), so E(s) = (n-1)/f + mean of E over the f successors.
  auto solve = [&](auto&& self, State s) -> mpq_class {
    if (auto it = memo.find(s); it != memo.end()) return it->second;
    std::vector<std::size_t> free;
    for (std::size_t slot = 1; slot <= slots; ++slot)
      if (free_slot(s, slot)) free.push_back(slot);
    mpq_class value = 0;
    if (!free.empty()) {
      mpq_class successors = 0;
      for (auto slot : free) successors += self(self, s | (3u << (slot - 1)));
      const auto f = static_cast<unsigned long>(free.size());
      value = mpq_class(static_cast<unsigned long>(slots), f) + successors / f;
      value.canonicalize();
    }
    memo.emplace(s, value);
    return value;
  };
  return solve(solve, 0);
}

Lemma1Check verify_lemma1(std::size_t n) {
  require_oracle_size(n, kOracleCap);
  const std::size_t slots = n - 1;
  std::vector<int> order(slots);
  std::iota(order.begin(), order.end(), 1);
  Lemma1Check check;
  check.n = n;
  std::vector<double> ranks(slots);
  do {
    ++check.orderings;
    for (std::size_t pos = 0; pos < slots; ++pos) ranks[static_cast<std::size_t>(order[pos] - 1)] = static_cast<double>(pos + 1);
    const auto xi = PriorityField::finite(ranks);
    const auto occupied = replay(n, order);
    const auto sequential = construct_from_priorities(xi);
    const auto runs = construct_by_runs(xi);
    for (std::size_t site = 1; site <= n; ++site) {
      const bool replay_vacant = !occupied[site - 1];
      const bool classifier_vacant = classify_site(xi, static_cast<std::int64_t>(site)) == SiteState::Vacant;
      const bool constructions_agree = sequential.final_config.occupied(site) == !replay_vacant &&
                                       runs.final_config.occupied(site) == !replay_vacant;
      if (replay_vacant != classifier_vacant || !constructions_agree) {
        check.pass = false;
        Lemma1Counterexample ce;
        ce.ranks.reserve(slots);
        for (double r : ranks) ce.ranks.push_back(static_cast<int>(r));
        ce.site = site;
        ce.replay_vacant = replay_vacant;
        ce.classifier_vacant = classifier_vacant;
        check.counterexample = std::move(ce);
        return check;
      }
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return check;
}

}  // namespace parking
