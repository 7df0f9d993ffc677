#include "parking/core.hpp"

#include <algorithm>
#include <numeric>

namespace parking {

namespace {
__extension__ typedef unsigned __int128 u128;
}  // namespace

Rng::Rng(SeedSpec seed) {
  std::seed_seq seq{
      static_cast<std::uint32_t>(seed.master_seed),
      static_cast<std::uint32_t>(seed.master_seed >> 32),
      static_cast<std::uint32_t>(seed.replica_index),
      static_cast<std::uint32_t>(seed.replica_index >> 32),
  };
  engine_.seed(seq);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  // Lemire's multiply-and-reject.
  u128 product = static_cast<u128>(engine_()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = -bound % bound;
    while (low < threshold) {
      product = static_cast<u128>(engine_()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

std::string_view to_string(DistKind kind) {
  return kind == DistKind::Exponential ? "exp" : "uniform";
}

DistKind parse_dist_kind(std::string_view text) {
  if (text == "exp" || text == "exponential") return DistKind::Exponential;
  if (text == "uniform") return DistKind::Uniform;
  throw Error("unknown distribution kind: " + std::string(text));
}

double ArrivalDistribution::cdf(double t) const {
  if (t <= 0.0) return 0.0;
  if (kind_ == DistKind::Exponential) return -std::expm1(-t);
  return t >= 1.0 ? 1.0 : t;
}

double ArrivalDistribution::quantile(double u) const {
  if (kind_ == DistKind::Exponential) return -std::log1p(-u);
  return u;
}

PriorityField::PriorityField(std::vector<double> values, std::int64_t first_slot)
    : values_(std::move(values)), first_slot_(first_slot) {}

std::vector<std::int64_t> PriorityField::arrival_order() const {
  std::vector<std::int64_t> order(values_.size());
  std::iota(order.begin(), order.end(), first_slot_);
  std::sort(order.begin(), order.end(), [this](std::int64_t a, std::int64_t b) { return precedes(a, b); });
  return order;
}

PriorityField sample_priority_field(std::size_t n, ArrivalDistribution dist, Rng& rng) {
  if (n < 2) throw InvalidSize("parking needs at least 2 sites, got " + std::to_string(n));
  std::vector<double> values(n - 1);
  for (auto& v : values) v = dist.sample(rng);
  return PriorityField::finite(std::move(values));
}

PriorityField sample_priority_field(std::size_t n, ArrivalDistribution dist, SeedSpec seed) {
  Rng rng(seed);
  return sample_priority_field(n, dist, rng);
}

ParkingConfiguration::ParkingConfiguration(std::size_t n)
    : occupancy_(n, 0), free_pairs_(n >= 2 ? n - 1 : 0) {}

ParkingConfiguration ParkingConfiguration::from_bits(std::span<const std::uint8_t> occupancy) {
  ParkingConfiguration config(occupancy.size());
  std::transform(occupancy.begin(), occupancy.end(), config.occupancy_.begin(),
                 [](std::uint8_t b) -> std::uint8_t { return b ? 1 : 0; });
  config.free_pairs_ = recount_free_pairs(config.occupancy_);
  return config;
}

std::size_t ParkingConfiguration::occupied_count() const {
  return static_cast<std::size_t>(std::count(occupancy_.begin(), occupancy_.end(), std::uint8_t{1}));
}

bool ParkingConfiguration::try_park(std::size_t slot) {
  // 0-based: the car covers occupancy_[slot-1] and occupancy_[slot].
  const std::size_t left = slot - 1;
  const std::size_t right = slot;
  if (occupancy_[left] || occupancy_[right]) return false;
  // At most three pair states change: (left-1, left), (left, right), (right, right+1).
  --free_pairs_;
  if (left > 0 && !occupancy_[left - 1]) --free_pairs_;
  if (right + 1 < occupancy_.size() && !occupancy_[right + 1]) --free_pairs_;
  occupancy_[left] = 1;
  occupancy_[right] = 1;
  return true;
}

std::string ParkingConfiguration::to_string() const {
  std::string out;
  out.reserve(occupancy_.size());
  for (auto b : occupancy_) out.push_back(b ? '1' : '0');
  return out;
}

std::size_t recount_free_pairs(std::span<const std::uint8_t> occupancy) {
  std::size_t count = 0;
  for (std::size_t i = 0; i + 1 < occupancy.size(); ++i)
    if (!occupancy[i] && !occupancy[i + 1]) ++count;
  return count;
}

}  // namespace parking
