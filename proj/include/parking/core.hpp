#pragma once

// Shared domain types for the dimer parking process.
//
// Indexing follows the model: sites are numbered 1..n and the slot i
// covers sites (i, i+1), so a finite parking of n sites has slots 1..n-1.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace parking {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidSize : public Error {
public:
  using Error::Error;
};

class CapExceeded : public Error {
public:
  using Error::Error;
};

class WindowOverflow : public Error {
public:
  using Error::Error;
};

// Identifies one independent random stream.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t replica_index = 0;

  SeedSpec replica(std::uint64_t index) const { return {master_seed, index}; }
  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

// 64-bit Mersenne Twister seeded through std::seed_seq from both halves of
// (master_seed, replica_index). Both engine and seed_seq are fully specified
// by the standard, so streams are reproducible across platforms. The
// variate helpers below avoid the implementation-defined std distributions.
class Rng {
public:
  explicit Rng(SeedSpec seed);

  std::uint64_t bits() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1].
  double uniform_pos() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }

  // Unbiased uniform integer in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound);

  // Exponential with mean one.
  double exponential() { return -std::log(uniform_pos()); }

private:
  std::mt19937_64 engine_;
};

enum class DistKind { Exponential, Uniform };

std::string_view to_string(DistKind kind);
DistKind parse_dist_kind(std::string_view text);

// The arrival-time law F of the priorities.
class ArrivalDistribution {
public:
  constexpr explicit ArrivalDistribution(DistKind kind = DistKind::Exponential) : kind_(kind) {}

  static constexpr ArrivalDistribution exponential() { return ArrivalDistribution(DistKind::Exponential); }
  static constexpr ArrivalDistribution uniform() { return ArrivalDistribution(DistKind::Uniform); }

  DistKind kind() const { return kind_; }

  double cdf(double t) const;
  // Inverse CDF on u in [0, 1).
  double quantile(double u) const;
  double sample(Rng& rng) const { return quantile(rng.uniform()); }

  friend bool operator==(const ArrivalDistribution&, const ArrivalDistribution&) = default;

private:
  DistKind kind_;
};

// The xi field: one real priority per slot. Slots are processed in
// increasing priority; equal values are ordered by smaller slot index.
class PriorityField {
public:
  PriorityField() = default;
  // values[k] is the priority of slot first_slot + k.
  PriorityField(std::vector<double> values, std::int64_t first_slot = 1);

  // Finite field for an n-site parking built from ranks or values.
  static PriorityField finite(std::vector<double> values) { return PriorityField(std::move(values), 1); }

  std::int64_t first_slot() const { return first_slot_; }
  std::int64_t last_slot() const { return first_slot_ + static_cast<std::int64_t>(values_.size()) - 1; }
  std::size_t size() const { return values_.size(); }
  bool contains(std::int64_t slot) const { return slot >= first_slot_ && slot <= last_slot(); }

  // Site count of the finite parking this field drives (slots 1..n-1).
  std::size_t site_count() const { return values_.size() + 1; }

  double operator[](std::int64_t slot) const { return values_[static_cast<std::size_t>(slot - first_slot_)]; }
  std::span<const double> values() const { return values_; }

  // Strict total order on slots: does slot a get its turn before slot b?
  bool precedes(std::int64_t a, std::int64_t b) const {
    const double va = (*this)[a];
    const double vb = (*this)[b];
    return va < vb || (va == vb && a < b);
  }

  // Slots sorted by turn.
  std::vector<std::int64_t> arrival_order() const;

private:
  std::vector<double> values_;
  std::int64_t first_slot_ = 1;
};

PriorityField sample_priority_field(std::size_t n, ArrivalDistribution dist, SeedSpec seed);
PriorityField sample_priority_field(std::size_t n, ArrivalDistribution dist, Rng& rng);

// Occupancy of sites 1..n plus an incrementally maintained count of free
// adjacent pairs.
class ParkingConfiguration {
public:
  explicit ParkingConfiguration(std::size_t n = 0);
  static ParkingConfiguration from_bits(std::span<const std::uint8_t> occupancy);

  std::size_t size() const { return occupancy_.size(); }
  bool occupied(std::size_t site) const { return occupancy_[site - 1] != 0; }
  std::size_t free_pair_count() const { return free_pairs_; }
  bool jammed() const { return free_pairs_ == 0; }
  bool slot_free(std::size_t slot) const { return !occupancy_[slot - 1] && !occupancy_[slot]; }
  std::size_t occupied_count() const;

  // Parks a car on slot (sites slot, slot+1) if both are free.
  bool try_park(std::size_t slot);

  std::span<const std::uint8_t> bits() const { return occupancy_; }
  std::string to_string() const;

  friend bool operator==(const ParkingConfiguration& a, const ParkingConfiguration& b) {
    return a.occupancy_ == b.occupancy_;
  }

private:
  std::vector<std::uint8_t> occupancy_;
  std::size_t free_pairs_ = 0;
};

std::size_t recount_free_pairs(std::span<const std::uint8_t> occupancy);
inline std::size_t recount_free_pairs(const ParkingConfiguration& config) { return recount_free_pairs(config.bits()); }

}  // namespace parking
