#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <variant>

namespace bpsim {

// Poisson(rate) packets in every slot.
struct PoissonPerSlot {
  double rate = 0.0;

  bool operator==(const PoissonPerSlot&) const = default;
};

// A single Poisson(mean) batch injected at slot 0, nothing afterwards.
struct FiniteBatch {
  double mean = 0.0;

  bool operator==(const FiniteBatch&) const = default;
};

// With probability file_probability a file of Poisson(mean_file_size)
// packets arrives in the slot.
struct BurstyFile {
  double file_probability = 0.0;
  double mean_file_size = 0.0;

  bool operator==(const BurstyFile&) const = default;
};

using ArrivalSpec = std::variant<PoissonPerSlot, FiniteBatch, BurstyFile>;

// Throws ConfigError when a parameter is outside its admissible range.
void validate(const ArrivalSpec& spec);

// Scales the arrival intensity by rho (rate, batch mean or file size).
ArrivalSpec scaled(const ArrivalSpec& spec, double rho);

// Long-run mean packets per slot; finite batches report 0.
double mean_rate(const ArrivalSpec& spec);

std::string describe(const ArrivalSpec& spec);

// Seeded random stream owned by one flow of one run.
//
// The engine is std::mt19937_64 seeded through std::seed_seq with the words
// (seed lo, seed hi, substream lo, substream hi). Poisson draws use
// std::poisson_distribution, so sequences are stable for a given standard
// library build.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t substream);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t substream() const { return substream_; }

  std::int64_t poisson(double mean);
  bool bernoulli(double p);

 private:
  std::uint64_t seed_;
  std::uint64_t substream_;
  std::mt19937_64 engine_;
};

// Exogenous packet count A_s(slot). Slots must be visited in increasing
// order on a given stream for reproducible sequences.
std::int64_t sample_arrivals(const ArrivalSpec& spec, std::int64_t slot, RngStream& rng);

// (sum of A_s over slots [0, horizon)) / horizon on a fresh stream.
double empirical_rate(const ArrivalSpec& spec, std::int64_t horizon, std::uint64_t seed);

}  // namespace bpsim
