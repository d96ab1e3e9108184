#include "bpsim/traffic.hpp"

#include <cmath>
#include <sstream>

#include "bpsim/errors.hpp"

namespace bpsim {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_finite_nonneg(double v, const char* what) {
  if (!std::isfinite(v) || v < 0.0) {
    std::ostringstream os;
    os << what << " must be a finite non-negative number, got " << v;
    throw ConfigError(os.str());
  }
}

}  // namespace

void validate(const ArrivalSpec& spec) {
  std::visit(overloaded{
                 [](const PoissonPerSlot& p) { require_finite_nonneg(p.rate, "poisson rate"); },
                 [](const FiniteBatch& b) { require_finite_nonneg(b.mean, "batch mean"); },
                 [](const BurstyFile& f) {
                   require_finite_nonneg(f.file_probability, "file probability");
                   if (f.file_probability > 1.0) {
                     throw ConfigError("file probability must lie in [0, 1]");
                   }
                   require_finite_nonneg(f.mean_file_size, "mean file size");
                 },
             },
             spec);
}

ArrivalSpec scaled(const ArrivalSpec& spec, double rho) {
  require_finite_nonneg(rho, "load scale rho");
  return std::visit(overloaded{
                        [rho](const PoissonPerSlot& p) -> ArrivalSpec { return PoissonPerSlot{p.rate * rho}; },
                        [rho](const FiniteBatch& b) -> ArrivalSpec { return FiniteBatch{b.mean * rho}; },
                        [rho](const BurstyFile& f) -> ArrivalSpec {
                          return BurstyFile{f.file_probability, f.mean_file_size * rho};
                        },
                    },
                    spec);
}

double mean_rate(const ArrivalSpec& spec) {
  return std::visit(overloaded{
                        [](const PoissonPerSlot& p) { return p.rate; },
                        [](const FiniteBatch&) { return 0.0; },
                        [](const BurstyFile& f) { return f.file_probability * f.mean_file_size; },
                    },
                    spec);
}

std::string describe(const ArrivalSpec& spec) {
  std::ostringstream os;
  std::visit(overloaded{
                 [&os](const PoissonPerSlot& p) { os << "poisson(rate=" << p.rate << ")"; },
                 [&os](const FiniteBatch& b) { os << "batch(mean=" << b.mean << ")"; },
                 [&os](const BurstyFile& f) {
                   os << "bursty(p=" << f.file_probability << ", size=" << f.mean_file_size << ")";
                 },
             },
             spec);
  return os.str();
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t substream) : seed_(seed), substream_(substream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(substream), static_cast<std::uint32_t>(substream >> 32)};
  engine_.seed(seq);
}

std::int64_t RngStream::poisson(double mean) {
  // std::poisson_distribution requires a strictly positive mean.
  if (mean <= 0.0) return 0;
  std::poisson_distribution<std::int64_t> dist(mean);
  return dist(engine_);
}

bool RngStream::bernoulli(double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  std::bernoulli_distribution dist(p);
  return dist(engine_);
}

std::int64_t sample_arrivals(const ArrivalSpec& spec, std::int64_t slot, RngStream& rng) {
  return std::visit(overloaded{
                        [&rng](const PoissonPerSlot& p) { return rng.poisson(p.rate); },
                        [&rng, slot](const FiniteBatch& b) -> std::int64_t {
                          return slot == 0 ? rng.poisson(b.mean) : 0;
                        },
                        [&rng](const BurstyFile& f) -> std::int64_t {
                          return rng.bernoulli(f.file_probability) ? rng.poisson(f.mean_file_size) : 0;
                        },
                    },
                    spec);
}

double empirical_rate(const ArrivalSpec& spec, std::int64_t horizon, std::uint64_t seed) {
  if (horizon < 1) throw ConfigError("empirical_rate: horizon must be >= 1");
  RngStream rng(seed, 0);
  std::int64_t total = 0;
  for (std::int64_t t = 0; t < horizon; ++t) total += sample_arrivals(spec, t, rng);
  return static_cast<double>(total) / static_cast<double>(horizon);
}

}  // namespace bpsim
