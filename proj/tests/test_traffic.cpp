#include <gtest/gtest.h>

#include <cmath>

#include "bpsim/errors.hpp"
#include "bpsim/traffic.hpp"

using namespace bpsim;

TEST(Arrivals, ZeroRateIsAlwaysZero) {
  RngStream rng(1, 0);
  for (std::int64_t t = 0; t < 1000; ++t) EXPECT_EQ(sample_arrivals(PoissonPerSlot{0.0}, t, rng), 0);
  EXPECT_EQ(empirical_rate(PoissonPerSlot{0.0}, 1000, 3), 0.0);
}

TEST(Arrivals, FiniteBatchOnlyAtSlotZero) {
  RngStream rng(9, 2);
  const auto batch = sample_arrivals(FiniteBatch{10.0}, 0, rng);
  EXPECT_GE(batch, 0);
  for (std::int64_t t = 1; t < 1000; ++t) EXPECT_EQ(sample_arrivals(FiniteBatch{10.0}, t, rng), 0);

  // Mean of the slot-0 draw over many streams is 10 (Poisson sd 10^0.5, 4000 draws).
  double sum = 0;
  for (std::uint64_t s = 0; s < 4000; ++s) {
    RngStream r(s, 0);
    sum += static_cast<double>(sample_arrivals(FiniteBatch{10.0}, 0, r));
  }
  EXPECT_NEAR(sum / 4000.0, 10.0, 3.0 * std::sqrt(10.0 / 4000.0));
}

TEST(Arrivals, BurstyFileMeanWithinThreeStandardErrors) {
  const double rho = 0.2;
  const double p = 0.01;
  const double mu = rho * 0.1 / p;
  const BurstyFile spec{p, mu};
  const std::int64_t n = 1000000;
  // Per-slot X = Bernoulli(p) * Poisson(mu): E[X^2] = p (mu + mu^2).
  const double mean = p * mu;
  const double var = p * (mu + mu * mu) - mean * mean;
  const double se = std::sqrt(var / static_cast<double>(n));
  EXPECT_NEAR(empirical_rate(spec, n, 42), mean, 3.0 * se);
  EXPECT_DOUBLE_EQ(mean_rate(spec), mean);
}

TEST(Arrivals, EmpiricalRateConverges) {
  const std::int64_t n = 1000000;
  const double r = empirical_rate(PoissonPerSlot{1.0}, n, 7);
  EXPECT_NEAR(r, 1.0, 0.01);
  EXPECT_NEAR(r, 1.0, 3.0 * std::sqrt(1.0 / static_cast<double>(n)));

  // A single Poisson(10) batch spread over 10^6 slots.
  const double b = empirical_rate(FiniteBatch{10.0}, n, 7);
  EXPECT_LT(b, 30.0 / static_cast<double>(n));
  EXPECT_THROW(empirical_rate(PoissonPerSlot{1.0}, 0, 1), ConfigError);
}

TEST(Arrivals, ErrorShrinksWithHorizon) {
  // Mean absolute error over several seeds at 10^3 vs 10^5 slots.
  double small = 0;
  double large = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    small += std::abs(empirical_rate(PoissonPerSlot{0.7}, 1000, s) - 0.7);
    large += std::abs(empirical_rate(PoissonPerSlot{0.7}, 100000, s) - 0.7);
    EXPECT_LT(std::abs(empirical_rate(PoissonPerSlot{0.7}, 100000, s) - 0.7), 3.0 * std::sqrt(0.7 / 1e5) * 1.5);
  }
  EXPECT_LT(large, small);
}

TEST(Arrivals, SameSeedSameSequenceAndSubstreamsDiffer) {
  RngStream a(123, 4);
  RngStream b(123, 4);
  RngStream c(123, 5);
  int differ = 0;
  for (std::int64_t t = 0; t < 5000; ++t) {
    const auto x = sample_arrivals(PoissonPerSlot{2.0}, t, a);
    EXPECT_EQ(x, sample_arrivals(PoissonPerSlot{2.0}, t, b));
    differ += x != sample_arrivals(PoissonPerSlot{2.0}, t, c);
  }
  EXPECT_GT(differ, 1000);
}

TEST(ArrivalSpec, ValidationAndScaling) {
  EXPECT_THROW(validate(PoissonPerSlot{-1.0}), ConfigError);
  EXPECT_THROW(validate(BurstyFile{1.5, 1.0}), ConfigError);
  EXPECT_THROW(validate(FiniteBatch{std::nan("")}), ConfigError);
  EXPECT_NO_THROW(validate(BurstyFile{1.0, 0.0}));

  EXPECT_EQ(scaled(PoissonPerSlot{1.0}, 0.3), ArrivalSpec(PoissonPerSlot{0.3}));
  EXPECT_EQ(scaled(BurstyFile{0.01, 10.0}, 0.2), ArrivalSpec(BurstyFile{0.01, 2.0}));
  EXPECT_EQ(scaled(FiniteBatch{10.0}, 0.5), ArrivalSpec(FiniteBatch{5.0}));
  EXPECT_THROW(scaled(PoissonPerSlot{1.0}, -1.0), ConfigError);
}
