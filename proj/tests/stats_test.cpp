// Copyright 2026 The Narcissus Audit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "narcissus/stats.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "narcissus/rng.hpp"
#include "tests/test_oracles.hpp"

namespace narcissus {
namespace {

TEST(ClopperPearsonTest, BoundaryClosedForms) {
  // Zero successes: lower = 0, upper = 1 - (alpha/2)^(1/n).
  auto zero = clopper_pearson(0, 100, 0.95);
  EXPECT_DOUBLE_EQ(zero.lower, 0.0);
  EXPECT_NEAR(zero.upper, 1.0 - std::pow(0.025, 1.0 / 100.0), 1e-12);

  // All successes: upper = 1, lower mirrors the zero case.
  auto all = clopper_pearson(100, 100, 0.95);
  EXPECT_DOUBLE_EQ(all.upper, 1.0);
  EXPECT_NEAR(all.lower, std::pow(0.025, 1.0 / 100.0), 1e-12);
}

// Frozen value computed with the independent bisection oracle below
// (and cross-checked against standard statistical tables).
TEST(ClopperPearsonTest, MidpointFrozenValue) {
  auto ci = clopper_pearson(50, 100, 0.95);
  EXPECT_NEAR(ci.lower, 0.3983, 5e-4);
  EXPECT_NEAR(ci.upper, 0.6017, 5e-4);
}

// The implementation goes through the beta quantile; the oracle inverts the
// exact binomial CDF by bisection. The two routes must agree.
TEST(ClopperPearsonTest, AgreesWithBisectionOracle) {
  const uint64_t ns[] = {1, 7, 100, 1000};
  const uint64_t ks_frac[] = {0, 1, 3, 9, 10};
  for (uint64_t n : ns) {
    for (uint64_t frac : ks_frac) {
      uint64_t k = std::min<uint64_t>(n, frac * n / 10);
      auto ci = clopper_pearson(k, n, 0.95);
      auto oracle = testing_oracles::clopper_pearson_bisect(k, n, 0.95);
      EXPECT_NEAR(ci.lower, oracle.first, 1e-9) << "k=" << k << " n=" << n;
      EXPECT_NEAR(ci.upper, oracle.second, 1e-9) << "k=" << k << " n=" << n;
    }
  }
}

TEST(ClopperPearsonTest, IntervalContainsEstimate) {
  for (uint64_t n : {3ull, 17ull, 256ull}) {
    for (uint64_t k = 0; k <= n; k += (n > 16 ? 37 : 1)) {
      auto ci = clopper_pearson(k, n, 0.9);
      double p_hat = double(k) / double(n);
      EXPECT_LE(ci.lower, p_hat + 1e-12);
      EXPECT_GE(ci.upper, p_hat - 1e-12);
    }
  }
}

TEST(ClopperPearsonTest, RejectsBadArguments) {
  EXPECT_THROW(clopper_pearson(1, 0, 0.95), std::invalid_argument);
  EXPECT_THROW(clopper_pearson(5, 4, 0.95), std::invalid_argument);
  EXPECT_THROW(clopper_pearson(1, 4, 1.0), std::invalid_argument);
}

// Coverage of the exact interval is at least nominal by construction; the
// audit below checks >= 94% empirically at three probabilities.
TEST(ClopperPearsonTest, CoverageAudit) {
  RngStream root = RngStream::from_root(90210).child("coverage");
  const uint64_t kRuns = 10'000;
  const uint64_t kDraws = 100;
  for (double p : {0.1, 0.5, 0.9}) {
    RngStream stream = root.child(std::to_string(p));
    uint64_t covered = 0;
    for (uint64_t r = 0; r < kRuns; ++r) {
      uint64_t k = 0;
      for (uint64_t i = 0; i < kDraws; ++i) k += stream.bernoulli(p) ? 1 : 0;
      auto ci = clopper_pearson(k, kDraws, 0.95);
      if (ci.lower <= p && p <= ci.upper) ++covered;
    }
    EXPECT_GE(double(covered) / double(kRuns), 0.94) << "p=" << p;
  }
}

TEST(ChungLuTailTest, FormulaValues) {
  // 2 * exp(-0.1^2 * 100 / (2 * (0.5 + 0.1/3))) = 2 * exp(-0.9375)
  EXPECT_NEAR(chung_lu_tail(100, 0.5, 0.1), 2.0 * std::exp(-0.9375), 1e-12);
  EXPECT_NEAR(chung_lu_tail(100, 0.5, 0.1), 0.7832, 1e-4);
  // t -> infinity gives 0.
  EXPECT_NEAR(chung_lu_tail(100, 0.5, 1e9), 0.0, 1e-300);
  EXPECT_THROW(chung_lu_tail(100, 0.5, 0.0), std::invalid_argument);
  EXPECT_THROW(chung_lu_tail(0, 0.5, 0.1), std::invalid_argument);
}

TEST(ChungLuTruncatedTest, FormulaValues) {
  // a == b is vacuous: bound 2.
  EXPECT_DOUBLE_EQ(chung_lu_truncated(1000, 0.1, 0.02, 0.02), 2.0);
  // 2 * exp(-(0.04)^2 * 1000 / 0.2) = 2 * e^-8.
  EXPECT_NEAR(chung_lu_truncated(1000, 0.1, 0.01, 0.05), 2.0 * std::exp(-8.0),
              1e-12);
  EXPECT_NEAR(chung_lu_truncated(1000, 0.1, 0.01, 0.05), 6.7e-4, 5e-5);
  EXPECT_THROW(chung_lu_truncated(1000, 0.1, 0.05, 0.01),
               std::invalid_argument);
  EXPECT_THROW(chung_lu_truncated(1000, 0.1, 0.01, 0.2), std::invalid_argument);
}

// Empirical dominance of both bounds over simulated tails on a parameter
// grid, using a binomial table sampler independent of the bounds.
TEST(ChungLuTest, BoundsDominateSimulatedTails) {
  RngStream root = RngStream::from_root(777).child("chung-lu");
  const uint64_t kSims = 20'000;
  const uint64_t grid_n[] = {50, 200, 1000};
  const double grid_p[] = {0.1, 0.3, 0.5};
  const double grid_t[] = {0.02, 0.05, 0.1};

  for (uint64_t n : grid_n) {
    for (double p : grid_p) {
      testing_oracles::BinomialTable table(n, p);
      RngStream stream = root.child(n).child(std::to_string(p));
      std::vector<double> p_hats(kSims);
      for (uint64_t s = 0; s < kSims; ++s) {
        p_hats[s] = double(table.sample(stream)) / double(n);
      }
      for (double t : grid_t) {
        uint64_t exceed = 0;
        for (double p_hat : p_hats) {
          if (std::abs(p_hat - p) > t) ++exceed;
        }
        double freq = double(exceed) / double(kSims);
        EXPECT_LE(freq, chung_lu_tail(n, p, t))
            << "n=" << n << " p=" << p << " t=" << t;
      }

      // Conditional truncated tails at a < b <= p.
      for (double b_frac : {0.3, 0.6, 0.9}) {
        double a = 0.1 * p;
        double b = b_frac * p;
        uint64_t cond = 0, hit = 0;
        for (double p_hat : p_hats) {
          if (p_hat < p - a) {
            ++cond;
            if (p_hat < p - b) ++hit;
          }
        }
        if (cond == 0) continue;
        double freq = double(hit) / double(cond);
        EXPECT_LE(freq, chung_lu_truncated(n, p, a, b))
            << "n=" << n << " p=" << p << " b=" << b;
      }
    }
  }
}

}  // namespace
}  // namespace narcissus
