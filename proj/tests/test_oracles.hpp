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

// Independent oracles used by tests. These deliberately avoid the library's
// implementation paths: the binomial CDF is summed in log space from the pmf
// recurrence and interval endpoints are found by bisection.

#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "narcissus/rng.hpp"

namespace narcissus::testing_oracles {

// log C(n, k) via lgamma.
inline double log_choose(uint64_t n, uint64_t k) {
  return std::lgamma(double(n) + 1.0) - std::lgamma(double(k) + 1.0) -
         std::lgamma(double(n - k) + 1.0);
}

// Pr[Binomial(n, p) <= k], exact summation.
inline double binomial_cdf(uint64_t k, uint64_t n, double p) {
  if (p <= 0.0) return 1.0;
  if (p >= 1.0) return k >= n ? 1.0 : 0.0;
  double total = 0.0;
  for (uint64_t i = 0; i <= k; ++i) {
    double log_term = log_choose(n, i) + double(i) * std::log(p) +
                      double(n - i) * std::log1p(-p);
    total += std::exp(log_term);
  }
  return std::min(total, 1.0);
}

// Clopper-Pearson endpoints by bisection on the exact binomial CDF:
//   lower solves Pr[X >= k | p] = alpha/2   (0 when k == 0)
//   upper solves Pr[X <= k | p] = alpha/2   (1 when k == n)
inline std::pair<double, double> clopper_pearson_bisect(uint64_t k, uint64_t n,
                                                        double level) {
  const double alpha = 1.0 - level;
  auto bisect = [](auto f, double lo, double hi) {
    for (int i = 0; i < 200; ++i) {
      double mid = 0.5 * (lo + hi);
      if (f(mid)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return 0.5 * (lo + hi);
  };

  double lower = 0.0;
  if (k > 0) {
    // Pr[X >= k] = 1 - CDF(k-1) increases in p.
    lower = bisect(
        [&](double p) { return 1.0 - binomial_cdf(k - 1, n, p) >= alpha / 2; },
        0.0, 1.0);
  }
  double upper = 1.0;
  if (k < n) {
    // Pr[X <= k] decreases in p.
    upper = bisect(
        [&](double p) { return binomial_cdf(k, n, p) <= alpha / 2; }, 0.0,
        1.0);
  }
  return {lower, upper};
}

// Exact-CDF table sampler: one uniform draw and a binary search per sample.
class BinomialTable {
 public:
  BinomialTable(uint64_t n, double p) : cdf_(n + 1) {
    for (uint64_t k = 0; k <= n; ++k) cdf_[k] = binomial_cdf(k, n, p);
    cdf_[n] = 1.0;
  }

  uint64_t sample(RngStream& stream) const {
    double u = stream.next_double();
    size_t lo = 0, hi = cdf_.size() - 1;
    while (lo < hi) {
      size_t mid = (lo + hi) / 2;
      if (cdf_[mid] >= u) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    return lo;
  }

 private:
  std::vector<double> cdf_;
};

}  // namespace narcissus::testing_oracles
