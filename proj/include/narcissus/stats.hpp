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

#pragma once

#include <cstdint>

namespace narcissus {

// Two-sided binomial confidence interval.
struct BinomialCI {
  double lower = 0.0;
  double upper = 1.0;
  double level = 0.95;
};

// Exact (conservative) Clopper-Pearson interval for `successes` out of
// `trials` at the given two-sided confidence level. Exactness matters here:
// game success probabilities sit at 0 and 1 routinely, where normal
// approximations are useless.
BinomialCI clopper_pearson(uint64_t successes, uint64_t trials, double level);

// Binomial tail bound 2*exp(-t^2*n / (2*(p + t/3))) on Pr[|p_hat - p| > t]
// for the mean of n Bernoulli(p) draws.
double chung_lu_tail(uint64_t n, double p, double t);

// Truncated variant: bound 2*exp(-(b-a)^2*n / (2p)) on the conditional tail
// Pr[p_hat < p - b | p_hat < p - a], for 0 <= a <= b <= p.
double chung_lu_truncated(uint64_t n, double p, double a, double b);

}  // namespace narcissus
