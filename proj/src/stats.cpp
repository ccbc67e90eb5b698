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
#include <stdexcept>

#include <boost/math/special_functions/beta.hpp>

namespace narcissus {

BinomialCI clopper_pearson(uint64_t successes, uint64_t trials, double level) {
  if (trials == 0) {
    throw std::invalid_argument("clopper_pearson: trials must be >= 1");
  }
  if (successes > trials) {
    throw std::invalid_argument("clopper_pearson: successes > trials");
  }
  if (!(level > 0.0 && level < 1.0)) {
    throw std::invalid_argument("clopper_pearson: level must be in (0,1)");
  }
  const double alpha = 1.0 - level;
  const double k = static_cast<double>(successes);
  const double n = static_cast<double>(trials);

  BinomialCI ci;
  ci.level = level;
  if (successes == 0) {
    ci.lower = 0.0;
  } else {
    ci.lower = boost::math::ibeta_inv(k, n - k + 1.0, alpha / 2.0);
  }
  if (successes == trials) {
    ci.upper = 1.0;
  } else {
    ci.upper = boost::math::ibeta_inv(k + 1.0, n - k, 1.0 - alpha / 2.0);
  }
  return ci;
}

double chung_lu_tail(uint64_t n, double p, double t) {
  if (n == 0) throw std::invalid_argument("chung_lu_tail: n must be >= 1");
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument("chung_lu_tail: p must be in [0,1]");
  }
  if (!(t > 0.0)) throw std::invalid_argument("chung_lu_tail: t must be > 0");
  return 2.0 * std::exp(-(t * t * static_cast<double>(n)) /
                        (2.0 * (p + t / 3.0)));
}

double chung_lu_truncated(uint64_t n, double p, double a, double b) {
  if (n == 0) {
    throw std::invalid_argument("chung_lu_truncated: n must be >= 1");
  }
  if (!(0.0 <= a && a <= b && b <= p)) {
    throw std::invalid_argument("chung_lu_truncated: need 0 <= a <= b <= p");
  }
  const double d = b - a;
  return 2.0 * std::exp(-(d * d * static_cast<double>(n)) / (2.0 * p));
}

}  // namespace narcissus
