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
#include <functional>
#include <utility>

#include "narcissus/core.hpp"

namespace narcissus {

// gamma(eps, delta) = (6 e^eps (1-delta) - 2) / ((1-delta) e^eps - 1).
// Requires (1-delta) e^eps > 1. Tends to 6 from above as eps grows.
double gamma_param(double epsilon, double delta);

// tau(eps, delta, n) = (gamma^2 + 2 gamma) * ln(4/delta) / n. Requires
// delta > 0.
double tau_param(double epsilon, double delta, uint64_t n);

// Validated parameters for the deterministic truncated counting mechanism.
// The constructor rejects the regime where the resiliency analysis gives no
// guarantee: it requires gamma >= 6, n >= 4 (gamma^2 + 2 gamma) ln(1/delta),
// and tau <= 1/4.
struct CountingParams {
  double epsilon = 0.0;
  double delta = 0.0;
  uint64_t n = 0;
  double gamma = 0.0;
  double tau = 0.0;
  RecordQuery query;

  static CountingParams create(double epsilon, double delta, uint64_t n,
                               RecordQuery query = first_bit_query());
};

// Truncated counting mechanism: release the empirical query mean p_hat
// unless p_hat < tau or p_hat > 1 - tau, in which case abort with the bottom
// symbol. Abort is on strict inequality, so p_hat == tau is released.
// Deterministic; rejects datasets whose size differs from params.n.
Mechanism counting_mechanism(const CountingParams& params);

// Same mechanism with an explicit truncation threshold, for experiments on
// parameter regimes the validated constructor refuses.
Mechanism counting_mechanism_with_tau(double tau, uint64_t n,
                                      RecordQuery query = first_bit_query());

// The failing variant: always releases p_hat, no truncation.
Mechanism counting_mechanism_untruncated(RecordQuery query = first_bit_query());

// Randomized response over single-bit records (one byte per record, value 0
// or 1): each bit flips independently with probability 1 / (1 + e^eps).
// Output is the byte string of released bits.
Mechanism randomized_response(double epsilon);

// The composition counterexample pair over datasets (x, y) of two
// lambda-bit records: the first mechanism releases y, the second releases
// the bit-wise xor x ^ y. Each alone reveals nothing about x; the pair
// reveals it exactly.
std::pair<Mechanism, Mechanism> xor_pair_mechanisms(size_t lambda_bits);

// Wraps a function f as the mechanism releasing f(x) for single-record
// datasets.
Mechanism owf_mechanism(std::string name, std::function<Bytes(ByteView)> f);

// Toy one-way candidate: keystream expansion of the input, truncated to the
// input length. One-wayness is only ever audited against bounded adversaries.
std::function<Bytes(ByteView)> keystream_owf();

// Empirical well-spread check: over `samples` uniform lambda-bit inputs, no
// output value may occur with frequency above nu.
bool is_well_spread_empirical(const std::function<Bytes(ByteView)>& f,
                              size_t lambda_bits, uint64_t samples, double nu,
                              uint64_t seed);

// One-time-pad mechanism over a single tagged record (tag byte 0/1 followed
// by lambda message bits): releases m xor k for a fresh uniform key. The tag
// is never emitted.
Mechanism otp_mechanism(size_t lambda_bits);

// Releases the dataset's canonical serialization unchanged.
Mechanism identity_mechanism();

// Ignores the dataset and releases a fixed output.
Mechanism constant_mechanism(Output y);

// Releases the first record different from `canonical` (the whole record,
// verbatim); falls back to the first record when every record is canonical.
Mechanism leaky_record_mechanism(Bytes canonical);

}  // namespace narcissus
