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
#include <vector>

#include "narcissus/core.hpp"

namespace narcissus {

// ---------------------------------------------------------------------------
// Relations. Each accepts a declared candidate tag and rejects every other
// tag with CandidateError.

// Candidate (i, b): 1 iff b is present and q(S[i]) == b. An absent b is an
// intentional failure and always scores 0.
Relation rel_coordinate_guess(RecordQuery query = first_bit_query());

// Candidate (indices, bits) with k distinct indices into a dataset of
// single-bit records: 1 iff every pinned coordinate matches.
Relation rel_pinpoint(size_t k);

// Randomized membership-inference relation over function candidates:
// samples a uniform record z of the dataset and returns f(z).
Relation rel_mi();

// Predicate candidates: 1 iff the predicate holds on exactly one record.
Relation rel_singling_out();

enum class HammingMode { kSingleTarget, kAnyOfDataset };

// Candidate: a byte string parsed as a list of fixed-width elements, or a
// tuple of byte strings. 1 iff some element is within normalized Hamming
// distance `threshold` of the target record (record 0, or any record).
Relation rel_hamming_list(double threshold, HammingMode mode,
                          size_t width_bits, size_t max_list = 1024);

// Byte candidates: 1 iff the candidate equals some record.
Relation rel_exact_membership();

// Byte candidates: 1 iff the candidate equals record 0 (e.g. recovery of x
// from an (x, y) input pair).
Relation rel_first_record_recovery();

// Byte candidates: 1 iff the candidate's tag bit (low bit of its first
// byte) equals the tag bit of record 0. The agreement relation for
// encryption games over tagged messages.
Relation rel_tag_bit_agreement();

// Byte candidates, single-record datasets: 1 iff f(z) == f(x). The companion
// relation for one-way-function mechanisms.
Relation rel_same_image(std::function<Bytes(ByteView)> f);

// Byte candidates: 1 iff the dataset equals `s0` and the candidate equals
// `witness_output`. The constructed relation showing that a mechanism
// distinguishing a dataset pair loses the paired game.
Relation rel_dataset_event(Dataset s0, Bytes witness_output);

// 1 iff `s` occurs as a substring of at most k records.
int k_eidetic_filter(size_t k, const Dataset& dataset, ByteView s);

// ---------------------------------------------------------------------------
// Distributions.

// n independent single-bit records (one byte each), ones with probability p.
DatasetDistribution dist_iid_bernoulli_bits(size_t n, double p);

// Mixture with a planted constant: each record is `canonical` with
// probability prob, otherwise a fresh uniform 128-bit record.
DatasetDistribution dist_canonical_mixture(size_t n, Bytes canonical,
                                           double prob);

// n uniform records of the given byte width.
DatasetDistribution dist_uniform_records(size_t n, size_t record_bytes);

// Two uniform lambda-bit records (the xor-pair input shape).
DatasetDistribution dist_xor_pair_inputs(size_t lambda_bits);

// Single uniform record of lambda bits (one-way-function input shape).
DatasetDistribution dist_single_uniform_record(size_t lambda_bits);

// Constant paired distribution returning (s0, s1) with probability 1.
PairedDatasetDistribution paired_constant(Dataset s0, Dataset s1);

// Two independent draws from the same distribution.
PairedDatasetDistribution paired_iid(DatasetDistribution dist);

// ---------------------------------------------------------------------------
// Adversary library.

// Ignores y, outputs the fixed candidate.
Adversary adv_fixed(Candidate z_star);

// (uniform index in [n], uniform bit).
Adversary adv_random_guess(size_t n);

// (uniform index in [n], abstain).
Adversary adv_abstain(size_t n);

// On a released mean: guesses bit [p_hat > 1/2] at a uniform index; abstains
// when the mechanism aborted.
Adversary adv_counting_threshold(size_t n);

// On a released mean: outputs (uniform index, 1) when p_hat > 0, otherwise
// abstains. The adversary that separates the untruncated counting release.
Adversary adv_positive_mean(size_t n);

// On a tuple output (u, v): recovers u xor v.
Adversary adv_xor_recover();

// Echoes a byte output verbatim as a byte candidate (empty bytes otherwise).
Adversary adv_echo();

// On a released bit string: echoes released bit i as the guess (i, y_i) for
// a uniform index i.
Adversary adv_echo_random_bit();

// Membership-inference attacker: returns the function
// f(z) = [first bit of z == (released mean > t)]; abstains (constant-0
// function) on aborted outputs.
Adversary adv_mi_threshold(double t);

// Inverts f on the observed image by brute force over `guesses` uniform
// lambda-bit preimage draws; echoes the first hit, abstains-by-empty on miss.
Adversary adv_brute_force_inverter(std::function<Bytes(ByteView)> f,
                                   uint64_t guesses, size_t lambda_bits);

}  // namespace narcissus
