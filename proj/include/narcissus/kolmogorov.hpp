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
#include <optional>
#include <string>
#include <vector>

#include "narcissus/codecs.hpp"
#include "narcissus/core.hpp"
#include "narcissus/dsl.hpp"
#include "narcissus/stats.hpp"

namespace narcissus {

// A target set of byte strings, described by a total membership test plus
// optional structure that the witness search can exploit.
struct Target {
  std::string description;
  std::function<bool(ByteView)> contains;
  std::optional<Bytes> canonical;  // a known member, when available
  bool singleton = false;

  // Set when the target is a fixed-width list relation; enables the
  // input-extension and random-guess templates.
  std::optional<size_t> element_width_bits;
  size_t list_elements = 2;

  // Singleton {x}.
  static Target exact(Bytes x);
  // Tuples of `elements` strings of `width_bits` bits, at least one within
  // normalized Hamming distance `threshold` of x.
  static Target hamming_ball(Bytes x, double threshold, size_t width_bits,
                             size_t elements);
};

// A bound on the length of the shortest program reaching a target (with
// success probability at least 2/3 for randomized programs).
//
// Upper bounds are exact in-language statements witnessed by an attached
// program. "Lower" bounds are labeled heuristics: the compression proxy is
// itself an upper bound on the true complexity and can badly overestimate
// hardness (that failure mode is demonstrated, on purpose, by the
// verification-hardness experiment).
struct KEstimate {
  enum class Kind { kUpperExactInDsl, kLowerHeuristic };

  Kind kind = Kind::kUpperExactInDsl;
  double value_bits = 0.0;
  std::string method;
  std::string confidence;
  std::optional<dsl::Program> witness;
  bool no_bound = false;  // search exhausted its budget without a witness

  static KEstimate none(std::string method);
};

// Serialized-bits overhead of the decompression witness
// [LIT(compressed), DECOMPRESS, OUTPUT]: header + opcodes + length field.
constexpr size_t kDecompressStubBits = 8 * (dsl::kHeaderBytes + 8);

struct KUpperOptions {
  size_t search_budget_bytes = 0;  // 0 disables program enumeration
  std::vector<Codec> codecs{Codec::kDeflate, Codec::kRle};
  uint64_t seed = 1;
  uint64_t witness_draws = 100;  // success-probability draws per candidate
  uint64_t enumeration_cap = 2'000'000;
};

// Least witnessed program length (bits) over
//   (a) exhaustive enumeration of programs up to the search budget,
//   (b) structural templates (literal, repeat, identity, prefix-extend,
//       random-guess), and
//   (c) for singleton targets, in-language decompression of each codec's
//       compressed form.
// `input` gives the conditional variant: programs receive it via INPUT.
// Randomized candidates are accepted when at least 2/3 of the witness draws
// hit the target. Returns a no-bound estimate when nothing within budget
// reaches the target.
KEstimate k_upper(const Target& target, const std::optional<Bytes>& input,
                  const KUpperOptions& options = {});

// Compression-proxy floor: min over codecs of the compressed bit length.
// Always flagged Kind::kLowerHeuristic.
KEstimate k_lower_heuristic(ByteView x,
                            const std::vector<Codec>& codecs = {
                                Codec::kDeflate, Codec::kRle});
KEstimate k_lower_heuristic(const Target& target,
                            const std::vector<Codec>& codecs = {
                                Codec::kDeflate, Codec::kRle});

// Mutual-information style estimate K(target) - K(target | y). When the
// unconditional search finds no witness, the minuend falls back to the
// compression heuristic and the report says so.
struct KiReport {
  double ki_bits = 0.0;
  KEstimate minuend;
  KEstimate subtrahend;
  bool no_bound = false;
};

KiReport ki_estimate(const Target& target, const Bytes& y,
                     const KUpperOptions& options = {});

// A validated extraction claim: program A, model y, and the evidence that
// A(y) hits the target while the target is heuristically incompressible.
struct ExtractionEvidence {
  dsl::Program program;
  Bytes model;
  std::string relation_description;
  uint64_t trials = 0;
  uint64_t successes = 0;
  double success_rate = 0.0;
  BinomialCI success_ci;
  KEstimate k_lower;
  double q = 0.0;
  double quality = 0.0;  // 1 - |A| / k_lower
  bool accepted = false;
};

// Runs the program `trials` times on y with fresh streams, estimates the hit
// rate, and accepts iff the one-sided lower confidence bound reaches 2/3 and
// k_lower >= |A| / (1 - q). Runtime errors count as misses.
ExtractionEvidence validate_extractor(const dsl::Program& program,
                                      const Bytes& y, const Target& target,
                                      double q, uint64_t trials, uint64_t seed);

// Relation over (model bytes, program) candidate tuples: 1 iff the wrapped
// relation accepts the program's output on y AND the program is short
// relative to k_lower_fn's floor for the dataset's witness set:
// |A| <= (1 - q) * k_lower_fn(S).
Relation build_r_ext(const Relation& inner, double q,
                     std::function<double(const Dataset&)> k_lower_fn,
                     dsl::ExecLimits limits = {});

}  // namespace narcissus
