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
#include <string>
#include <utility>
#include <vector>

#include "narcissus/dsl.hpp"
#include "narcissus/prg.hpp"
#include "narcissus/stats.hpp"

namespace narcissus {

// Demonstrates that validating extraction evidence is computationally hard:
// instances built from a keystream expansion look exactly like instances
// built from uniform bits, yet their true complexities differ wildly.
//
// An instance at parameter d carries
//   x  d^4 bits     the "training" string
//   y  d^4-d^2 bits the released prefix of x
//   A  a program of exactly d^2 + kAttackerOverheadBits bits that has the
//      missing d^2-bit tail hard-coded and outputs y . tail = x
// and, when b = 0, the d-bit seed whose expansion produced x, together with
// the companion program [LIT(seed), PRG_EXPAND, OUTPUT] of
// d + kSeedProgramOverheadBits bits that also outputs x.

// Serialization overhead (bits) of the instance programs under bytecode
// version 1. Pinned by tests.
constexpr size_t kAttackerOverheadBits = 8 * (dsl::kHeaderBytes + 8);   // 104
constexpr size_t kSeedProgramOverheadBits = 8 * (dsl::kHeaderBytes + 7);  // 96

struct HardInstance {
  int d = 0;
  int b = 0;            // hidden bit: 0 = expanded seed, 1 = uniform
  dsl::Program program;  // the extractor A with the tail hard-coded
  Bytes x;
  Bytes y;
  Bytes seed;  // present iff b == 0

  // The short companion program for b = 0 instances.
  dsl::Program seed_program() const;
};

// Requires 4 <= d <= 64 with d divisible by 4 (so d^2 and d^4 bits are whole
// bytes).
HardInstance attacker_generate(int d, int b, RngStream& stream);
HardInstance attacker_generate(int d, int b, uint64_t seed);

// A verifier guesses the hidden bit from an instance. Honest verifiers look
// only at (program, x, y); the seed side-channel exists for harness sanity
// checks.
using Verifier = std::function<int(const HardInstance&)>;

struct AccuracyReport {
  std::string verifier;
  uint64_t instances = 0;
  uint64_t correct = 0;
  double accuracy = 0.0;
  BinomialCI ci;
};

// Runs the verifier on `instances` instances with exactly balanced hidden
// bits (even index: b = 0, odd: b = 1). Verifier exceptions count as wrong
// answers.
AccuracyReport distinguisher_experiment(const Verifier& verifier,
                                        const std::string& name, int d,
                                        uint64_t instances, uint64_t seed);

// The bundled verifier suite:
//   constant          always answers 1
//   compression-ratio answers 0 ("generated") iff the compression heuristic
//                     drops below 0.9 * d^4 bits
//   seed-side-channel reads the hidden seed field (sanity upper bound)
std::vector<std::pair<std::string, Verifier>> bundled_verifiers();

}  // namespace narcissus
