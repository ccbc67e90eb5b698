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

#include "narcissus/hardness.hpp"

#include <stdexcept>

#include "narcissus/kolmogorov.hpp"

namespace narcissus {

dsl::Program HardInstance::seed_program() const {
  if (b != 0) {
    throw std::logic_error("seed_program: only b=0 instances carry a seed");
  }
  return dsl::Program{{dsl::lit(seed), dsl::prg_expand_op(), dsl::output()}};
}

HardInstance attacker_generate(int d, int b, RngStream& stream) {
  if (d < 4 || d > 64 || d % 4 != 0) {
    throw std::invalid_argument(
        "attacker_generate: d must be in [4,64] and divisible by 4");
  }
  if (b != 0 && b != 1) {
    throw std::invalid_argument("attacker_generate: b must be a bit");
  }

  const size_t x_bytes = size_t(d) * d * d * d / 8;
  const size_t tail_bytes = size_t(d) * d / 8;

  HardInstance instance;
  instance.d = d;
  instance.b = b;
  if (b == 0) {
    RngStream seed_stream = stream.child("seed");
    instance.seed = seed_stream.next_bytes(size_t(d) / 8);
    instance.x = prg_expand(instance.seed, d);
  } else {
    RngStream x_stream = stream.child("x");
    instance.x = x_stream.next_bytes(x_bytes);
  }
  instance.y = instance.x.substr(0, x_bytes - tail_bytes);
  Bytes tail = instance.x.substr(x_bytes - tail_bytes);
  instance.program = dsl::Program{
      {dsl::input(), dsl::lit(std::move(tail)), dsl::concat(), dsl::output()}};
  return instance;
}

HardInstance attacker_generate(int d, int b, uint64_t seed) {
  RngStream stream = RngStream::from_root(seed).child("hard-instance");
  return attacker_generate(d, b, stream);
}

AccuracyReport distinguisher_experiment(const Verifier& verifier,
                                        const std::string& name, int d,
                                        uint64_t instances, uint64_t seed) {
  if (instances == 0) {
    throw std::invalid_argument("distinguisher_experiment: instances >= 1");
  }
  RngStream root = RngStream::from_root(seed).child("distinguisher");
  AccuracyReport report;
  report.verifier = name;
  report.instances = instances;
  for (uint64_t i = 0; i < instances; ++i) {
    int b = int(i % 2);  // exactly balanced
    RngStream stream = root.child(i);
    HardInstance instance = attacker_generate(d, b, stream);
    int guess;
    try {
      guess = verifier(instance);
    } catch (...) {
      guess = 1 - b;  // exceptions count as wrong answers
    }
    if (guess == b) ++report.correct;
  }
  report.accuracy = double(report.correct) / double(instances);
  report.ci = clopper_pearson(report.correct, instances, 0.95);
  return report;
}

std::vector<std::pair<std::string, Verifier>> bundled_verifiers() {
  std::vector<std::pair<std::string, Verifier>> verifiers;
  verifiers.emplace_back("constant",
                         [](const HardInstance&) -> int { return 1; });
  verifiers.emplace_back("compression-ratio",
                         [](const HardInstance& inst) -> int {
                           double bits =
                               k_lower_heuristic(ByteView(inst.x)).value_bits;
                           double full = double(inst.x.size()) * 8.0;
                           return bits < 0.9 * full ? 0 : 1;
                         });
  verifiers.emplace_back("seed-side-channel",
                         [](const HardInstance& inst) -> int {
                           return inst.seed.empty() ? 1 : 0;
                         });
  return verifiers;
}

}  // namespace narcissus
