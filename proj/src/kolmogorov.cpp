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

#include "narcissus/kolmogorov.hpp"

#include <algorithm>
#include <cmath>

namespace narcissus {

Target Target::exact(Bytes x) {
  Target t;
  t.description = "exact{" + std::to_string(x.size()) + " bytes}";
  t.contains = [x](ByteView z) { return z == ByteView(x); };
  t.canonical = std::move(x);
  t.singleton = true;
  return t;
}

Target Target::hamming_ball(Bytes x, double threshold, size_t width_bits,
                            size_t elements) {
  if (width_bits == 0 || width_bits % 8 != 0 || x.size() != width_bits / 8) {
    throw std::invalid_argument("Target::hamming_ball: bad width");
  }
  if (elements == 0) {
    throw std::invalid_argument("Target::hamming_ball: elements >= 1");
  }
  Target t;
  t.description = "hamming(th=" + std::to_string(threshold) +
                  ",width=" + std::to_string(width_bits) +
                  ",elements=" + std::to_string(elements) + ")";
  size_t width_bytes = width_bits / 8;
  Bytes target = x;
  t.contains = [target, threshold, width_bytes, elements](ByteView z) {
    if (z.size() != width_bytes * elements) return false;
    for (size_t e = 0; e < elements; ++e) {
      ByteView item = z.substr(e * width_bytes, width_bytes);
      if (normalized_hamming_distance(target, item) <= threshold) return true;
    }
    return false;
  };
  // The concatenated copies of x are always a member.
  Bytes canonical;
  for (size_t e = 0; e < elements; ++e) canonical += x;
  t.canonical = std::move(canonical);
  t.element_width_bits = width_bits;
  t.list_elements = elements;
  return t;
}

KEstimate KEstimate::none(std::string method) {
  KEstimate e;
  e.kind = Kind::kUpperExactInDsl;
  e.no_bound = true;
  e.method = std::move(method);
  e.confidence = "no witness found within budget";
  return e;
}

namespace {

constexpr uint64_t kAcceptNumerator = 2;  // accept at >= 2/3 of draws
constexpr uint64_t kAcceptDenominator = 3;

// Executes a candidate witness. Deterministic programs run once; randomized
// ones are accepted when >= 2/3 of `draws` executions hit the target.
bool witness_hits(const dsl::Program& program, const Target& target,
                  const std::optional<Bytes>& input, uint64_t draws,
                  uint64_t seed) {
  ByteView in = input ? ByteView(*input) : ByteView{};
  RngStream root = RngStream::from_root(seed).child("witness-check");
  if (program.is_deterministic()) {
    RngStream stream = root.child(uint64_t{0});
    try {
      return target.contains(dsl::execute(program, in, stream));
    } catch (const dsl::ExecutionError&) {
      return false;
    }
  }
  uint64_t hits = 0;
  for (uint64_t i = 0; i < draws; ++i) {
    RngStream stream = root.child(i);
    try {
      if (target.contains(dsl::execute(program, in, stream))) ++hits;
    } catch (const dsl::ExecutionError&) {
    }
  }
  return hits * kAcceptDenominator >= kAcceptNumerator * draws;
}

struct Search {
  const Target& target;
  const std::optional<Bytes>& input;
  const KUpperOptions& options;

  std::optional<dsl::Program> best;
  size_t best_bits = 0;
  std::string best_method;

  void offer(dsl::Program program, const std::string& method) {
    size_t bits = dsl::program_length_bits(program);
    if (best && bits >= best_bits) return;
    if (!witness_hits(program, target, input, options.witness_draws,
                      options.seed)) {
      return;
    }
    best = std::move(program);
    best_bits = bits;
    best_method = method;
  }
};

// Smallest period u such that s is u repeated an integral number of times.
size_t smallest_period(ByteView s) {
  for (size_t period = 1; period <= s.size() / 2; ++period) {
    if (s.size() % period != 0) continue;
    bool ok = true;
    for (size_t i = period; i < s.size() && ok; ++i) {
      ok = s[i] == s[i - period];
    }
    if (ok) return period;
  }
  return s.size();
}

void try_templates(Search& search) {
  const Target& target = search.target;
  const std::optional<Bytes>& input = search.input;

  if (target.canonical) {
    const Bytes& canonical = *target.canonical;
    search.offer(dsl::Program{{dsl::lit(canonical), dsl::output()}},
                 "template:literal");

    size_t period = smallest_period(canonical);
    if (period < canonical.size()) {
      search.offer(
          dsl::Program{{dsl::lit(canonical.substr(0, period)),
                        dsl::repeat(uint32_t(canonical.size() / period)),
                        dsl::output()}},
          "template:literal-repeat");
    }

    if (input) {
      // Longest shared prefix between the input and the canonical member.
      size_t k = 0;
      while (k < input->size() && k < canonical.size() &&
             (*input)[k] == canonical[k]) {
        ++k;
      }
      if (k == canonical.size() && k == input->size()) {
        search.offer(dsl::Program{{dsl::input(), dsl::output()}},
                     "template:identity");
      }
      if (k > 0) {
        search.offer(
            dsl::Program{{dsl::input(), dsl::slice(0, uint32_t(k)),
                          dsl::lit(canonical.substr(k)), dsl::concat(),
                          dsl::output()}},
            "template:input-prefix");
      }
    }
  }

  if (target.element_width_bits) {
    uint32_t width = uint32_t(*target.element_width_bits);
    uint32_t elements = uint32_t(search.target.list_elements);
    // Blind random guesses for every element.
    search.offer(dsl::Program{{dsl::rand_bits(width * elements),
                               dsl::output()}},
                 "template:random-guess");
    if (input && 8 * input->size() < width) {
      // Extend the input with random bits, per element.
      uint32_t pad = width - uint32_t(8 * input->size());
      std::vector<dsl::Instruction> code;
      for (uint32_t e = 0; e < elements; ++e) {
        code.push_back(dsl::input());
        code.push_back(dsl::rand_bits(pad));
        code.push_back(dsl::concat());
        if (e > 0) code.push_back(dsl::concat());
      }
      code.push_back(dsl::output());
      search.offer(dsl::Program{std::move(code)}, "template:input-extend");
    }
  }
}

void try_compression(Search& search) {
  if (!search.target.singleton || !search.target.canonical) return;
  for (Codec codec : search.options.codecs) {
    Bytes packed = codec_compress(codec, *search.target.canonical);
    search.offer(dsl::Program{{dsl::lit(packed),
                               dsl::decompress(uint8_t(codec)),
                               dsl::output()}},
                 "compress:" + codec_name(codec));
  }
}

// Exhaustive enumeration of programs whose serialized size fits the budget.
// Literal contents are enumerated exhaustively up to 2 bytes; RAND widths
// over byte multiples up to 64 bytes. Programs are generated in ascending
// size order so the first hit is minimal over the enumerated lattice.
class Enumerator {
 public:
  Enumerator(Search& search, size_t budget_bytes, uint64_t cap)
      : search_(search), budget_(budget_bytes), cap_(cap) {}

  void run() {
    if (budget_ <= dsl::kHeaderBytes) return;
    std::vector<dsl::Instruction> code;
    extend(code, dsl::kHeaderBytes, 0);
  }

 private:
  void extend(std::vector<dsl::Instruction>& code, size_t bytes, int depth) {
    if (visited_ > cap_ || (search_.best && budget_ >= search_.best_bits / 8)) {
      // Keep scanning only while a shorter witness is still possible.
      if (visited_ > cap_) return;
    }
    // OUTPUT closes a program when exactly one value is on the stack.
    if (depth == 1 && bytes + 1 <= budget_) {
      code.push_back(dsl::output());
      ++visited_;
      search_.offer(dsl::Program{code}, "enumeration");
      code.pop_back();
    }
    if (visited_ > cap_) return;

    auto try_instr = [&](dsl::Instruction instr, int pops, int pushes) {
      size_t size = dsl::instruction_serialized_size(instr);
      if (bytes + size + 1 > budget_) return;  // +1 for the closing OUTPUT
      if (depth < pops) return;
      code.push_back(std::move(instr));
      extend(code, bytes + size, depth - pops + pushes);
      code.pop_back();
    };

    try_instr(dsl::input(), 0, 1);
    try_instr(dsl::concat(), 2, 1);
    try_instr(dsl::prg_expand_op(), 1, 1);
    for (uint8_t codec = 0; codec <= 1; ++codec) {
      try_instr(dsl::decompress(codec), 1, 1);
    }
    for (uint32_t count : {2u, 3u, 4u, 8u, 16u, 64u, 256u, 1000u, 1024u}) {
      try_instr(dsl::repeat(count), 1, 1);
    }
    for (uint32_t nbits = 8; nbits <= 512; nbits += 8) {
      try_instr(dsl::rand_bits(nbits), 0, 1);
    }
    if (search_.input) {
      uint32_t in_size = uint32_t(search_.input->size());
      for (uint32_t a = 0; a <= std::min(in_size, 16u); ++a) {
        for (uint32_t b = a; b <= in_size; ++b) {
          if (b > 16 && b != in_size) continue;
          try_instr(dsl::slice(a, b), 1, 1);
        }
      }
    }
    // Literals: all byte strings of length 0..2.
    try_instr(dsl::lit(""), 0, 1);
    for (int c0 = 0; c0 < 256; ++c0) {
      Bytes one(1, char(c0));
      try_instr(dsl::lit(one), 0, 1);
      if (visited_ > cap_) return;
      for (int c1 = 0; c1 < 256; ++c1) {
        Bytes two = one + char(c1);
        try_instr(dsl::lit(two), 0, 1);
      }
    }
  }

  Search& search_;
  size_t budget_;
  uint64_t cap_;
  uint64_t visited_ = 0;
};

}  // namespace

KEstimate k_upper(const Target& target, const std::optional<Bytes>& input,
                  const KUpperOptions& options) {
  if (!target.contains) {
    throw std::invalid_argument("k_upper: target has no membership test");
  }
  Search search{target, input, options, {}, 0, {}};
  try_templates(search);
  try_compression(search);
  if (options.search_budget_bytes > dsl::kHeaderBytes) {
    Enumerator(search, options.search_budget_bytes, options.enumeration_cap)
        .run();
  }

  if (!search.best) {
    return KEstimate::none(input ? "conditional-search" : "search");
  }
  KEstimate estimate;
  estimate.kind = KEstimate::Kind::kUpperExactInDsl;
  estimate.value_bits = double(search.best_bits);
  estimate.method = search.best_method;
  estimate.confidence = search.best->is_deterministic()
                            ? "deterministic witness"
                            : "witness hits >= 2/3 of draws";
  estimate.witness = std::move(search.best);
  return estimate;
}

KEstimate k_lower_heuristic(ByteView x, const std::vector<Codec>& codecs) {
  if (codecs.empty()) {
    throw std::invalid_argument("k_lower_heuristic: no codecs");
  }
  KEstimate estimate;
  estimate.kind = KEstimate::Kind::kLowerHeuristic;
  double best = 0.0;
  std::string best_codec;
  for (Codec codec : codecs) {
    double bits = 8.0 * double(codec_compress(codec, x).size());
    if (best_codec.empty() || bits < best) {
      best = bits;
      best_codec = codec_name(codec);
    }
  }
  estimate.value_bits = best;
  estimate.method = "min-compressed:" + best_codec;
  estimate.confidence =
      "heuristic proxy; a compression length upper-bounds the true "
      "complexity and can overestimate hardness";
  return estimate;
}

KEstimate k_lower_heuristic(const Target& target,
                            const std::vector<Codec>& codecs) {
  if (!target.canonical) {
    throw std::invalid_argument(
        "k_lower_heuristic: target has no canonical member");
  }
  return k_lower_heuristic(*target.canonical, codecs);
}

KiReport ki_estimate(const Target& target, const Bytes& y,
                     const KUpperOptions& options) {
  KiReport report;
  report.minuend = k_upper(target, std::nullopt, options);
  if (report.minuend.no_bound && target.canonical) {
    report.minuend = k_lower_heuristic(target, options.codecs);
    report.minuend.method += " (floor for unconditional complexity)";
  }
  report.subtrahend = k_upper(target, y, options);
  if (report.minuend.no_bound || report.subtrahend.no_bound) {
    report.no_bound = true;
    return report;
  }
  report.ki_bits = report.minuend.value_bits - report.subtrahend.value_bits;
  return report;
}

ExtractionEvidence validate_extractor(const dsl::Program& program,
                                      const Bytes& y, const Target& target,
                                      double q, uint64_t trials,
                                      uint64_t seed) {
  if (q < 0.0 || q >= 1.0) {
    throw std::invalid_argument("validate_extractor: q must be in [0,1)");
  }
  if (trials == 0) {
    throw std::invalid_argument("validate_extractor: trials >= 1");
  }

  ExtractionEvidence evidence;
  evidence.program = program;
  evidence.model = y;
  evidence.relation_description = target.description;
  evidence.q = q;
  evidence.trials = trials;

  RngStream root = RngStream::from_root(seed).child("validate");
  for (uint64_t t = 0; t < trials; ++t) {
    RngStream stream = root.child(t);
    try {
      if (target.contains(dsl::execute(program, y, stream))) {
        ++evidence.successes;
      }
    } catch (const dsl::ExecutionError&) {
      // Runtime errors are failures, not aborts.
    }
  }
  evidence.success_rate = double(evidence.successes) / double(trials);
  // One-sided lower bound at 95%: the two-sided 90% interval's lower end.
  evidence.success_ci = clopper_pearson(evidence.successes, trials, 0.90);
  evidence.k_lower = k_lower_heuristic(target);

  double length_bits = double(dsl::program_length_bits(program));
  evidence.quality = 1.0 - length_bits / evidence.k_lower.value_bits;
  bool hits = evidence.success_ci.lower >= 2.0 / 3.0;
  bool incompressible = evidence.k_lower.value_bits >= length_bits / (1.0 - q);
  evidence.accepted = hits && incompressible;
  return evidence;
}

Relation build_r_ext(const Relation& inner, double q,
                     std::function<double(const Dataset&)> k_lower_fn,
                     dsl::ExecLimits limits) {
  if (q < 0.0 || q >= 1.0) {
    throw std::invalid_argument("build_r_ext: q must be in [0,1)");
  }
  std::string name = "r-ext(" + inner.name + ",q=" + std::to_string(q) + ")";
  return Relation{
      name, inner.is_randomized,
      [inner, q, k_lower_fn = std::move(k_lower_fn), limits](
          const Dataset& s, const Candidate& z, RngStream& stream) -> bool {
        const auto& pair = expect_candidate<CandidateTuple>(z, "r-ext");
        if (pair.items.size() != 2) {
          throw CandidateError("r-ext: candidate must be (model, program)");
        }
        const auto& model = expect_candidate<Bytes>(pair.items[0], "r-ext");
        const auto& handle =
            expect_candidate<ProgramHandle>(pair.items[1], "r-ext");

        double length_bits =
            double(dsl::program_length_bits(handle.program));
        double floor_bits = k_lower_fn(s);
        if (floor_bits <= 0.0 || length_bits > (1.0 - q) * floor_bits) {
          return false;
        }

        Bytes out;
        try {
          RngStream exec_stream = stream.child("dsl");
          out = dsl::execute(handle.program, model, exec_stream, limits);
        } catch (const dsl::ExecutionError&) {
          return false;
        }
        RngStream rel_stream = stream.child("rel");
        return inner.eval(s, Candidate{out}, rel_stream);
      }};
}

}  // namespace narcissus
