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

#include "narcissus/relations.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace narcissus {

Relation rel_coordinate_guess(RecordQuery query) {
  return Relation{
      "coordinate-guess", false,
      [query = std::move(query)](const Dataset& s, const Candidate& z,
                                 RngStream&) -> bool {
        const auto& guess = expect_candidate<IndexGuess>(z, "coordinate-guess");
        if (guess.index >= s.size()) {
          throw CandidateError("coordinate-guess: index out of range");
        }
        if (!guess.bit.has_value()) return false;  // intentional failure
        return query(s.record(guess.index)) == *guess.bit;
      }};
}

Relation rel_pinpoint(size_t k) {
  return Relation{
      "pinpoint(k=" + std::to_string(k) + ")", false,
      [k](const Dataset& s, const Candidate& z, RngStream&) -> bool {
        const auto& pin = expect_candidate<Pinpoint>(z, "pinpoint");
        if (pin.indices.size() != k || pin.bits.size() != k) {
          throw CandidateError("pinpoint: candidate must pin k coordinates");
        }
        std::unordered_set<size_t> seen;
        for (size_t i = 0; i < k; ++i) {
          if (pin.indices[i] >= s.size()) {
            throw CandidateError("pinpoint: index out of range");
          }
          if (!seen.insert(pin.indices[i]).second) {
            throw CandidateError("pinpoint: duplicate index");
          }
          ByteView r = s.record(pin.indices[i]);
          int value = r.empty() ? 0 : bit_at(r, 0);
          if (value != pin.bits[i]) return false;
        }
        return true;
      }};
}

Relation rel_mi() {
  return Relation{
      "membership-inference", true,
      [](const Dataset& s, const Candidate& z, RngStream& stream) -> bool {
        const auto& f =
            expect_candidate<FunctionHandle>(z, "membership-inference");
        if (s.empty()) {
          throw CandidateError("membership-inference: empty dataset");
        }
        size_t index = stream.next_index(s.size());
        return f.eval(s.record(index)) == 1;
      }};
}

Relation rel_singling_out() {
  return Relation{
      "singling-out", false,
      [](const Dataset& s, const Candidate& z, RngStream&) -> bool {
        const auto& p = expect_candidate<PredicateHandle>(z, "singling-out");
        size_t matches = 0;
        for (size_t i = 0; i < s.size(); ++i) {
          if (p.eval(s.record(i)) && ++matches > 1) return false;
        }
        return matches == 1;
      }};
}

namespace {

// Accepts either a tuple of byte strings or a single byte string parsed as
// fixed-width elements.
std::vector<ByteView> parse_candidate_list(const Candidate& z,
                                           size_t width_bytes,
                                           size_t max_list,
                                           const char* rel_name) {
  std::vector<ByteView> items;
  if (const auto* tuple = std::get_if<CandidateTuple>(&z.value)) {
    for (const auto& item : tuple->items) {
      const auto& bytes = expect_candidate<Bytes>(item, rel_name);
      items.push_back(bytes);
    }
  } else {
    const auto& bytes = expect_candidate<Bytes>(z, rel_name);
    if (width_bytes == 0 || bytes.size() % width_bytes != 0) {
      throw CandidateError(std::string(rel_name) +
                           ": candidate length is not a multiple of the "
                           "element width");
    }
    ByteView view(bytes);
    for (size_t off = 0; off < view.size(); off += width_bytes) {
      items.push_back(view.substr(off, width_bytes));
    }
  }
  if (items.size() > max_list) {
    throw CandidateError(std::string(rel_name) + ": list length " +
                         std::to_string(items.size()) + " exceeds bound " +
                         std::to_string(max_list));
  }
  return items;
}

}  // namespace

Relation rel_hamming_list(double threshold, HammingMode mode,
                          size_t width_bits, size_t max_list) {
  if (width_bits == 0 || width_bits % 8 != 0) {
    throw std::invalid_argument(
        "rel_hamming_list: width must be a positive multiple of 8 bits");
  }
  size_t width_bytes = width_bits / 8;
  return Relation{
      "hamming-list", false,
      [threshold, mode, width_bytes, max_list](
          const Dataset& s, const Candidate& z, RngStream&) -> bool {
        auto items =
            parse_candidate_list(z, width_bytes, max_list, "hamming-list");
        auto close_to = [&](ByteView target) {
          for (ByteView item : items) {
            if (item.size() != target.size()) {
              throw CandidateError("hamming-list: element width mismatch");
            }
            if (normalized_hamming_distance(target, item) <= threshold) {
              return true;
            }
          }
          return false;
        };
        if (mode == HammingMode::kSingleTarget) {
          if (s.empty()) throw CandidateError("hamming-list: empty dataset");
          return close_to(s.record(0));
        }
        for (size_t i = 0; i < s.size(); ++i) {
          if (close_to(s.record(i))) return true;
        }
        return false;
      }};
}

Relation rel_exact_membership() {
  return Relation{"exact-membership", false,
                  [](const Dataset& s, const Candidate& z, RngStream&) -> bool {
                    const auto& bytes =
                        expect_candidate<Bytes>(z, "exact-membership");
                    for (size_t i = 0; i < s.size(); ++i) {
                      if (s.record(i) == ByteView(bytes)) return true;
                    }
                    return false;
                  }};
}

Relation rel_first_record_recovery() {
  return Relation{"first-record-recovery", false,
                  [](const Dataset& s, const Candidate& z, RngStream&) -> bool {
                    const auto& bytes =
                        expect_candidate<Bytes>(z, "first-record-recovery");
                    return !s.empty() && s.record(0) == ByteView(bytes);
                  }};
}

Relation rel_tag_bit_agreement() {
  return Relation{"tag-bit-agreement", false,
                  [](const Dataset& s, const Candidate& z, RngStream&) -> bool {
                    const auto& bytes =
                        expect_candidate<Bytes>(z, "tag-bit-agreement");
                    if (s.empty() || s.record(0).empty() || bytes.empty()) {
                      return false;
                    }
                    return (byte_at(s.record(0), 0) & 1) ==
                           (byte_at(bytes, 0) & 1);
                  }};
}

Relation rel_same_image(std::function<Bytes(ByteView)> f) {
  return Relation{"same-image", false,
                  [f = std::move(f)](const Dataset& s, const Candidate& z,
                                     RngStream&) -> bool {
                    const auto& bytes = expect_candidate<Bytes>(z, "same-image");
                    if (s.size() != 1) {
                      throw CandidateError("same-image: single-record only");
                    }
                    if (bytes.empty()) return false;  // abstain-by-empty
                    return f(bytes) == f(s.record(0));
                  }};
}

Relation rel_dataset_event(Dataset s0, Bytes witness_output) {
  return Relation{"dataset-event", false,
                  [s0 = std::move(s0), witness_output =
                                           std::move(witness_output)](
                      const Dataset& s, const Candidate& z, RngStream&) -> bool {
                    const auto& bytes =
                        expect_candidate<Bytes>(z, "dataset-event");
                    return s == s0 && bytes == witness_output;
                  }};
}

int k_eidetic_filter(size_t k, const Dataset& dataset, ByteView s) {
  size_t occurrences = 0;
  for (size_t i = 0; i < dataset.size(); ++i) {
    ByteView record = dataset.record(i);
    if (record.find(s) != ByteView::npos) {
      if (++occurrences > k) return 0;
    }
  }
  return 1;
}

// ---------------------------------------------------------------------------
// Distributions.

DatasetDistribution dist_iid_bernoulli_bits(size_t n, double p) {
  if (n == 0) throw std::invalid_argument("dist_iid_bernoulli_bits: n >= 1");
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument("dist_iid_bernoulli_bits: p in [0,1]");
  }
  // Fixed-point threshold on one u32 per record keeps million-trial games
  // inside the keystream budget.
  const uint64_t threshold = uint64_t(std::llround(p * 4294967296.0));
  return DatasetDistribution{
      "iid-bernoulli(n=" + std::to_string(n) + ",p=" + std::to_string(p) + ")",
      n, [n, threshold](RngStream& stream) {
        Bytes pool(n, '\0');
        for (size_t i = 0; i < n; ++i) {
          pool[i] = char(uint64_t(stream.next_u32()) < threshold ? 1 : 0);
        }
        return Dataset::fixed_width(1, std::move(pool));
      }};
}

DatasetDistribution dist_canonical_mixture(size_t n, Bytes canonical,
                                           double prob) {
  if (prob < 0.0 || prob > 1.0) {
    throw std::invalid_argument("dist_canonical_mixture: prob in [0,1]");
  }
  return DatasetDistribution{
      "canonical-mixture(n=" + std::to_string(n) + ")", n,
      [n, canonical = std::move(canonical), prob](RngStream& stream) {
        Dataset d;
        for (size_t i = 0; i < n; ++i) {
          if (stream.bernoulli(prob)) {
            d.append(canonical);
          } else {
            d.append(stream.next_bytes(16));
          }
        }
        return d;
      }};
}

DatasetDistribution dist_uniform_records(size_t n, size_t record_bytes) {
  if (n == 0 || record_bytes == 0) {
    throw std::invalid_argument("dist_uniform_records: empty shape");
  }
  return DatasetDistribution{
      "uniform-records(n=" + std::to_string(n) +
          ",bytes=" + std::to_string(record_bytes) + ")",
      n, [n, record_bytes](RngStream& stream) {
        Bytes pool = stream.next_bytes(n * record_bytes);
        return Dataset::fixed_width(record_bytes, std::move(pool));
      }};
}

namespace {

Bytes uniform_bit_string(RngStream& stream, size_t bits) {
  Bytes out = stream.next_bytes((bits + 7) / 8);
  if (bits % 8 != 0) out.back() &= char(0xff << (8 - bits % 8));
  return out;
}

}  // namespace

DatasetDistribution dist_xor_pair_inputs(size_t lambda_bits) {
  if (lambda_bits == 0) {
    throw std::invalid_argument("dist_xor_pair_inputs: lambda >= 1");
  }
  return DatasetDistribution{
      "xor-pair-inputs(lambda=" + std::to_string(lambda_bits) + ")", 2,
      [lambda_bits](RngStream& stream) {
        Dataset d;
        d.append(uniform_bit_string(stream, lambda_bits));
        d.append(uniform_bit_string(stream, lambda_bits));
        return d;
      }};
}

DatasetDistribution dist_single_uniform_record(size_t lambda_bits) {
  if (lambda_bits == 0) {
    throw std::invalid_argument("dist_single_uniform_record: lambda >= 1");
  }
  return DatasetDistribution{
      "single-uniform-record(lambda=" + std::to_string(lambda_bits) + ")", 1,
      [lambda_bits](RngStream& stream) {
        Dataset d;
        d.append(uniform_bit_string(stream, lambda_bits));
        return d;
      }};
}

PairedDatasetDistribution paired_constant(Dataset s0, Dataset s1) {
  return PairedDatasetDistribution{
      "paired-constant",
      [s0 = std::move(s0), s1 = std::move(s1)](RngStream&) {
        return std::make_pair(s0, s1);
      }};
}

PairedDatasetDistribution paired_iid(DatasetDistribution dist) {
  return PairedDatasetDistribution{
      "paired-iid(" + dist.name + ")",
      [dist = std::move(dist)](RngStream& stream) {
        RngStream left = stream.child("0");
        RngStream right = stream.child("1");
        return std::make_pair(dist.sample(left), dist.sample(right));
      }};
}

// ---------------------------------------------------------------------------
// Adversaries.

Adversary adv_fixed(Candidate z_star) {
  return Adversary{"fixed", [z_star = std::move(z_star)](const Output&,
                                                         RngStream&) {
                     return z_star;
                   }};
}

Adversary adv_random_guess(size_t n) {
  return Adversary{"random-guess", [n](const Output&, RngStream& stream) {
                     IndexGuess guess;
                     guess.index = stream.next_index(n);
                     guess.bit = stream.bit();
                     return Candidate{guess};
                   }};
}

Adversary adv_abstain(size_t n) {
  return Adversary{"abstain", [n](const Output&, RngStream& stream) {
                     IndexGuess guess;
                     guess.index = stream.next_index(n);
                     guess.bit = std::nullopt;
                     return Candidate{guess};
                   }};
}

Adversary adv_counting_threshold(size_t n) {
  return Adversary{"counting-threshold",
                   [n](const Output& y, RngStream& stream) {
                     IndexGuess guess;
                     guess.index = stream.next_index(n);
                     if (y.is_bottom()) {
                       guess.bit = std::nullopt;
                     } else {
                       guess.bit = y.as_real() > 0.5 ? 1 : 0;
                     }
                     return Candidate{guess};
                   }};
}

Adversary adv_positive_mean(size_t n) {
  return Adversary{"positive-mean", [n](const Output& y, RngStream& stream) {
                     IndexGuess guess;
                     guess.index = stream.next_index(n);
                     if (!y.is_bottom() && y.as_real() > 0.0) {
                       guess.bit = 1;
                     } else {
                       guess.bit = std::nullopt;
                     }
                     return Candidate{guess};
                   }};
}

Adversary adv_xor_recover() {
  return Adversary{"xor-recover", [](const Output& y, RngStream&) {
                     const auto& parts = y.as_tuple();
                     if (parts.size() != 2) {
                       throw std::invalid_argument(
                           "xor-recover: expected a pair of outputs");
                     }
                     return Candidate{
                         xor_bytes(parts[0].as_bytes(), parts[1].as_bytes())};
                   }};
}

Adversary adv_echo() {
  return Adversary{"echo", [](const Output& y, RngStream&) {
                     if (y.is_bytes()) return Candidate{y.as_bytes()};
                     return Candidate{Bytes{}};
                   }};
}

Adversary adv_echo_random_bit() {
  return Adversary{"echo-random-bit", [](const Output& y, RngStream& stream) {
                     IndexGuess guess;
                     if (!y.is_bytes() || y.as_bytes().empty()) {
                       guess.index = 0;
                       guess.bit = std::nullopt;
                       return Candidate{guess};
                     }
                     const Bytes& released = y.as_bytes();
                     guess.index = stream.next_index(released.size());
                     guess.bit = byte_at(released, guess.index) & 1;
                     return Candidate{guess};
                   }};
}

Adversary adv_mi_threshold(double t) {
  return Adversary{"mi-threshold(t=" + std::to_string(t) + ")",
                   [t](const Output& y, RngStream&) {
                     FunctionHandle f;
                     if (y.is_bottom()) {
                       f.kind = FunctionHandle::Kind::kConstBit;
                       f.bit = 0;
                     } else {
                       f.kind = FunctionHandle::Kind::kBitMatchesMean;
                       f.mean = y.as_real();
                       f.threshold = t;
                     }
                     return Candidate{f};
                   }};
}

Adversary adv_brute_force_inverter(std::function<Bytes(ByteView)> f,
                                   uint64_t guesses, size_t lambda_bits) {
  return Adversary{
      "brute-force-inverter(" + std::to_string(guesses) + ")",
      [f = std::move(f), guesses, lambda_bits](const Output& y,
                                               RngStream& stream) {
        const Bytes& image = y.as_bytes();
        for (uint64_t g = 0; g < guesses; ++g) {
          Bytes x = uniform_bit_string(stream, lambda_bits);
          if (f(x) == image) return Candidate{std::move(x)};
        }
        return Candidate{Bytes{}};
      }};
}

}  // namespace narcissus
