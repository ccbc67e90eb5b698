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

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "narcissus/bytes.hpp"

namespace narcissus {

// SHA-256 (FIPS 180-4). Used for labeled stream derivation, where collision
// freedom across label paths is the whole point.
std::array<uint8_t, 32> sha256(ByteView data);

// One ChaCha block (RFC 8439 state layout: 32-bit counter, 96-bit nonce).
// `rounds` must be even; 20 gives the standard cipher, 8 the fast keystream
// used by RngStream.
void chacha_block(const std::array<uint8_t, 32>& key, uint32_t counter,
                  const std::array<uint8_t, 12>& nonce, int rounds,
                  uint8_t out[64]);

// A label in a stream derivation path: either a name or an index.
using StreamLabel = std::variant<std::string, uint64_t>;

// Counter-based keystream generator with labeled derivation.
//
// A stream is identified by a 256-bit key obtained by hashing the root seed
// and then chain-hashing each label. Streams with distinct label paths are
// computationally independent; identical paths reproduce identical bits.
// Output is the ChaCha8 keystream under the stream key, so streams are pure
// values: copying one forks its state, and parallel trials need no locking.
class RngStream {
 public:
  // Root stream for a 64-bit experiment seed.
  static RngStream from_root(uint64_t seed);

  // Derived stream for a child label. Does not disturb this stream.
  RngStream child(std::string_view label) const;
  RngStream child(uint64_t index) const;

  uint32_t next_u32();
  uint64_t next_u64();

  // Uniform in [0, 1), 53 bits of precision.
  double next_double();

  // Uniform in [0, n) via masked rejection (exact, no modulo bias).
  size_t next_index(size_t n);

  // Bernoulli(p) draw.
  bool bernoulli(double p) { return next_double() < p; }

  int bit() { return static_cast<int>(next_u32() & 1u); }

  Bytes next_bytes(size_t n);
  void fill(uint8_t* out, size_t n);

  const std::array<uint8_t, 32>& key() const { return key_; }

 private:
  explicit RngStream(const std::array<uint8_t, 32>& key)
      : key_(key), counter_(0), pos_(64) {}

  void refill();

  std::array<uint8_t, 32> key_;
  uint32_t counter_;
  size_t pos_;  // consumed bytes in buf_; 64 means empty
  uint8_t buf_[64];
};

// Stream for (root seed, label path). Equivalent to folding child() over the
// labels, provided for symmetry with how experiments describe their streams.
RngStream derive_stream(uint64_t root_seed,
                        const std::vector<StreamLabel>& labels);

}  // namespace narcissus
