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

#include "narcissus/prg.hpp"

#include <array>
#include <cstring>
#include <stdexcept>

#include "narcissus/rng.hpp"

namespace narcissus {

Bytes prg_expand(ByteView seed, int d) {
  if (d < 4 || d > 64) {
    throw std::invalid_argument("prg_expand: d must be in [4, 64]");
  }
  const size_t seed_bytes = (static_cast<size_t>(d) + 7) / 8;
  if (seed.size() != seed_bytes) {
    throw std::invalid_argument("prg_expand: seed must hold exactly d bits");
  }
  if (d % 8 != 0) {
    uint8_t spare_mask = static_cast<uint8_t>(0xff >> (d % 8));
    if (byte_at(seed, seed_bytes - 1) & spare_mask) {
      throw std::invalid_argument("prg_expand: trailing seed bits must be 0");
    }
  }

  // Key layout: seed bytes, then the bit length, then a fixed domain tag.
  // Distinct (seed, d) pairs map to distinct keys.
  std::array<uint8_t, 32> key{};
  std::memcpy(key.data(), seed.data(), seed.size());
  key[8] = static_cast<uint8_t>(d);
  static constexpr char kTag[] = "narcissus.prg.v1";
  std::memcpy(key.data() + 9, kTag, sizeof(kTag) - 1);

  const uint64_t out_bits = static_cast<uint64_t>(d) * d * d * d;
  const size_t out_bytes = static_cast<size_t>((out_bits + 7) / 8);
  Bytes out(out_bytes, '\0');

  static constexpr std::array<uint8_t, 12> kNonce = {0};
  uint8_t block[64];
  size_t done = 0;
  uint32_t counter = 0;
  while (done < out_bytes) {
    chacha_block(key, counter++, kNonce, /*rounds=*/20, block);
    size_t take = std::min(out_bytes - done, sizeof(block));
    std::memcpy(out.data() + done, block, take);
    done += take;
  }
  if (out_bits % 8 != 0) {
    out.back() &= static_cast<char>(0xff << (8 - out_bits % 8));
  }
  return out;
}

}  // namespace narcissus
