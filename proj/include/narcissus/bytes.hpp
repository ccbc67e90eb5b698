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

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace narcissus {

// Byte strings are the universal currency of the framework: records,
// mechanism outputs, adversary candidates and DSL values all travel as
// opaque bytes. std::string is used as the owning container; equality is
// byte-exact.
using Bytes = std::string;
using ByteView = std::string_view;

std::string to_hex(ByteView bytes);
Bytes from_hex(std::string_view hex);  // throws std::invalid_argument on bad input

// XOR of two equal-length byte strings.
Bytes xor_bytes(ByteView a, ByteView b);

// Number of 1-bits in the byte string.
size_t popcount(ByteView bytes);

// Hamming distance in bits between equal-length byte strings.
size_t hamming_distance(ByteView a, ByteView b);

// Hamming distance divided by the bit length (strings must have equal,
// nonzero length).
double normalized_hamming_distance(ByteView a, ByteView b);

inline uint8_t byte_at(ByteView s, size_t i) {
  return static_cast<uint8_t>(s[i]);
}

// Bit i of the string, MSB-first within each byte.
inline int bit_at(ByteView s, size_t i) {
  return (byte_at(s, i / 8) >> (7 - i % 8)) & 1;
}

}  // namespace narcissus
