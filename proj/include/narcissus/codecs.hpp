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
#include <stdexcept>
#include <string>
#include <vector>

#include "narcissus/bytes.hpp"

namespace narcissus {

// Compression codecs backing the DECOMPRESS opcode and the compression-based
// complexity heuristics. Decompression is exact and deterministic.
enum class Codec : uint8_t {
  kDeflate = 0,  // zlib format
  kRle = 1,      // run-length: (u8 count>=1, byte) pairs
};

constexpr Codec kAllCodecs[] = {Codec::kDeflate, Codec::kRle};

std::string codec_name(Codec codec);

class CodecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Bytes codec_compress(Codec codec, ByteView data);

// Throws CodecError on malformed input or when output exceeds max_out bytes.
Bytes codec_decompress(Codec codec, ByteView data, size_t max_out);

}  // namespace narcissus
