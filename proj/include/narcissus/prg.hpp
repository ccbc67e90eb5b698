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

#include "narcissus/bytes.hpp"

namespace narcissus {

// Deterministic expansion of a d-bit seed to d^4 bits via the ChaCha20
// keystream keyed by the seed. Bit strings are packed MSB-first; unused
// trailing bits of the final byte are zero. Requires 4 <= d <= 64 (a d^4-bit
// output must stay desk-scale) and |seed| == ceil(d/8) bytes with the unused
// trailing bits clear.
Bytes prg_expand(ByteView seed, int d);

}  // namespace narcissus
