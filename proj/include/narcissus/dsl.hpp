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
#include "narcissus/rng.hpp"

// A fixed stack bytecode language. Program length is measured on the
// serialized form, so complexity bounds are reproducible across platforms
// and the per-opcode overhead constants are pinned by the format version.
//
// Serialized layout (version 1, all integers little-endian):
//   magic "NDSL" | u8 version | instruction stream
//   LIT        0x01 | u32 len | bytes       push literal
//   INPUT      0x02                         push the program input
//   SLICE      0x03 | u32 a | u32 b         pop s, push s[a, b)
//   CONCAT     0x04                         pop b, pop a, push a+b
//   REPEAT     0x05 | u32 count             pop s, push s repeated count times
//   RAND       0x06 | u32 nbits             push nbits fresh random bits
//   PRG_EXPAND 0x07                         pop d-bit seed, push d^4-bit expansion
//   DECOMPRESS 0x08 | u8 codec              pop compressed bytes, push plain
//   OUTPUT     0x09                         pop s, output s and halt
//
// Execution halts at OUTPUT; instructions after it are dead code (they count
// toward program length but never run). Bit strings are packed MSB-first,
// with unused trailing bits of the final byte zero.
namespace narcissus::dsl {

constexpr char kMagic[4] = {'N', 'D', 'S', 'L'};
constexpr uint8_t kVersion = 1;
constexpr size_t kHeaderBytes = 5;

enum class OpCode : uint8_t {
  kLit = 0x01,
  kInput = 0x02,
  kSlice = 0x03,
  kConcat = 0x04,
  kRepeat = 0x05,
  kRand = 0x06,
  kPrgExpand = 0x07,
  kDecompress = 0x08,
  kOutput = 0x09,
};

struct Instruction {
  OpCode op = OpCode::kOutput;
  Bytes literal;     // kLit
  uint32_t a = 0;    // kSlice begin / kRepeat count / kRand nbits
  uint32_t b = 0;    // kSlice end
  uint8_t codec = 0; // kDecompress

  bool operator==(const Instruction&) const = default;
};

// Convenience constructors.
Instruction lit(Bytes bytes);
Instruction input();
Instruction slice(uint32_t a, uint32_t b);
Instruction concat();
Instruction repeat(uint32_t count);
Instruction rand_bits(uint32_t nbits);
Instruction prg_expand_op();
Instruction decompress(uint8_t codec);
Instruction output();

struct Program {
  std::vector<Instruction> instructions;

  Bytes serialize() const;
  size_t serialized_size() const;
  static Program parse(ByteView bytes);  // throws FormatError

  // True when no instruction consumes the random stream. Deterministic
  // programs produce identical output on every execution.
  bool is_deterministic() const;

  bool operator==(const Program&) const = default;
};

// Length in bits: 8x the serialized byte count (header included).
size_t program_length_bits(const Program& program);

// Serialized-size bookkeeping for length accounting without materializing.
size_t instruction_serialized_size(const Instruction& instr);

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Execution cost: 1 per instruction plus 1 per 64 bytes materialized.
// Exceeding the limit raises ExecutionError{kTimeout}; malformed stack use,
// bad slices and decode failures raise ExecutionError{kProgramError}.
struct ExecLimits {
  uint64_t step_limit = 1'000'000;
};

enum class ExecErrorKind { kTimeout, kProgramError };

class ExecutionError : public std::runtime_error {
 public:
  ExecutionError(ExecErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ExecErrorKind kind() const { return kind_; }

 private:
  ExecErrorKind kind_;
};

Bytes execute(const Program& program, ByteView input, RngStream& stream,
              const ExecLimits& limits = {});

}  // namespace narcissus::dsl
