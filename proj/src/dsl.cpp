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

#include "narcissus/dsl.hpp"

#include <cstring>

#include "narcissus/codecs.hpp"
#include "narcissus/prg.hpp"

namespace narcissus::dsl {

namespace {
Instruction make_op(OpCode op) {
  Instruction i;
  i.op = op;
  return i;
}
}  // namespace

Instruction lit(Bytes bytes) {
  Instruction i = make_op(OpCode::kLit);
  i.literal = std::move(bytes);
  return i;
}
Instruction input() { return make_op(OpCode::kInput); }
Instruction slice(uint32_t a, uint32_t b) {
  Instruction i = make_op(OpCode::kSlice);
  i.a = a;
  i.b = b;
  return i;
}
Instruction concat() { return make_op(OpCode::kConcat); }
Instruction repeat(uint32_t count) {
  Instruction i = make_op(OpCode::kRepeat);
  i.a = count;
  return i;
}
Instruction rand_bits(uint32_t nbits) {
  Instruction i = make_op(OpCode::kRand);
  i.a = nbits;
  return i;
}
Instruction prg_expand_op() { return make_op(OpCode::kPrgExpand); }
Instruction decompress(uint8_t codec) {
  Instruction i = make_op(OpCode::kDecompress);
  i.codec = codec;
  return i;
}
Instruction output() { return make_op(OpCode::kOutput); }

namespace {

void put_u32(Bytes& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(char(uint8_t(v >> (8 * i))));
}

uint32_t get_u32(ByteView data, size_t& pos) {
  if (pos + 4 > data.size()) throw FormatError("bytecode: truncated u32");
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= uint32_t(uint8_t(data[pos + i])) << (8 * i);
  }
  pos += 4;
  return v;
}

}  // namespace

size_t instruction_serialized_size(const Instruction& instr) {
  switch (instr.op) {
    case OpCode::kLit:
      return 1 + 4 + instr.literal.size();
    case OpCode::kSlice:
      return 1 + 8;
    case OpCode::kRepeat:
    case OpCode::kRand:
      return 1 + 4;
    case OpCode::kDecompress:
      return 1 + 1;
    case OpCode::kInput:
    case OpCode::kConcat:
    case OpCode::kPrgExpand:
    case OpCode::kOutput:
      return 1;
  }
  throw FormatError("bytecode: unknown opcode");
}

size_t Program::serialized_size() const {
  size_t n = kHeaderBytes;
  for (const auto& instr : instructions) n += instruction_serialized_size(instr);
  return n;
}

Bytes Program::serialize() const {
  Bytes out;
  out.reserve(serialized_size());
  out.append(kMagic, sizeof(kMagic));
  out.push_back(char(kVersion));
  for (const auto& instr : instructions) {
    out.push_back(char(uint8_t(instr.op)));
    switch (instr.op) {
      case OpCode::kLit:
        put_u32(out, uint32_t(instr.literal.size()));
        out.append(instr.literal);
        break;
      case OpCode::kSlice:
        put_u32(out, instr.a);
        put_u32(out, instr.b);
        break;
      case OpCode::kRepeat:
      case OpCode::kRand:
        put_u32(out, instr.a);
        break;
      case OpCode::kDecompress:
        out.push_back(char(instr.codec));
        break;
      default:
        break;
    }
  }
  return out;
}

Program Program::parse(ByteView bytes) {
  if (bytes.size() < kHeaderBytes ||
      std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    throw FormatError("bytecode: bad magic");
  }
  if (uint8_t(bytes[4]) != kVersion) {
    throw FormatError("bytecode: unsupported version " +
                      std::to_string(int(uint8_t(bytes[4]))));
  }
  Program program;
  size_t pos = kHeaderBytes;
  while (pos < bytes.size()) {
    auto op = OpCode(uint8_t(bytes[pos++]));
    Instruction instr;
    instr.op = op;
    switch (op) {
      case OpCode::kLit: {
        uint32_t len = get_u32(bytes, pos);
        if (pos + len > bytes.size()) {
          throw FormatError("bytecode: truncated literal");
        }
        instr.literal = Bytes(bytes.substr(pos, len));
        pos += len;
        break;
      }
      case OpCode::kSlice:
        instr.a = get_u32(bytes, pos);
        instr.b = get_u32(bytes, pos);
        break;
      case OpCode::kRepeat:
      case OpCode::kRand:
        instr.a = get_u32(bytes, pos);
        break;
      case OpCode::kDecompress:
        if (pos >= bytes.size()) throw FormatError("bytecode: truncated codec");
        instr.codec = uint8_t(bytes[pos++]);
        break;
      case OpCode::kInput:
      case OpCode::kConcat:
      case OpCode::kPrgExpand:
      case OpCode::kOutput:
        break;
      default:
        throw FormatError("bytecode: unknown opcode " +
                          std::to_string(int(uint8_t(op))));
    }
    program.instructions.push_back(std::move(instr));
  }
  return program;
}

bool Program::is_deterministic() const {
  for (const auto& instr : instructions) {
    if (instr.op == OpCode::kRand) return false;
    if (instr.op == OpCode::kOutput) break;  // dead code can't draw
  }
  return true;
}

size_t program_length_bits(const Program& program) {
  return 8 * program.serialized_size();
}

namespace {

class Executor {
 public:
  Executor(ByteView input, RngStream& stream, const ExecLimits& limits)
      : input_(input), stream_(stream), limits_(limits) {}

  Bytes run(const Program& program) {
    for (const auto& instr : instructions_of(program)) {
      charge(1);
      switch (instr.op) {
        case OpCode::kLit:
          push(Bytes(instr.literal));
          break;
        case OpCode::kInput:
          push(Bytes(input_));
          break;
        case OpCode::kSlice: {
          Bytes s = pop();
          if (instr.a > instr.b || instr.b > s.size()) {
            fail("SLICE out of range");
          }
          push(s.substr(instr.a, instr.b - instr.a));
          break;
        }
        case OpCode::kConcat: {
          Bytes b = pop();
          Bytes a = pop();
          charge_bytes(a.size() + b.size());
          a.append(b);
          push(std::move(a));
          break;
        }
        case OpCode::kRepeat: {
          Bytes s = pop();
          uint64_t total = uint64_t(s.size()) * instr.a;
          charge_bytes(total);
          Bytes out;
          out.reserve(total);
          for (uint32_t i = 0; i < instr.a; ++i) out.append(s);
          push(std::move(out));
          break;
        }
        case OpCode::kRand: {
          size_t nbytes = (size_t(instr.a) + 7) / 8;
          charge_bytes(nbytes);
          Bytes r = stream_.next_bytes(nbytes);
          if (instr.a % 8 != 0 && !r.empty()) {
            r.back() &= char(0xff << (8 - instr.a % 8));
          }
          push(std::move(r));
          break;
        }
        case OpCode::kPrgExpand: {
          Bytes s = pop();
          int d = int(8 * s.size());
          if (d < 4 || d > 64) fail("PRG_EXPAND seed must hold 4..64 bits");
          charge_bytes(uint64_t(d) * d * d * d / 8);
          push(prg_expand(s, d));
          break;
        }
        case OpCode::kDecompress: {
          Bytes s = pop();
          uint64_t budget_bytes = remaining_steps() * 64;
          Bytes plain;
          try {
            plain = codec_decompress(Codec(instr.codec), s, budget_bytes);
          } catch (const CodecError& e) {
            fail(std::string("DECOMPRESS: ") + e.what());
          }
          charge_bytes(plain.size());
          push(std::move(plain));
          break;
        }
        case OpCode::kOutput:
          return pop();
      }
    }
    fail("program ended without OUTPUT");
    return {};  // unreachable
  }

 private:
  static const std::vector<Instruction>& instructions_of(const Program& p) {
    return p.instructions;
  }

  void push(Bytes b) { stack_.push_back(std::move(b)); }

  Bytes pop() {
    if (stack_.empty()) fail("stack underflow");
    Bytes b = std::move(stack_.back());
    stack_.pop_back();
    return b;
  }

  void charge(uint64_t steps) {
    steps_ += steps;
    if (steps_ > limits_.step_limit) {
      throw ExecutionError(ExecErrorKind::kTimeout, "step limit exceeded");
    }
  }

  void charge_bytes(uint64_t bytes) { charge(bytes / 64); }

  uint64_t remaining_steps() const {
    return steps_ >= limits_.step_limit ? 0 : limits_.step_limit - steps_;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw ExecutionError(ExecErrorKind::kProgramError, what);
  }

  ByteView input_;
  RngStream& stream_;
  const ExecLimits& limits_;
  std::vector<Bytes> stack_;
  uint64_t steps_ = 0;
};

}  // namespace

Bytes execute(const Program& program, ByteView input, RngStream& stream,
              const ExecLimits& limits) {
  Executor exec(input, stream, limits);
  return exec.run(program);
}

}  // namespace narcissus::dsl
