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

#include <gtest/gtest.h>

#include "narcissus/codecs.hpp"
#include "narcissus/prg.hpp"

namespace narcissus::dsl {
namespace {

RngStream test_stream(const std::string& label) {
  return RngStream::from_root(99).child(label);
}

TEST(DslExecuteTest, IdentityProgram) {
  Program p{{input(), output()}};
  RngStream s = test_stream("identity");
  EXPECT_EQ(execute(p, "payload", s), "payload");
}

TEST(DslExecuteTest, RepeatedLiteral) {
  Program p{{lit("34"), repeat(1000), output()}};
  RngStream s = test_stream("repeat");
  Bytes got = execute(p, "", s);
  ASSERT_EQ(got.size(), 2000u);
  for (size_t i = 0; i < got.size(); i += 2) {
    EXPECT_EQ(got[i], '3');
    EXPECT_EQ(got[i + 1], '4');
  }
  // The witness is dramatically shorter than the output it prints.
  EXPECT_LT(program_length_bits(p), 8 * got.size());
}

TEST(DslExecuteTest, SlicePrefixAndLiteralSuffix) {
  Program p{{input(), slice(0, 8), lit("!suffix"), concat(), output()}};
  RngStream s = test_stream("slice");
  EXPECT_EQ(execute(p, "0123456789abcdef", s), "01234567!suffix");
}

TEST(DslExecuteTest, RandConsumesStreamDeterministically) {
  Program p{{rand_bits(128), output()}};
  RngStream s1 = test_stream("rand");
  RngStream s2 = test_stream("rand");
  Bytes a = execute(p, "", s1);
  Bytes b = execute(p, "", s2);
  EXPECT_EQ(a.size(), 16u);
  EXPECT_EQ(a, b);
  RngStream s3 = test_stream("rand-other");
  EXPECT_NE(execute(p, "", s3), a);

  // Non-byte-aligned widths mask the trailing bits.
  Program q{{rand_bits(13), output()}};
  RngStream s4 = test_stream("rand13");
  Bytes r = execute(q, "", s4);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(uint8_t(r[1]) & 0x07, 0);
}

TEST(DslExecuteTest, PrgExpandMatchesDirectCall) {
  RngStream seed_stream = test_stream("prg-seed");
  Bytes seed = seed_stream.next_bytes(2);  // d = 16
  Program p{{lit(seed), prg_expand_op(), output()}};
  RngStream s = test_stream("prg");
  EXPECT_EQ(execute(p, "", s), prg_expand(seed, 16));
}

TEST(DslExecuteTest, DecompressRoundTrips) {
  Bytes plain(500, 'x');
  plain += "tail-of-data";
  for (Codec codec : kAllCodecs) {
    Program p{{lit(codec_compress(codec, plain)),
               decompress(uint8_t(codec)), output()}};
    RngStream s = test_stream("codec");
    EXPECT_EQ(execute(p, "", s), plain) << codec_name(codec);
  }
}

TEST(DslExecuteTest, ProgramErrors) {
  RngStream s = test_stream("errors");
  // Stack underflow.
  EXPECT_THROW(execute(Program{{concat(), output()}}, "", s), ExecutionError);
  // Missing OUTPUT.
  EXPECT_THROW(execute(Program{{input()}}, "", s), ExecutionError);
  // Slice out of range.
  EXPECT_THROW(execute(Program{{input(), slice(2, 1), output()}}, "ab", s),
               ExecutionError);
  // Malformed compressed stream.
  EXPECT_THROW(
      execute(Program{{lit("junk"), decompress(0), output()}}, "", s),
      ExecutionError);
}

TEST(DslExecuteTest, StepLimit) {
  // 2^20 copies of a 64-byte block materializes 64 MiB; the default budget
  // (10^6 cost units) stops it.
  Program p{{lit(Bytes(64, 'a')), repeat(1 << 20), output()}};
  RngStream s = test_stream("limit");
  try {
    execute(p, "", s);
    FAIL() << "expected timeout";
  } catch (const ExecutionError& e) {
    EXPECT_EQ(e.kind(), ExecErrorKind::kTimeout);
  }
}

TEST(DslExecuteTest, DeadCodeAfterOutputNeverRuns) {
  // The instructions after OUTPUT would underflow if executed.
  Program p{{lit("ok"), output(), concat(), concat()}};
  RngStream s = test_stream("dead");
  EXPECT_EQ(execute(p, "", s), "ok");
  EXPECT_GT(program_length_bits(p),
            program_length_bits(Program{{lit("ok"), output()}}));
}

TEST(DslSerializationTest, RoundTripAndLengths) {
  Program p{{lit("xy"), input(), concat(), slice(1, 3), repeat(2),
             rand_bits(64), concat(), decompress(1), output()}};
  Bytes wire = p.serialize();
  EXPECT_EQ(wire.substr(0, 4), "NDSL");
  EXPECT_EQ(wire[4], char(kVersion));
  Program back = Program::parse(wire);
  EXPECT_EQ(back, p);
  EXPECT_EQ(back.serialize(), wire);
  EXPECT_EQ(program_length_bits(p), 8 * wire.size());

  // Header-only length for the empty program.
  EXPECT_EQ(program_length_bits(Program{}), 8 * kHeaderBytes);
  // LIT of b bytes costs 8b + 40 bits of opcode overhead.
  EXPECT_EQ(program_length_bits(Program{{lit(Bytes(10, 'q'))}}),
            8 * kHeaderBytes + 8 * 10 + 40);
}

TEST(DslSerializationTest, ParseRejectsGarbage) {
  EXPECT_THROW(Program::parse("not-bytecode"), FormatError);
  Bytes bad_version = Program{}.serialize();
  bad_version[4] = 9;
  EXPECT_THROW(Program::parse(bad_version), FormatError);
  Bytes truncated = Program{{lit("abcdef")}}.serialize();
  truncated.resize(truncated.size() - 2);
  EXPECT_THROW(Program::parse(truncated), FormatError);
}

TEST(DslSerializationTest, DeterministicAcrossPrograms) {
  Program p{{input(), slice(0, 4), output()}};
  EXPECT_EQ(p.serialize(), p.serialize());
  EXPECT_TRUE(p.is_deterministic());
  Program randomized{{rand_bits(8), output()}};
  EXPECT_FALSE(randomized.is_deterministic());
  // RAND after OUTPUT never draws, so the program stays deterministic.
  Program dead_rand{{input(), output(), rand_bits(8)}};
  EXPECT_TRUE(dead_rand.is_deterministic());
}

}  // namespace
}  // namespace narcissus::dsl
