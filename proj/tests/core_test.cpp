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

#include "narcissus/core.hpp"

#include <gtest/gtest.h>

namespace narcissus {
namespace {

TEST(DatasetTest, FixedWidthIndexing) {
  Dataset d = Dataset::fixed_width(2, Bytes("aabbcc"));
  ASSERT_EQ(d.size(), 3u);
  EXPECT_EQ(d.record(0), "aa");
  EXPECT_EQ(d.record(2), "cc");
  EXPECT_THROW(d.record(3), std::out_of_range);
  EXPECT_THROW(Dataset::fixed_width(4, Bytes("abc")), std::invalid_argument);
  EXPECT_THROW(d.append("x"), std::invalid_argument);
}

TEST(DatasetTest, VariableWidthAndEquality) {
  Dataset a = Dataset::from_records({"one", "zz", ""});
  ASSERT_EQ(a.size(), 3u);
  EXPECT_EQ(a.record(0), "one");
  EXPECT_EQ(a.record(2), "");

  // Same logical records through the fixed-width representation.
  Dataset b = Dataset::fixed_width(2, Bytes("zzzz"));
  Dataset c = Dataset::from_records({"zz", "zz"});
  EXPECT_TRUE(b == c);
  EXPECT_FALSE(a == b);

  // Order is significant.
  Dataset d1 = Dataset::from_records({"x", "y"});
  Dataset d2 = Dataset::from_records({"y", "x"});
  EXPECT_FALSE(d1 == d2);
}

TEST(DatasetTest, SerializeIsInjectiveOnBoundaries) {
  // Length-prefixed serialization distinguishes record splits.
  Dataset a = Dataset::from_records({"ab", "c"});
  Dataset b = Dataset::from_records({"a", "bc"});
  EXPECT_NE(a.serialize(), b.serialize());
  EXPECT_EQ(a.serialize(), Dataset::from_records({"ab", "c"}).serialize());
}

TEST(OutputTest, AccessorsAndEquality) {
  EXPECT_TRUE(Output::bottom().is_bottom());
  EXPECT_EQ(Output::real(0.5).as_real(), 0.5);
  EXPECT_EQ(Output::bytes("xyz").as_bytes(), "xyz");
  EXPECT_THROW(Output::bottom().as_real(), std::runtime_error);
  EXPECT_THROW(Output::real(1.0).as_bytes(), std::runtime_error);

  Output t = Output::tuple({Output::real(1.0), Output::bytes("a")});
  ASSERT_EQ(t.as_tuple().size(), 2u);
  EXPECT_EQ(t, Output::tuple({Output::real(1.0), Output::bytes("a")}));
  EXPECT_FALSE(t == Output::tuple({Output::bytes("a"), Output::real(1.0)}));
  EXPECT_EQ(Output::bottom(), Output::bottom());
}

TEST(CandidateTest, TagNamesAndExpect) {
  Candidate bytes{Bytes("b")};
  Candidate guess{IndexGuess{3, 1}};
  EXPECT_EQ(candidate_tag_name(bytes), "bytes");
  EXPECT_EQ(candidate_tag_name(guess), "index-guess");
  EXPECT_EQ(expect_candidate<Bytes>(bytes, "t"), "b");
  EXPECT_THROW(expect_candidate<Bytes>(guess, "t"), CandidateError);
  try {
    expect_candidate<Pinpoint>(bytes, "some-relation");
    FAIL();
  } catch (const CandidateError& e) {
    EXPECT_NE(std::string(e.what()).find("some-relation"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("bytes"), std::string::npos);
  }
}

TEST(CandidateTest, TupleEquality) {
  CandidateTuple t1{{Candidate{Bytes("a")}, Candidate{IndexGuess{0, 1}}}};
  CandidateTuple t2{{Candidate{Bytes("a")}, Candidate{IndexGuess{0, 1}}}};
  CandidateTuple t3{{Candidate{Bytes("a")}, Candidate{IndexGuess{0, 0}}}};
  EXPECT_TRUE(Candidate{t1} == Candidate{t2});
  EXPECT_FALSE(Candidate{t1} == Candidate{t3});
}

TEST(FunctionHandleTest, Kinds) {
  FunctionHandle const_one{FunctionHandle::Kind::kConstBit, 1, {}, 0, 0};
  EXPECT_EQ(const_one.eval("anything"), 1);

  FunctionHandle equals;
  equals.kind = FunctionHandle::Kind::kEqualsRecord;
  equals.record = "abc";
  EXPECT_EQ(equals.eval("abc"), 1);
  EXPECT_EQ(equals.eval("abd"), 0);

  FunctionHandle first_bit;
  first_bit.kind = FunctionHandle::Kind::kFirstBitIs;
  first_bit.bit = 1;
  EXPECT_EQ(first_bit.eval(Bytes(1, char(0x80))), 1);
  EXPECT_EQ(first_bit.eval(Bytes(1, char(0x00))), 0);

  FunctionHandle matches_mean;
  matches_mean.kind = FunctionHandle::Kind::kBitMatchesMean;
  matches_mean.mean = 0.8;
  matches_mean.threshold = 0.5;
  EXPECT_EQ(matches_mean.eval(Bytes(1, char(0x80))), 1);
  matches_mean.mean = 0.2;
  EXPECT_EQ(matches_mean.eval(Bytes(1, char(0x80))), 0);
}

TEST(PredicateHandleTest, HashBelowFrequency) {
  PredicateHandle p;
  p.kind = PredicateHandle::Kind::kHashBelow;
  p.weight = 0.25;
  p.salt = 99;

  RngStream stream = RngStream::from_root(4).child("pred");
  int hits = 0;
  const int kSamples = 20'000;
  for (int i = 0; i < kSamples; ++i) {
    if (p.eval(stream.next_bytes(8))) ++hits;
  }
  EXPECT_NEAR(double(hits) / kSamples, 0.25, 0.02);

  // Deterministic for a fixed record and salt.
  EXPECT_EQ(p.eval("record"), p.eval("record"));
  PredicateHandle other = p;
  other.salt = 100;
  int disagreements = 0;
  RngStream stream2 = RngStream::from_root(5).child("pred");
  for (int i = 0; i < 1000; ++i) {
    Bytes r = stream2.next_bytes(8);
    if (p.eval(r) != other.eval(r)) ++disagreements;
  }
  EXPECT_GT(disagreements, 0);
}

TEST(RecordQueryTest, FirstBit) {
  RecordQuery q = first_bit_query();
  EXPECT_EQ(q(Bytes(1, char(0x80))), 1);
  EXPECT_EQ(q(Bytes(1, char(0x01))), 0);  // MSB-first bit order
  EXPECT_EQ(q(Bytes{}), 0);
}

}  // namespace
}  // namespace narcissus
