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

#include "narcissus/rng.hpp"

#include <cmath>
#include <cstring>

#include <gtest/gtest.h>

#include "narcissus/bytes.hpp"

namespace narcissus {
namespace {

// FIPS 180-4 known answers.
TEST(Sha256Test, KnownVectors) {
  auto digest = sha256("abc");
  EXPECT_EQ(to_hex(Bytes(digest.begin(), digest.end())),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");

  auto empty = sha256("");
  EXPECT_EQ(to_hex(Bytes(empty.begin(), empty.end())),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");

  auto two_block = sha256(
      "abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq");
  EXPECT_EQ(to_hex(Bytes(two_block.begin(), two_block.end())),
            "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");

  // 61-byte message exercises the two-compression padding path.
  auto long_tail = sha256(Bytes(61, 'a'));
  EXPECT_EQ(to_hex(Bytes(long_tail.begin(), long_tail.end())),
            "35d5fc17cfbbadd00f5e710ada39f194c5ad7c766ad67072245f1fad45f0f530");
}

// RFC 8439 section 2.3.2 block-function vector (20 rounds).
TEST(ChaChaTest, Rfc8439BlockVector) {
  std::array<uint8_t, 32> key;
  for (int i = 0; i < 32; ++i) key[i] = uint8_t(i);
  std::array<uint8_t, 12> nonce = {0x00, 0x00, 0x00, 0x09, 0x00, 0x00,
                                   0x00, 0x4a, 0x00, 0x00, 0x00, 0x00};
  uint8_t block[64];
  chacha_block(key, 1, nonce, 20, block);
  EXPECT_EQ(
      to_hex(Bytes(reinterpret_cast<char*>(block), 64)),
      "10f1e7e4d13b5915500fdd1fa32071c4c7d1f4c733c068030422aa9ac3d46c4e"
      "d2826446079faa0914c2d705d98b02a2b5129cd1de164eb9cbd083e8a2503c4e");
}

TEST(RngStreamTest, SameRootAndLabelsReproduce) {
  RngStream a = derive_stream(42, {std::string("trial"), uint64_t{1}});
  RngStream b = derive_stream(42, {std::string("trial"), uint64_t{1}});
  Bytes bits_a = a.next_bytes(128);
  Bytes bits_b = b.next_bytes(128);
  EXPECT_EQ(bits_a, bits_b);
}

TEST(RngStreamTest, SiblingStreamsDiffer) {
  RngStream a = derive_stream(42, {std::string("trial"), uint64_t{1}});
  RngStream b = derive_stream(42, {std::string("trial"), uint64_t{2}});
  EXPECT_NE(a.next_bytes(128), b.next_bytes(128));

  // Distinct label types are distinct paths even with equal raw bytes.
  RngStream c = RngStream::from_root(7).child("1");
  RngStream d = RngStream::from_root(7).child(uint64_t{1});
  EXPECT_NE(c.next_bytes(32), d.next_bytes(32));
}

TEST(RngStreamTest, ChildDoesNotDisturbParent) {
  RngStream parent = RngStream::from_root(11);
  RngStream reference = RngStream::from_root(11);
  (void)parent.child("x");
  EXPECT_EQ(parent.next_bytes(64), reference.next_bytes(64));
}

TEST(RngStreamTest, MonobitFrequency) {
  RngStream s = RngStream::from_root(2024).child("monobit");
  const size_t kBits = 1'000'000;
  Bytes data = s.next_bytes(kBits / 8);
  size_t ones = popcount(data);
  // 4 sigma around n/2 with sigma = sqrt(n)/2.
  double sigma = std::sqrt(double(kBits)) / 2.0;
  EXPECT_NEAR(double(ones), kBits / 2.0, 4.0 * sigma);
}

TEST(RngStreamTest, SiblingCrossCorrelation) {
  RngStream a = RngStream::from_root(5).child("left");
  RngStream b = RngStream::from_root(5).child("right");
  const size_t kBits = 200'000;
  Bytes xa = a.next_bytes(kBits / 8);
  Bytes xb = b.next_bytes(kBits / 8);
  // Agreement frequency of independent fair bits is 1/2; test at 4 sigma,
  // i.e. p-value well above 0.01.
  size_t agree = kBits - hamming_distance(xa, xb);
  double sigma = std::sqrt(double(kBits)) / 2.0;
  EXPECT_NEAR(double(agree), kBits / 2.0, 4.0 * sigma);
}

TEST(RngStreamTest, NextIndexBoundsAndUniformity) {
  RngStream s = RngStream::from_root(1).child("index");
  std::array<uint64_t, 5> counts{};
  const uint64_t kDraws = 100'000;
  for (uint64_t i = 0; i < kDraws; ++i) counts[s.next_index(5)]++;
  for (uint64_t c : counts) {
    EXPECT_NEAR(double(c), kDraws / 5.0, 4.0 * std::sqrt(kDraws * 0.2 * 0.8));
  }
  EXPECT_THROW(s.next_index(0), std::invalid_argument);
}

TEST(RngStreamTest, DoubleInUnitInterval) {
  RngStream s = RngStream::from_root(3).child("unit");
  for (int i = 0; i < 10'000; ++i) {
    double v = s.next_double();
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, 1.0);
  }
}

}  // namespace
}  // namespace narcissus
