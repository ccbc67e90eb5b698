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

#include <bit>
#include <cstring>
#include <stdexcept>

namespace narcissus {

namespace {

// ---------------------------------------------------------------------------
// SHA-256, FIPS 180-4.

constexpr uint32_t kSha256K[64] = {
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1,
    0x923f82a4, 0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3,
    0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786,
    0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
    0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147,
    0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13,
    0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
    0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
    0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a,
    0x5b9cca4f, 0x682e6ff3, 0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208,
    0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2};

inline uint32_t rotr(uint32_t x, int n) { return std::rotr(x, n); }

void sha256_compress(uint32_t state[8], const uint8_t block[64]) {
  uint32_t w[64];
  for (int i = 0; i < 16; ++i) {
    w[i] = (uint32_t(block[4 * i]) << 24) | (uint32_t(block[4 * i + 1]) << 16) |
           (uint32_t(block[4 * i + 2]) << 8) | uint32_t(block[4 * i + 3]);
  }
  for (int i = 16; i < 64; ++i) {
    uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
    uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
    w[i] = w[i - 16] + s0 + w[i - 7] + s1;
  }
  uint32_t a = state[0], b = state[1], c = state[2], d = state[3];
  uint32_t e = state[4], f = state[5], g = state[6], h = state[7];
  for (int i = 0; i < 64; ++i) {
    uint32_t s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
    uint32_t ch = (e & f) ^ (~e & g);
    uint32_t t1 = h + s1 + ch + kSha256K[i] + w[i];
    uint32_t s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
    uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
    uint32_t t2 = s0 + maj;
    h = g;
    g = f;
    f = e;
    e = d + t1;
    d = c;
    c = b;
    b = a;
    a = t1 + t2;
  }
  state[0] += a;
  state[1] += b;
  state[2] += c;
  state[3] += d;
  state[4] += e;
  state[5] += f;
  state[6] += g;
  state[7] += h;
}

// ---------------------------------------------------------------------------
// ChaCha (RFC 8439 layout).

inline uint32_t load_le32(const uint8_t* p) {
  return uint32_t(p[0]) | (uint32_t(p[1]) << 8) | (uint32_t(p[2]) << 16) |
         (uint32_t(p[3]) << 24);
}

inline void store_le32(uint8_t* p, uint32_t v) {
  p[0] = uint8_t(v);
  p[1] = uint8_t(v >> 8);
  p[2] = uint8_t(v >> 16);
  p[3] = uint8_t(v >> 24);
}

inline void quarter_round(uint32_t& a, uint32_t& b, uint32_t& c, uint32_t& d) {
  a += b;
  d = std::rotl(d ^ a, 16);
  c += d;
  b = std::rotl(b ^ c, 12);
  a += b;
  d = std::rotl(d ^ a, 8);
  c += d;
  b = std::rotl(b ^ c, 7);
}

void append_le64(Bytes& out, uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(char(uint8_t(v >> (8 * i))));
}

}  // namespace

std::array<uint8_t, 32> sha256(ByteView data) {
  uint32_t state[8] = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                       0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
  const auto* p = reinterpret_cast<const uint8_t*>(data.data());
  size_t n = data.size();
  size_t full = n / 64;
  for (size_t i = 0; i < full; ++i) sha256_compress(state, p + 64 * i);

  uint8_t tail[128] = {0};
  size_t rem = n - 64 * full;
  std::memcpy(tail, p + 64 * full, rem);
  tail[rem] = 0x80;
  size_t tail_len = (rem < 56) ? 64 : 128;
  uint64_t bits = uint64_t(n) * 8;
  for (int i = 0; i < 8; ++i) {
    tail[tail_len - 1 - i] = uint8_t(bits >> (8 * i));
  }
  sha256_compress(state, tail);
  if (tail_len == 128) sha256_compress(state, tail + 64);

  std::array<uint8_t, 32> digest;
  for (int i = 0; i < 8; ++i) {
    digest[4 * i] = uint8_t(state[i] >> 24);
    digest[4 * i + 1] = uint8_t(state[i] >> 16);
    digest[4 * i + 2] = uint8_t(state[i] >> 8);
    digest[4 * i + 3] = uint8_t(state[i]);
  }
  return digest;
}

void chacha_block(const std::array<uint8_t, 32>& key, uint32_t counter,
                  const std::array<uint8_t, 12>& nonce, int rounds,
                  uint8_t out[64]) {
  uint32_t x[16];
  uint32_t init[16];
  init[0] = 0x61707865;
  init[1] = 0x3320646e;
  init[2] = 0x79622d32;
  init[3] = 0x6b206574;
  for (int i = 0; i < 8; ++i) init[4 + i] = load_le32(key.data() + 4 * i);
  init[12] = counter;
  for (int i = 0; i < 3; ++i) init[13 + i] = load_le32(nonce.data() + 4 * i);
  std::memcpy(x, init, sizeof(x));

  for (int r = 0; r < rounds; r += 2) {
    quarter_round(x[0], x[4], x[8], x[12]);
    quarter_round(x[1], x[5], x[9], x[13]);
    quarter_round(x[2], x[6], x[10], x[14]);
    quarter_round(x[3], x[7], x[11], x[15]);
    quarter_round(x[0], x[5], x[10], x[15]);
    quarter_round(x[1], x[6], x[11], x[12]);
    quarter_round(x[2], x[7], x[8], x[13]);
    quarter_round(x[3], x[4], x[9], x[14]);
  }
  for (int i = 0; i < 16; ++i) store_le32(out + 4 * i, x[i] + init[i]);
}

RngStream RngStream::from_root(uint64_t seed) {
  Bytes material = "narcissus.root.v1";
  append_le64(material, seed);
  return RngStream(sha256(material));
}

RngStream RngStream::child(std::string_view label) const {
  Bytes material(reinterpret_cast<const char*>(key_.data()), key_.size());
  material.push_back('\x01');
  material.append(label);
  return RngStream(sha256(material));
}

RngStream RngStream::child(uint64_t index) const {
  Bytes material(reinterpret_cast<const char*>(key_.data()), key_.size());
  material.push_back('\x02');
  append_le64(material, index);
  return RngStream(sha256(material));
}

void RngStream::refill() {
  static constexpr std::array<uint8_t, 12> kNonce = {0};
  chacha_block(key_, counter_, kNonce, /*rounds=*/8, buf_);
  ++counter_;
  pos_ = 0;
}

uint32_t RngStream::next_u32() {
  if (pos_ + 4 > 64) refill();
  uint32_t v = load_le32(buf_ + pos_);
  pos_ += 4;
  return v;
}

uint64_t RngStream::next_u64() {
  uint64_t lo = next_u32();
  uint64_t hi = next_u32();
  return lo | (hi << 32);
}

double RngStream::next_double() {
  return double(next_u64() >> 11) * 0x1.0p-53;
}

size_t RngStream::next_index(size_t n) {
  if (n == 0) throw std::invalid_argument("next_index: n must be positive");
  if (n == 1) return 0;
  uint64_t mask = ~uint64_t{0} >> std::countl_zero(uint64_t(n - 1));
  for (;;) {
    uint64_t v = next_u64() & mask;
    if (v < n) return size_t(v);
  }
}

Bytes RngStream::next_bytes(size_t n) {
  Bytes out(n, '\0');
  fill(reinterpret_cast<uint8_t*>(out.data()), n);
  return out;
}

void RngStream::fill(uint8_t* out, size_t n) {
  size_t done = 0;
  while (done < n) {
    if (pos_ >= 64) refill();
    size_t take = std::min(n - done, size_t{64} - pos_);
    std::memcpy(out + done, buf_ + pos_, take);
    pos_ += take;
    done += take;
  }
}

RngStream derive_stream(uint64_t root_seed,
                        const std::vector<StreamLabel>& labels) {
  RngStream s = RngStream::from_root(root_seed);
  for (const auto& label : labels) {
    if (const auto* name = std::get_if<std::string>(&label)) {
      s = s.child(std::string_view(*name));
    } else {
      s = s.child(std::get<uint64_t>(label));
    }
  }
  return s;
}

}  // namespace narcissus
