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

#include <cstring>

namespace narcissus {

Dataset Dataset::fixed_width(size_t width, Bytes pool) {
  if (width == 0 || pool.size() % width != 0) {
    throw std::invalid_argument("Dataset::fixed_width: bad pool size");
  }
  Dataset d;
  d.width_ = width;
  d.count_ = pool.size() / width;
  d.pool_ = std::move(pool);
  return d;
}

Dataset Dataset::from_records(const std::vector<Record>& records) {
  Dataset d;
  for (const auto& r : records) d.append(r);
  return d;
}

void Dataset::append(ByteView record) {
  if (width_ != kVariableWidth) {
    if (record.size() != width_) {
      throw std::invalid_argument("Dataset::append: width mismatch");
    }
    pool_.append(record);
    ++count_;
    return;
  }
  pool_.append(record);
  ends_.push_back(pool_.size());
  ++count_;
}

Bytes Dataset::serialize() const {
  Bytes out;
  for (size_t i = 0; i < count_; ++i) {
    ByteView r = record(i);
    uint64_t len = r.size();
    for (int b = 0; b < 8; ++b) out.push_back(char(uint8_t(len >> (8 * b))));
    out.append(r);
  }
  return out;
}

bool Dataset::operator==(const Dataset& other) const {
  if (count_ != other.count_) return false;
  for (size_t i = 0; i < count_; ++i) {
    if (record(i) != other.record(i)) return false;
  }
  return true;
}

double Output::as_real() const {
  if (const double* v = std::get_if<double>(&value)) return *v;
  throw std::runtime_error("Output: not a real value");
}

const Bytes& Output::as_bytes() const {
  if (const Bytes* v = std::get_if<Bytes>(&value)) return *v;
  throw std::runtime_error("Output: not a byte string");
}

const OutputTuple& Output::as_tuple() const {
  if (const OutputTuple* v = std::get_if<OutputTuple>(&value)) return *v;
  throw std::runtime_error("Output: not a tuple");
}

bool Output::operator==(const Output& other) const {
  return value == other.value;
}

int FunctionHandle::eval(ByteView z) const {
  switch (kind) {
    case Kind::kConstBit:
      return bit;
    case Kind::kEqualsRecord:
      return z == ByteView(record) ? 1 : 0;
    case Kind::kFirstBitIs:
      return (!z.empty() && record_bit(z) == bit) ? 1 : 0;
    case Kind::kBitMatchesMean: {
      int majority = mean > threshold ? 1 : 0;
      return (!z.empty() && record_bit(z) == majority) ? 1 : 0;
    }
  }
  return 0;
}

bool PredicateHandle::eval(ByteView x) const {
  switch (kind) {
    case Kind::kAll:
      return true;
    case Kind::kEqualsRecord:
      return x == ByteView(record);
    case Kind::kFirstBitIs:
      return !x.empty() && record_bit(x) == bit;
    case Kind::kHashBelow: {
      Bytes material = "narcissus.predicate.v1";
      for (int i = 0; i < 8; ++i) {
        material.push_back(char(uint8_t(salt >> (8 * i))));
      }
      material.append(x);
      auto digest = sha256(material);
      uint64_t v = 0;
      for (int i = 0; i < 8; ++i) v |= uint64_t(digest[i]) << (8 * i);
      // Compare as a 53-bit fraction so thresholds behave like probabilities.
      double u = double(v >> 11) * 0x1.0p-53;
      return u < weight;
    }
  }
  return false;
}

bool CandidateTuple::operator==(const CandidateTuple& other) const {
  return items == other.items;
}

std::string candidate_tag_name(const Candidate& c) {
  struct Visitor {
    std::string operator()(const Bytes&) { return "bytes"; }
    std::string operator()(const IndexGuess&) { return "index-guess"; }
    std::string operator()(const Pinpoint&) { return "pinpoint"; }
    std::string operator()(const PredicateHandle&) { return "predicate"; }
    std::string operator()(const FunctionHandle&) { return "function"; }
    std::string operator()(const ProgramHandle&) { return "program"; }
    std::string operator()(const CandidateTuple&) { return "tuple"; }
  };
  return std::visit(Visitor{}, c.value);
}

RecordQuery first_bit_query() {
  return [](ByteView record) -> int {
    return record.empty() ? 0 : record_bit(record);
  };
}

}  // namespace narcissus
