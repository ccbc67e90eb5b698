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
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "narcissus/bytes.hpp"
#include "narcissus/dsl.hpp"
#include "narcissus/rng.hpp"

namespace narcissus {

// A record is an immutable byte string; equality is byte-exact.
using Record = Bytes;

// An ordered sequence of records. Order is significant: relations index
// records by position. Storage is a single byte pool with either a fixed
// record width or per-record bounds, which keeps million-trial games off the
// allocator.
class Dataset {
 public:
  Dataset() = default;

  // All records have width `width` bytes; the pool length must be a multiple.
  static Dataset fixed_width(size_t width, Bytes pool);
  static Dataset from_records(const std::vector<Record>& records);

  void append(ByteView record);

  size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  ByteView record(size_t i) const {
    if (i >= count_) throw std::out_of_range("Dataset::record: bad index");
    if (width_ != kVariableWidth) {
      return ByteView(pool_).substr(i * width_, width_);
    }
    size_t begin = (i == 0) ? 0 : ends_[i - 1];
    return ByteView(pool_).substr(begin, ends_[i] - begin);
  }

  // Concatenated record bytes, length-prefixed, suitable as a canonical
  // serialization (identity mechanisms, equality in relations).
  Bytes serialize() const;

  bool operator==(const Dataset& other) const;

 private:
  static constexpr size_t kVariableWidth = static_cast<size_t>(-1);

  Bytes pool_;
  std::vector<size_t> ends_;
  size_t width_ = kVariableWidth;
  size_t count_ = 0;
};

// ---------------------------------------------------------------------------
// Mechanism outputs: real number, byte string, abort symbol, or tuple.

struct Output;
using OutputTuple = std::vector<Output>;

struct Output {
  struct Bottom {
    bool operator==(const Bottom&) const { return true; }
  };
  using Value = std::variant<Bottom, double, Bytes, OutputTuple>;

  Value value;

  static Output bottom() { return Output{Bottom{}}; }
  static Output real(double v) { return Output{v}; }
  static Output bytes(Bytes b) { return Output{std::move(b)}; }
  static Output tuple(OutputTuple t) { return Output{std::move(t)}; }

  bool is_bottom() const { return std::holds_alternative<Bottom>(value); }
  bool is_real() const { return std::holds_alternative<double>(value); }
  bool is_bytes() const { return std::holds_alternative<Bytes>(value); }
  bool is_tuple() const { return std::holds_alternative<OutputTuple>(value); }

  double as_real() const;
  const Bytes& as_bytes() const;
  const OutputTuple& as_tuple() const;

  bool operator==(const Output& other) const;
};

// ---------------------------------------------------------------------------
// Candidate handles. Function and predicate candidates are closed-form
// parameterized handles rather than arbitrary code, so relations stay pure
// and candidates stay serializable.

// f: Record -> bit.
struct FunctionHandle {
  enum class Kind {
    kConstBit,        // f(z) = bit
    kEqualsRecord,    // f(z) = [z == record]
    kFirstBitIs,      // f(z) = [first bit of z == bit]
    kBitMatchesMean,  // f(z) = [first bit of z == (mean > threshold)]
  };

  Kind kind = Kind::kConstBit;
  int bit = 0;
  Bytes record;
  double mean = 0.0;
  double threshold = 0.5;

  int eval(ByteView z) const;
  bool operator==(const FunctionHandle&) const = default;
};

// p: Record -> {0,1}.
struct PredicateHandle {
  enum class Kind {
    kAll,           // p == 1
    kEqualsRecord,  // p(x) = [x == record]
    kFirstBitIs,    // p(x) = [first bit of x == bit]
    kHashBelow,     // p(x) = [H(salt, x) < weight * 2^64]; E_uniform[p] ~ weight
  };

  Kind kind = Kind::kAll;
  Bytes record;
  int bit = 0;
  double weight = 0.0;
  uint64_t salt = 0;

  bool eval(ByteView x) const;
  bool operator==(const PredicateHandle&) const = default;
};

struct Candidate;

// (index, bit-or-abstain). An absent bit is the intentional failure symbol;
// relations score it 0.
struct IndexGuess {
  size_t index = 0;
  std::optional<int> bit;
  bool operator==(const IndexGuess&) const = default;
};

// (index list, bit list), lists of equal length.
struct Pinpoint {
  std::vector<size_t> indices;
  std::vector<int> bits;
  bool operator==(const Pinpoint&) const = default;
};

struct ProgramHandle {
  dsl::Program program;
  bool operator==(const ProgramHandle&) const = default;
};

struct CandidateTuple {
  std::vector<Candidate> items;
  bool operator==(const CandidateTuple&) const;
};

// The closed tagged union of adversary outputs. Each relation declares which
// tags it accepts and rejects the rest with CandidateError.
struct Candidate {
  using Value = std::variant<Bytes, IndexGuess, Pinpoint, PredicateHandle,
                             FunctionHandle, ProgramHandle, CandidateTuple>;
  Value value;

  bool operator==(const Candidate& other) const { return value == other.value; }
};

std::string candidate_tag_name(const Candidate& c);

// Thrown when an adversary output has a tag the relation does not accept
// (or malformed contents under an accepted tag). Aborts the run.
class CandidateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Accessor that converts wrong-tag access into CandidateError with a
// diagnostic naming the relation.
template <typename T>
const T& expect_candidate(const Candidate& c, const char* relation_name) {
  if (const T* v = std::get_if<T>(&c.value)) return *v;
  throw CandidateError(std::string(relation_name) +
                       ": unsupported candidate tag " + candidate_tag_name(c));
}

// ---------------------------------------------------------------------------
// Game components. All are pure given their streams; the engine may evaluate
// trials in parallel.

struct Mechanism {
  std::string name;
  std::function<Output(const Dataset&, RngStream&)> apply;
};

struct Adversary {
  std::string name;
  std::function<Candidate(const Output&, RngStream&)> attack;
};

struct Relation {
  std::string name;
  bool is_randomized = false;
  std::function<bool(const Dataset&, const Candidate&, RngStream&)> eval;
};

struct DatasetDistribution {
  std::string name;
  size_t n = 0;  // expected dataset size
  std::function<Dataset(RngStream&)> sample;
};

struct PairedDatasetDistribution {
  std::string name;
  std::function<std::pair<Dataset, Dataset>(RngStream&)> sample;
};

// Query over records used by counting mechanisms and coordinate relations.
using RecordQuery = std::function<int(ByteView)>;

// Default query: the record's first bit.
RecordQuery first_bit_query();

}  // namespace narcissus
