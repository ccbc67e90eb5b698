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

#include "narcissus/mechanisms.hpp"

#include <cmath>
#include <unordered_map>

#include "narcissus/prg.hpp"

namespace narcissus {

double gamma_param(double epsilon, double delta) {
  if (epsilon < 0.0 || delta < 0.0 || delta >= 1.0) {
    throw std::invalid_argument("gamma_param: bad epsilon/delta");
  }
  const double denom = (1.0 - delta) * std::exp(epsilon) - 1.0;
  if (denom <= 0.0) {
    throw std::invalid_argument("gamma_param: requires (1-delta) e^eps > 1");
  }
  return (6.0 * std::exp(epsilon) * (1.0 - delta) - 2.0) / denom;
}

double tau_param(double epsilon, double delta, uint64_t n) {
  if (delta <= 0.0) {
    throw std::invalid_argument("tau_param: delta must be > 0");
  }
  if (n == 0) throw std::invalid_argument("tau_param: n must be >= 1");
  const double gamma = gamma_param(epsilon, delta);
  return (gamma * gamma + 2.0 * gamma) * std::log(4.0 / delta) /
         static_cast<double>(n);
}

CountingParams CountingParams::create(double epsilon, double delta, uint64_t n,
                                      RecordQuery query) {
  CountingParams params;
  params.epsilon = epsilon;
  params.delta = delta;
  params.n = n;
  params.gamma = gamma_param(epsilon, delta);
  params.tau = tau_param(epsilon, delta, n);
  params.query = std::move(query);
  if (params.gamma < 6.0) {
    throw std::invalid_argument("CountingParams: gamma < 6");
  }
  double min_n = 4.0 * (params.gamma * params.gamma + 2.0 * params.gamma) *
                 std::log(1.0 / delta);
  if (static_cast<double>(n) < min_n) {
    throw std::invalid_argument("CountingParams: n below validity gate");
  }
  if (params.tau > 0.25) {
    throw std::invalid_argument("CountingParams: tau > 1/4");
  }
  return params;
}

Mechanism counting_mechanism_with_tau(double tau, uint64_t n,
                                      RecordQuery query) {
  if (n == 0) throw std::invalid_argument("counting mechanism: n must be >= 1");
  return Mechanism{
      "counting(tau=" + std::to_string(tau) + ")",
      [tau, n, query = std::move(query)](const Dataset& s, RngStream&) {
        if (s.size() != n) {
          throw std::invalid_argument("counting mechanism: dataset size != n");
        }
        uint64_t count = 0;
        for (size_t i = 0; i < s.size(); ++i) count += query(s.record(i)) ? 1 : 0;
        double p_hat = double(count) / double(n);
        if (p_hat < tau || p_hat > 1.0 - tau) return Output::bottom();
        return Output::real(p_hat);
      }};
}

Mechanism counting_mechanism(const CountingParams& params) {
  Mechanism m = counting_mechanism_with_tau(params.tau, params.n, params.query);
  m.name = "counting(eps=" + std::to_string(params.epsilon) +
           ",delta=" + std::to_string(params.delta) + ")";
  return m;
}

Mechanism counting_mechanism_untruncated(RecordQuery query) {
  return Mechanism{"counting-untruncated",
                   [query = std::move(query)](const Dataset& s, RngStream&) {
                     if (s.empty()) {
                       throw std::invalid_argument(
                           "counting mechanism: empty dataset");
                     }
                     uint64_t count = 0;
                     for (size_t i = 0; i < s.size(); ++i) {
                       count += query(s.record(i)) ? 1 : 0;
                     }
                     return Output::real(double(count) / double(s.size()));
                   }};
}

Mechanism randomized_response(double epsilon) {
  if (epsilon < 0.0) {
    throw std::invalid_argument("randomized_response: epsilon must be >= 0");
  }
  const double flip = 1.0 / (1.0 + std::exp(epsilon));
  return Mechanism{
      "randomized-response(eps=" + std::to_string(epsilon) + ")",
      [flip](const Dataset& s, RngStream& stream) {
        Bytes out(s.size(), '\0');
        for (size_t i = 0; i < s.size(); ++i) {
          ByteView r = s.record(i);
          if (r.size() != 1 || byte_at(r, 0) > 1) {
            throw std::invalid_argument(
                "randomized_response: records must be single bits");
          }
          int bit = byte_at(r, 0);
          if (stream.bernoulli(flip)) bit ^= 1;
          out[i] = char(bit);
        }
        return Output::bytes(std::move(out));
      }};
}

namespace {

void check_xor_shape(const Dataset& s, size_t lambda_bits) {
  size_t want = (lambda_bits + 7) / 8;
  if (s.size() != 2 || s.record(0).size() != want ||
      s.record(1).size() != want) {
    throw std::invalid_argument("xor mechanism: dataset must be two " +
                                std::to_string(lambda_bits) + "-bit records");
  }
}

}  // namespace

std::pair<Mechanism, Mechanism> xor_pair_mechanisms(size_t lambda_bits) {
  if (lambda_bits == 0) {
    throw std::invalid_argument("xor_pair_mechanisms: lambda must be >= 1");
  }
  Mechanism left{"xor-left(lambda=" + std::to_string(lambda_bits) + ")",
                 [lambda_bits](const Dataset& s, RngStream&) {
                   check_xor_shape(s, lambda_bits);
                   return Output::bytes(Bytes(s.record(1)));
                 }};
  Mechanism sum{"xor-sum(lambda=" + std::to_string(lambda_bits) + ")",
                [lambda_bits](const Dataset& s, RngStream&) {
                  check_xor_shape(s, lambda_bits);
                  return Output::bytes(xor_bytes(s.record(0), s.record(1)));
                }};
  return {std::move(left), std::move(sum)};
}

Mechanism owf_mechanism(std::string name, std::function<Bytes(ByteView)> f) {
  return Mechanism{"owf(" + std::move(name) + ")",
                   [f = std::move(f)](const Dataset& s, RngStream&) {
                     if (s.size() != 1) {
                       throw std::invalid_argument(
                           "owf mechanism: dataset must be a single record");
                     }
                     return Output::bytes(f(s.record(0)));
                   }};
}

std::function<Bytes(ByteView)> keystream_owf() {
  return [](ByteView x) -> Bytes {
    if (x.empty() || x.size() > 8) {
      throw std::invalid_argument("keystream_owf: input must be 1..8 bytes");
    }
    // Same-length image of a keystream expansion; 4 <= 8|x| <= 64 always
    // holds here.
    Bytes expanded = prg_expand(x, int(8 * x.size()));
    return expanded.substr(0, x.size());
  };
}

bool is_well_spread_empirical(const std::function<Bytes(ByteView)>& f,
                              size_t lambda_bits, uint64_t samples, double nu,
                              uint64_t seed) {
  if (samples == 0) {
    throw std::invalid_argument("is_well_spread_empirical: samples >= 1");
  }
  size_t nbytes = (lambda_bits + 7) / 8;
  RngStream stream = RngStream::from_root(seed).child("well-spread");
  std::unordered_map<Bytes, uint64_t> histogram;
  uint64_t max_count = 0;
  for (uint64_t i = 0; i < samples; ++i) {
    Bytes x = stream.next_bytes(nbytes);
    if (lambda_bits % 8 != 0) {
      x.back() &= char(0xff << (8 - lambda_bits % 8));
    }
    uint64_t& count = histogram[f(x)];
    ++count;
    max_count = std::max(max_count, count);
  }
  return double(max_count) / double(samples) <= nu;
}

Mechanism otp_mechanism(size_t lambda_bits) {
  if (lambda_bits == 0 || lambda_bits % 8 != 0) {
    throw std::invalid_argument(
        "otp_mechanism: lambda must be a positive multiple of 8");
  }
  size_t msg_bytes = lambda_bits / 8;
  return Mechanism{
      "one-time-pad(lambda=" + std::to_string(lambda_bits) + ")",
      [msg_bytes](const Dataset& s, RngStream& stream) {
        if (s.size() != 1 || s.record(0).size() != msg_bytes + 1 ||
            byte_at(s.record(0), 0) > 1) {
          throw std::invalid_argument(
              "otp_mechanism: dataset must be one tagged message record");
        }
        ByteView m = s.record(0).substr(1);
        Bytes key = stream.next_bytes(msg_bytes);
        return Output::bytes(xor_bytes(m, key));
      }};
}

Mechanism identity_mechanism() {
  return Mechanism{"identity", [](const Dataset& s, RngStream&) {
                     return Output::bytes(s.serialize());
                   }};
}

Mechanism constant_mechanism(Output y) {
  return Mechanism{"constant", [y = std::move(y)](const Dataset&, RngStream&) {
                     return y;
                   }};
}

Mechanism leaky_record_mechanism(Bytes canonical) {
  return Mechanism{"leaky-record",
                   [canonical = std::move(canonical)](const Dataset& s,
                                                      RngStream&) {
                     if (s.empty()) {
                       throw std::invalid_argument(
                           "leaky_record_mechanism: empty dataset");
                     }
                     for (size_t i = 0; i < s.size(); ++i) {
                       if (s.record(i) != ByteView(canonical)) {
                         return Output::bytes(Bytes(s.record(i)));
                       }
                     }
                     return Output::bytes(Bytes(s.record(0)));
                   }};
}

}  // namespace narcissus
