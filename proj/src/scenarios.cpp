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

#include "narcissus/scenarios.hpp"

#include <cmath>
#include <map>

#include "narcissus/report.hpp"

namespace narcissus {

namespace {

using Json = nlohmann::json;

void check_keys(const Json& j, const std::vector<std::string>& allowed,
                const std::string& where) {
  if (!j.is_object()) {
    throw std::invalid_argument(where + ": expected an object");
  }
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw std::invalid_argument(where + ": unknown key '" + key + "'");
    }
  }
}

std::function<Bytes(ByteView)> owf_by_name(const std::string& name) {
  if (name == "keystream") return keystream_owf();
  if (name == "identity") {
    return [](ByteView x) { return Bytes(x); };
  }
  if (name == "constant") {
    return [](ByteView x) { return Bytes(x.size(), '\0'); };
  }
  throw std::invalid_argument("unknown function name: " + name);
}

DatasetDistribution distribution_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "iid-bernoulli-bits") {
    check_keys(j, {"kind", "n", "p"}, "distribution");
    return dist_iid_bernoulli_bits(j.at("n").get<size_t>(),
                                   j.at("p").get<double>());
  }
  if (kind == "canonical-mixture") {
    check_keys(j, {"kind", "n", "prob", "canonical_hex"}, "distribution");
    return dist_canonical_mixture(j.at("n").get<size_t>(),
                                  from_hex(j.at("canonical_hex").get<std::string>()),
                                  j.at("prob").get<double>());
  }
  if (kind == "uniform-records") {
    check_keys(j, {"kind", "n", "record_bytes"}, "distribution");
    return dist_uniform_records(j.at("n").get<size_t>(),
                                j.at("record_bytes").get<size_t>());
  }
  if (kind == "xor-pair-inputs") {
    check_keys(j, {"kind", "lambda"}, "distribution");
    return dist_xor_pair_inputs(j.at("lambda").get<size_t>());
  }
  if (kind == "single-uniform-record") {
    check_keys(j, {"kind", "lambda"}, "distribution");
    return dist_single_uniform_record(j.at("lambda").get<size_t>());
  }
  throw std::invalid_argument("unknown distribution kind: " + kind);
}

Dataset dataset_from_json(const Json& j) {
  Dataset d;
  for (const auto& record : j) {
    d.append(from_hex(record.get<std::string>()));
  }
  return d;
}

PairedDatasetDistribution paired_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "constant") {
    check_keys(j, {"kind", "s0", "s1"}, "paired_distribution");
    return paired_constant(dataset_from_json(j.at("s0")),
                           dataset_from_json(j.at("s1")));
  }
  if (kind == "iid") {
    check_keys(j, {"kind", "base"}, "paired_distribution");
    return paired_iid(distribution_from_json(j.at("base")));
  }
  throw std::invalid_argument("unknown paired distribution kind: " + kind);
}

Mechanism mechanism_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "counting") {
    check_keys(j, {"kind", "epsilon", "delta", "n"}, "mechanism");
    return counting_mechanism(CountingParams::create(
        j.at("epsilon").get<double>(), j.at("delta").get<double>(),
        j.at("n").get<uint64_t>()));
  }
  if (kind == "counting-with-tau") {
    check_keys(j, {"kind", "tau", "n"}, "mechanism");
    return counting_mechanism_with_tau(j.at("tau").get<double>(),
                                       j.at("n").get<uint64_t>());
  }
  if (kind == "counting-untruncated") {
    check_keys(j, {"kind"}, "mechanism");
    return counting_mechanism_untruncated();
  }
  if (kind == "randomized-response") {
    check_keys(j, {"kind", "epsilon"}, "mechanism");
    return randomized_response(j.at("epsilon").get<double>());
  }
  if (kind == "xor-pair") {
    check_keys(j, {"kind", "lambda", "part"}, "mechanism");
    auto [left, sum] = xor_pair_mechanisms(j.at("lambda").get<size_t>());
    const std::string part = j.at("part").get<std::string>();
    if (part == "left") return left;
    if (part == "sum") return sum;
    if (part == "composed") {
      return compose_mechanisms({std::move(left), std::move(sum)});
    }
    throw std::invalid_argument("xor-pair: unknown part '" + part + "'");
  }
  if (kind == "identity") {
    check_keys(j, {"kind"}, "mechanism");
    return identity_mechanism();
  }
  if (kind == "one-time-pad") {
    check_keys(j, {"kind", "lambda"}, "mechanism");
    return otp_mechanism(j.at("lambda").get<size_t>());
  }
  if (kind == "owf") {
    check_keys(j, {"kind", "f"}, "mechanism");
    const std::string f = j.at("f").get<std::string>();
    return owf_mechanism(f, owf_by_name(f));
  }
  if (kind == "leaky-record") {
    check_keys(j, {"kind", "canonical_hex"}, "mechanism");
    return leaky_record_mechanism(
        from_hex(j.at("canonical_hex").get<std::string>()));
  }
  if (kind == "constant-bytes") {
    check_keys(j, {"kind", "hex"}, "mechanism");
    return constant_mechanism(
        Output::bytes(from_hex(j.at("hex").get<std::string>())));
  }
  throw std::invalid_argument("unknown mechanism kind: " + kind);
}

Relation relation_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "coordinate-guess") {
    check_keys(j, {"kind"}, "relation");
    return rel_coordinate_guess();
  }
  if (kind == "pinpoint") {
    check_keys(j, {"kind", "k"}, "relation");
    return rel_pinpoint(j.at("k").get<size_t>());
  }
  if (kind == "membership-inference") {
    check_keys(j, {"kind"}, "relation");
    return rel_mi();
  }
  if (kind == "singling-out") {
    check_keys(j, {"kind"}, "relation");
    return rel_singling_out();
  }
  if (kind == "hamming-list") {
    check_keys(j, {"kind", "threshold", "mode", "width_bits", "max_list"},
               "relation");
    HammingMode mode = j.at("mode").get<std::string>() == "single"
                           ? HammingMode::kSingleTarget
                           : HammingMode::kAnyOfDataset;
    size_t max_list =
        j.contains("max_list") ? j.at("max_list").get<size_t>() : 1024;
    return rel_hamming_list(j.at("threshold").get<double>(), mode,
                            j.at("width_bits").get<size_t>(), max_list);
  }
  if (kind == "exact-membership") {
    check_keys(j, {"kind"}, "relation");
    return rel_exact_membership();
  }
  if (kind == "first-record-recovery") {
    check_keys(j, {"kind"}, "relation");
    return rel_first_record_recovery();
  }
  if (kind == "tag-bit-agreement") {
    check_keys(j, {"kind"}, "relation");
    return rel_tag_bit_agreement();
  }
  if (kind == "same-image") {
    check_keys(j, {"kind", "f"}, "relation");
    return rel_same_image(owf_by_name(j.at("f").get<std::string>()));
  }
  if (kind == "dataset-event") {
    check_keys(j, {"kind", "s0", "witness_hex"}, "relation");
    Dataset s0 = dataset_from_json(j.at("s0"));
    return rel_dataset_event(std::move(s0),
                             from_hex(j.at("witness_hex").get<std::string>()));
  }
  throw std::invalid_argument("unknown relation kind: " + kind);
}

Adversary adversary_from_json(const Json& j, size_t dataset_n) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "fixed") {
    check_keys(j, {"kind", "candidate"}, "adversary");
    return adv_fixed(candidate_from_json(j.at("candidate")));
  }
  if (kind == "random-guess") {
    check_keys(j, {"kind"}, "adversary");
    return adv_random_guess(dataset_n);
  }
  if (kind == "abstain") {
    check_keys(j, {"kind"}, "adversary");
    return adv_abstain(dataset_n);
  }
  if (kind == "counting-threshold") {
    check_keys(j, {"kind"}, "adversary");
    return adv_counting_threshold(dataset_n);
  }
  if (kind == "positive-mean") {
    check_keys(j, {"kind"}, "adversary");
    return adv_positive_mean(dataset_n);
  }
  if (kind == "xor-recover") {
    check_keys(j, {"kind"}, "adversary");
    return adv_xor_recover();
  }
  if (kind == "echo") {
    check_keys(j, {"kind"}, "adversary");
    return adv_echo();
  }
  if (kind == "echo-random-bit") {
    check_keys(j, {"kind"}, "adversary");
    return adv_echo_random_bit();
  }
  if (kind == "mi-threshold") {
    check_keys(j, {"kind", "t"}, "adversary");
    return adv_mi_threshold(j.at("t").get<double>());
  }
  if (kind == "brute-force-inverter") {
    check_keys(j, {"kind", "f", "guesses", "lambda"}, "adversary");
    return adv_brute_force_inverter(
        owf_by_name(j.at("f").get<std::string>()),
        j.at("guesses").get<uint64_t>(), j.at("lambda").get<size_t>());
  }
  throw std::invalid_argument("unknown adversary kind: " + kind);
}

GameKind game_from_json(const Json& j) {
  const std::string name = j.get<std::string>();
  if (name == "narcissus") return GameKind::kNarcissus;
  if (name == "paired") return GameKind::kPaired;
  if (name == "rero") return GameKind::kRero;
  if (name == "thresholded") return GameKind::kThresholded;
  throw std::invalid_argument("unknown game: " + name);
}

// ---------------------------------------------------------------------------
// The bundled catalog.

const Bytes& canonical_record() {
  static const Bytes record = from_hex("00112233445566778899aabbccddeeff");
  return record;
}

Scenario xor_scenario(const std::string& part) {
  Scenario s;
  s.game = GameKind::kNarcissus;
  s.dist = dist_xor_pair_inputs(16);
  auto [left, sum] = xor_pair_mechanisms(16);
  if (part == "composed") {
    s.name = "xor-composed";
    s.description =
        "Two individually-resilient releases (y and x^y over a uniform pair) "
        "whose composition hands the adversary x outright.";
    s.mechanism = compose_mechanisms({left, sum});
    s.adversaries = {adv_xor_recover()};
  } else if (part == "left") {
    s.name = "xor-left-only";
    s.description = "The y-release alone; echoing it recovers x only by luck.";
    s.mechanism = left;
    s.adversaries = {adv_echo()};
  } else {
    s.name = "xor-sum-only";
    s.description = "The x^y release alone; echoing it recovers x only by luck.";
    s.mechanism = sum;
    s.adversaries = {adv_echo()};
  }
  s.relation = rel_first_record_recovery();
  return s;
}

Scenario counting_audit_scenario(double p, const std::string& suffix) {
  Scenario s;
  s.name = "counting-audit-" + suffix;
  s.description =
      "Deterministic truncated counting release (eps=ln2, delta=0.1, n=4096) "
      "audited against the coordinate-guess relation at record probability " +
      std::to_string(p) + ".";
  s.game = GameKind::kNarcissus;
  s.dist = dist_iid_bernoulli_bits(4096, p);
  s.mechanism =
      counting_mechanism(CountingParams::create(std::log(2.0), 0.1, 4096));
  s.relation = rel_coordinate_guess();
  s.adversaries = {adv_counting_threshold(4096),
                   adv_fixed(Candidate{IndexGuess{0, 1}}), adv_abstain(4096),
                   adv_positive_mean(4096)};
  return s;
}

Scenario untruncated_rare_scenario() {
  Scenario s;
  s.name = "untruncated-rare";
  s.description =
      "Untruncated mean release over 20 records with ones probability 1/400; "
      "the positive-mean guesser beats its own baseline by a factor of n.";
  s.game = GameKind::kNarcissus;
  s.dist = dist_iid_bernoulli_bits(20, 1.0 / 400.0);
  s.mechanism = counting_mechanism_untruncated();
  s.relation = rel_coordinate_guess();
  s.adversaries = {adv_positive_mean(20)};
  return s;
}

Scenario truncated_rare_scenario() {
  Scenario s;
  s.name = "truncated-rare";
  s.description =
      "The same rare-ones scenario with truncation at tau=0.25: the release "
      "aborts and the guesser loses its edge.";
  s.game = GameKind::kNarcissus;
  s.dist = dist_iid_bernoulli_bits(20, 1.0 / 400.0);
  s.mechanism = counting_mechanism_with_tau(0.25, 20);
  s.relation = rel_coordinate_guess();
  s.adversaries = {adv_positive_mean(20)};
  return s;
}

Scenario canonical_mixture_scenario(GameKind game) {
  Scenario s;
  s.game = game;
  s.dist = dist_canonical_mixture(32, canonical_record(), 0.5);
  s.mechanism = leaky_record_mechanism(canonical_record());
  s.relation = rel_exact_membership();
  if (game == GameKind::kNarcissus) {
    s.name = "canonical-mixture-narcissus";
    s.description =
        "Mixture of a planted canonical record and fresh random records; the "
        "mechanism leaks one non-canonical record and the echo adversary "
        "returns it. The self-baseline exposes the leak.";
    s.adversaries = {adv_echo()};
  } else if (game == GameKind::kRero) {
    s.name = "canonical-mixture-rero";
    s.description =
        "Same leak, judged against the best fixed candidate: the canonical "
        "record drives the baseline to 1 and masks the leak.";
    s.adversaries = {adv_echo()};
    s.baseline_candidates = {Candidate{canonical_record()}};
  } else {
    s.name = "canonical-mixture-thresholded";
    s.description =
        "Conditional-baseline game: the canonical-echo adversary is "
        "suppressed because its guess is common in fresh datasets.";
    s.adversaries = {adv_fixed(Candidate{canonical_record()})};
    s.tau = 0.25;
    s.inner_trials = 200;
  }
  return s;
}

Dataset bit_dataset(std::initializer_list<int> bits) {
  Bytes pool;
  for (int b : bits) pool.push_back(char(b));
  return Dataset::fixed_width(1, std::move(pool));
}

Scenario rr_paired_scenario(double epsilon, const std::string& suffix) {
  Scenario s;
  s.name = "rr-paired-" + suffix;
  s.description =
      "Randomized response (eps=" + suffix +
      ") on a constant neighboring pair of 8 one-bit records, scored with "
      "the coordinate-guess relation.";
  s.game = GameKind::kPaired;
  s.pdist = paired_constant(bit_dataset({0, 0, 0, 0, 0, 0, 0, 0}),
                            bit_dataset({1, 0, 0, 0, 0, 0, 0, 0}));
  s.mechanism = randomized_response(epsilon);
  s.relation = rel_coordinate_guess();
  s.adversaries = {adv_echo_random_bit()};
  return s;
}

Scenario dp_violation_witness_scenario() {
  Scenario s;
  s.name = "dp-violation-witness";
  s.description =
      "Identity release over a constant dataset pair with the constructed "
      "event relation: the paired game flags the distinguishable release.";
  s.game = GameKind::kPaired;
  Dataset s0 = bit_dataset({0});
  Dataset s1 = bit_dataset({1});
  s.relation = rel_dataset_event(s0, s0.serialize());
  s.pdist = paired_constant(std::move(s0), std::move(s1));
  s.mechanism = identity_mechanism();
  s.adversaries = {adv_echo()};
  return s;
}

Scenario otp_paired_scenario() {
  Scenario s;
  s.name = "otp-paired";
  s.description =
      "One-time-pad release of one of two tagged messages; guessing the tag "
      "bit from the ciphertext succeeds at the coin-flip rate.";
  s.game = GameKind::kPaired;
  Bytes m0(16, '\x42');
  Bytes m1(16, '\x17');
  Dataset d0;
  d0.append(Bytes(1, '\x00') + m0);
  Dataset d1;
  d1.append(Bytes(1, '\x01') + m1);
  s.pdist = paired_constant(std::move(d0), std::move(d1));
  s.mechanism = otp_mechanism(128);
  s.relation = rel_tag_bit_agreement();
  s.adversaries = {adv_echo()};
  return s;
}

Scenario owf_keystream_scenario() {
  Scenario s;
  s.name = "owf-keystream";
  s.description =
      "Keystream-expansion image release over a 32-bit uniform input pair; a "
      "1024-guess inverter stays at the counting-argument rate.";
  s.game = GameKind::kPaired;
  s.pdist = paired_iid(dist_single_uniform_record(32));
  s.mechanism = owf_mechanism("keystream", keystream_owf());
  s.relation = rel_same_image(keystream_owf());
  s.adversaries = {adv_brute_force_inverter(keystream_owf(), 1024, 32)};
  return s;
}

Scenario owf_identity_break_scenario() {
  Scenario s;
  s.name = "owf-identity-break";
  s.description =
      "Identity is not one-way: echoing the released image inverts it, and "
      "the paired game reports the break.";
  s.game = GameKind::kPaired;
  s.pdist = paired_iid(dist_single_uniform_record(16));
  auto identity = [](ByteView x) { return Bytes(x); };
  s.mechanism = owf_mechanism("identity", identity);
  s.relation = rel_same_image(identity);
  s.adversaries = {adv_echo()};
  return s;
}

std::map<std::string, Scenario (*)()> registry() {
  return {
      {"xor-composed", [] { return xor_scenario("composed"); }},
      {"xor-left-only", [] { return xor_scenario("left"); }},
      {"xor-sum-only", [] { return xor_scenario("sum"); }},
      {"counting-audit-p001",
       [] { return counting_audit_scenario(0.01, "p001"); }},
      {"counting-audit-p012",
       [] { return counting_audit_scenario(0.12, "p012"); }},
      {"counting-audit-p050",
       [] { return counting_audit_scenario(0.5, "p050"); }},
      {"counting-audit-p095",
       [] { return counting_audit_scenario(0.95, "p095"); }},
      {"untruncated-rare", untruncated_rare_scenario},
      {"truncated-rare", truncated_rare_scenario},
      {"canonical-mixture-narcissus",
       [] { return canonical_mixture_scenario(GameKind::kNarcissus); }},
      {"canonical-mixture-rero",
       [] { return canonical_mixture_scenario(GameKind::kRero); }},
      {"canonical-mixture-thresholded",
       [] { return canonical_mixture_scenario(GameKind::kThresholded); }},
      {"rr-paired-ln2", [] { return rr_paired_scenario(std::log(2.0), "ln2"); }},
      {"rr-paired-ln3", [] { return rr_paired_scenario(std::log(3.0), "ln3"); }},
      {"dp-violation-witness", dp_violation_witness_scenario},
      {"otp-paired", otp_paired_scenario},
      {"owf-keystream", owf_keystream_scenario},
      {"owf-identity-break", owf_identity_break_scenario},
  };
}

}  // namespace

std::vector<std::string> scenario_names() {
  std::vector<std::string> names;
  for (const auto& [name, make] : registry()) {
    (void)make;
    names.push_back(name);
  }
  return names;
}

Scenario get_scenario(const std::string& name) {
  auto table = registry();
  auto it = table.find(name);
  if (it == table.end()) {
    throw std::invalid_argument("unknown scenario: " + name);
  }
  return it->second();
}

Scenario scenario_from_json(const nlohmann::json& spec) {
  check_keys(spec,
             {"name", "game", "distribution", "paired_distribution",
              "mechanism", "relation", "adversaries", "baseline_candidates",
              "analytic_baseline", "tau", "inner_trials"},
             "scenario");
  Scenario s;
  s.name = spec.contains("name") ? spec.at("name").get<std::string>()
                                 : std::string("inline");
  s.description = "inline scenario";
  s.game = game_from_json(spec.at("game"));

  size_t dataset_n = 0;
  if (s.game == GameKind::kPaired) {
    if (!spec.contains("paired_distribution")) {
      throw std::invalid_argument("paired game needs paired_distribution");
    }
    s.pdist = paired_from_json(spec.at("paired_distribution"));
  } else {
    if (!spec.contains("distribution")) {
      throw std::invalid_argument("game needs a distribution");
    }
    s.dist = distribution_from_json(spec.at("distribution"));
    dataset_n = s.dist.n;
  }
  s.mechanism = mechanism_from_json(spec.at("mechanism"));
  s.relation = relation_from_json(spec.at("relation"));
  for (const auto& adv : spec.at("adversaries")) {
    s.adversaries.push_back(adversary_from_json(adv, dataset_n));
  }
  if (spec.contains("baseline_candidates")) {
    for (const auto& candidate : spec.at("baseline_candidates")) {
      s.baseline_candidates.push_back(candidate_from_json(candidate));
    }
  }
  if (spec.contains("analytic_baseline")) {
    s.analytic_baseline = spec.at("analytic_baseline").get<double>();
  }
  if (spec.contains("tau")) s.tau = spec.at("tau").get<double>();
  if (spec.contains("inner_trials")) {
    s.inner_trials = spec.at("inner_trials").get<uint64_t>();
  }
  if (s.adversaries.empty()) {
    throw std::invalid_argument("scenario needs at least one adversary");
  }
  return s;
}

nlohmann::json scenario_catalog() {
  nlohmann::json catalog = nlohmann::json::object();
  for (const auto& [name, make] : registry()) {
    catalog[name] = make().description;
  }
  return catalog;
}

}  // namespace narcissus
