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

#include "narcissus/report.hpp"

namespace narcissus {

namespace {

GameKind game_kind_from_name(const std::string& name) {
  if (name == "narcissus") return GameKind::kNarcissus;
  if (name == "paired") return GameKind::kPaired;
  if (name == "rero") return GameKind::kRero;
  if (name == "thresholded") return GameKind::kThresholded;
  throw std::invalid_argument("unknown game kind: " + name);
}

Decision decision_from_name(const std::string& name) {
  if (name == "consistent") return Decision::kConsistent;
  if (name == "violation") return Decision::kViolation;
  if (name == "inconclusive") return Decision::kInconclusive;
  throw std::invalid_argument("unknown decision: " + name);
}

}  // namespace

Json to_json(const BinomialCI& ci) {
  return Json{{"lower", ci.lower}, {"upper", ci.upper}, {"level", ci.level}};
}

BinomialCI binomial_ci_from_json(const Json& j) {
  return BinomialCI{j.at("lower").get<double>(), j.at("upper").get<double>(),
                    j.at("level").get<double>()};
}

Json to_json(const GameReport& report) {
  Json j{{"game", game_kind_name(report.game_kind)},
         {"trials", report.trials},
         {"successes_real", report.successes_real},
         {"successes_baseline", report.successes_baseline},
         {"p_real", report.p_real},
         {"p_baseline", report.p_baseline},
         {"ci_real", to_json(report.ci_real)},
         {"ci_baseline", to_json(report.ci_baseline)},
         {"seed", report.seed},
         {"ci_level", report.ci_level},
         {"baseline_method", report.baseline_method}};
  if (report.game_kind == GameKind::kThresholded) {
    j["tau"] = report.tau;
    j["inner_trials"] = report.inner_trials;
  }
  return j;
}

GameReport game_report_from_json(const Json& j) {
  GameReport report;
  report.game_kind = game_kind_from_name(j.at("game").get<std::string>());
  report.trials = j.at("trials").get<uint64_t>();
  report.successes_real = j.at("successes_real").get<uint64_t>();
  report.successes_baseline = j.at("successes_baseline").get<uint64_t>();
  report.p_real = j.at("p_real").get<double>();
  report.p_baseline = j.at("p_baseline").get<double>();
  report.ci_real = binomial_ci_from_json(j.at("ci_real"));
  report.ci_baseline = binomial_ci_from_json(j.at("ci_baseline"));
  report.seed = j.at("seed").get<uint64_t>();
  report.ci_level = j.at("ci_level").get<double>();
  report.baseline_method = j.at("baseline_method").get<std::string>();
  if (j.contains("tau")) report.tau = j.at("tau").get<double>();
  if (j.contains("inner_trials")) {
    report.inner_trials = j.at("inner_trials").get<uint64_t>();
  }
  return report;
}

Json to_json(const Verdict& verdict) {
  return Json{{"epsilon", verdict.epsilon},
              {"delta", verdict.delta},
              {"margin", verdict.margin},
              {"decision", decision_name(verdict.decision)},
              {"confidence_level", verdict.confidence_level}};
}

Verdict verdict_from_json(const Json& j) {
  Verdict verdict;
  verdict.epsilon = j.at("epsilon").get<double>();
  verdict.delta = j.at("delta").get<double>();
  verdict.margin = j.at("margin").get<double>();
  verdict.decision = decision_from_name(j.at("decision").get<std::string>());
  verdict.confidence_level = j.at("confidence_level").get<double>();
  return verdict;
}

Json to_json(const Candidate& candidate) {
  struct Visitor {
    Json operator()(const Bytes& b) {
      return Json{{"tag", "bytes"}, {"hex", to_hex(b)}};
    }
    Json operator()(const IndexGuess& g) {
      Json j{{"tag", "index-guess"}, {"index", g.index}};
      if (g.bit.has_value()) {
        j["bit"] = *g.bit;
      } else {
        j["bit"] = nullptr;
      }
      return j;
    }
    Json operator()(const Pinpoint& p) {
      return Json{
          {"tag", "pinpoint"}, {"indices", p.indices}, {"bits", p.bits}};
    }
    Json operator()(const PredicateHandle& p) {
      return Json{{"tag", "predicate"},
                  {"kind", int(p.kind)},
                  {"record_hex", to_hex(p.record)},
                  {"bit", p.bit},
                  {"weight", p.weight},
                  {"salt", p.salt}};
    }
    Json operator()(const FunctionHandle& f) {
      return Json{{"tag", "function"},
                  {"kind", int(f.kind)},
                  {"bit", f.bit},
                  {"record_hex", to_hex(f.record)},
                  {"mean", f.mean},
                  {"threshold", f.threshold}};
    }
    Json operator()(const ProgramHandle& p) {
      return Json{{"tag", "program"},
                  {"bytecode_hex", to_hex(p.program.serialize())}};
    }
    Json operator()(const CandidateTuple& t) {
      Json items = Json::array();
      for (const auto& item : t.items) items.push_back(to_json(item));
      return Json{{"tag", "tuple"}, {"items", items}};
    }
  };
  return std::visit(Visitor{}, candidate.value);
}

Candidate candidate_from_json(const Json& j) {
  const std::string tag = j.at("tag").get<std::string>();
  if (tag == "bytes") {
    return Candidate{from_hex(j.at("hex").get<std::string>())};
  }
  if (tag == "index-guess") {
    IndexGuess g;
    g.index = j.at("index").get<size_t>();
    if (!j.at("bit").is_null()) g.bit = j.at("bit").get<int>();
    return Candidate{g};
  }
  if (tag == "pinpoint") {
    Pinpoint p;
    p.indices = j.at("indices").get<std::vector<size_t>>();
    p.bits = j.at("bits").get<std::vector<int>>();
    return Candidate{p};
  }
  if (tag == "predicate") {
    PredicateHandle p;
    p.kind = PredicateHandle::Kind(j.at("kind").get<int>());
    p.record = from_hex(j.at("record_hex").get<std::string>());
    p.bit = j.at("bit").get<int>();
    p.weight = j.at("weight").get<double>();
    p.salt = j.at("salt").get<uint64_t>();
    return Candidate{p};
  }
  if (tag == "function") {
    FunctionHandle f;
    f.kind = FunctionHandle::Kind(j.at("kind").get<int>());
    f.bit = j.at("bit").get<int>();
    f.record = from_hex(j.at("record_hex").get<std::string>());
    f.mean = j.at("mean").get<double>();
    f.threshold = j.at("threshold").get<double>();
    return Candidate{f};
  }
  if (tag == "program") {
    return Candidate{ProgramHandle{
        dsl::Program::parse(from_hex(j.at("bytecode_hex").get<std::string>()))}};
  }
  if (tag == "tuple") {
    CandidateTuple t;
    for (const auto& item : j.at("items")) {
      t.items.push_back(candidate_from_json(item));
    }
    return Candidate{std::move(t)};
  }
  throw std::invalid_argument("unknown candidate tag: " + tag);
}

Json to_json(const KEstimate& estimate) {
  Json j{{"kind", estimate.kind == KEstimate::Kind::kUpperExactInDsl
                      ? "upper_exact_in_dsl"
                      : "lower_heuristic"},
         {"value_bits", estimate.value_bits},
         {"method", estimate.method},
         {"confidence", estimate.confidence},
         {"no_bound", estimate.no_bound}};
  if (estimate.witness) {
    j["witness_hex"] = to_hex(estimate.witness->serialize());
  }
  return j;
}

Json to_json(const ExtractionEvidence& evidence) {
  return Json{{"program_hex", to_hex(evidence.program.serialize())},
              {"program_length_bits", dsl::program_length_bits(evidence.program)},
              {"model_hex", to_hex(evidence.model)},
              {"relation", evidence.relation_description},
              {"trials", evidence.trials},
              {"successes", evidence.successes},
              {"success_rate", evidence.success_rate},
              {"success_ci", to_json(evidence.success_ci)},
              {"k_lower", to_json(evidence.k_lower)},
              {"q", evidence.q},
              {"quality", evidence.quality},
              {"accepted", evidence.accepted}};
}

Json to_json(const HardInstance& instance) {
  Json j{{"d", instance.d},
         {"b", instance.b},
         {"program_hex", to_hex(instance.program.serialize())},
         {"x_hex", to_hex(instance.x)},
         {"y_hex", to_hex(instance.y)}};
  if (instance.b == 0) j["seed_hex"] = to_hex(instance.seed);
  return j;
}

HardInstance hard_instance_from_json(const Json& j) {
  HardInstance instance;
  instance.d = j.at("d").get<int>();
  instance.b = j.at("b").get<int>();
  instance.program =
      dsl::Program::parse(from_hex(j.at("program_hex").get<std::string>()));
  instance.x = from_hex(j.at("x_hex").get<std::string>());
  instance.y = from_hex(j.at("y_hex").get<std::string>());
  if (j.contains("seed_hex")) {
    instance.seed = from_hex(j.at("seed_hex").get<std::string>());
  }
  return instance;
}

Json to_json(const AccuracyReport& report) {
  return Json{{"verifier", report.verifier},
              {"instances", report.instances},
              {"correct", report.correct},
              {"accuracy", report.accuracy},
              {"ci", to_json(report.ci)}};
}

bool operator==(const BinomialCI& a, const BinomialCI& b) {
  return a.lower == b.lower && a.upper == b.upper && a.level == b.level;
}

bool operator==(const GameReport& a, const GameReport& b) {
  return a.game_kind == b.game_kind && a.trials == b.trials &&
         a.successes_real == b.successes_real &&
         a.successes_baseline == b.successes_baseline && a.p_real == b.p_real &&
         a.p_baseline == b.p_baseline && a.ci_real == b.ci_real &&
         a.ci_baseline == b.ci_baseline && a.seed == b.seed &&
         a.ci_level == b.ci_level && a.baseline_method == b.baseline_method &&
         a.tau == b.tau && a.inner_trials == b.inner_trials;
}

}  // namespace narcissus
