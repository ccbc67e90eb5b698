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

// Batch front-end: experiment configs in, deterministic JSON reports out.
//
// Exit codes, audit subcommand:
//   0  every verdict consistent
//   2  at least one violation
//   3  no violation, at least one inconclusive verdict
//   1  configuration or runtime error
// extract-verify: 0 accepted, 4 rejected, 1 error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "narcissus/report.hpp"
#include "narcissus/scenarios.hpp"

namespace {

using narcissus::Json;

constexpr const char* kVersion = "1.0.0";

Json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    // nlohmann reports the byte offset; surface it as a location diagnostic.
    throw std::runtime_error(path + ": parse error at byte " +
                             std::to_string(e.byte) + ": " + e.what());
  }
}

narcissus::Bytes load_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
}

void check_config_keys(const Json& config) {
  static const std::vector<std::string> kAllowed = {
      "name",  "scenarios", "trials",           "seed", "epsilon",
      "delta", "tau",       "inner_trials",     "jobs", "confidence_level",
      "out"};
  if (!config.is_object()) {
    throw std::runtime_error("config: expected a JSON object");
  }
  for (const auto& [key, value] : config.items()) {
    (void)value;
    if (std::find(kAllowed.begin(), kAllowed.end(), key) == kAllowed.end()) {
      throw std::runtime_error("config: unknown key '" + key + "'");
    }
  }
}

struct AuditSettings {
  std::string config_path;
  std::optional<uint64_t> seed_flag;
  std::optional<uint64_t> trials_flag;
  int jobs = 0;
  std::string out_path;
  std::string format = "json";
};

uint64_t resolve_seed(const Json& config, const AuditSettings& settings) {
  if (settings.seed_flag) return *settings.seed_flag;
  if (config.contains("seed")) return config.at("seed").get<uint64_t>();
  if (const char* env = std::getenv("NARCISSUS_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  throw std::runtime_error(
      "no seed: provide config \"seed\", --seed, or NARCISSUS_SEED");
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

int run_audit(const AuditSettings& settings) {
  const auto start = std::chrono::steady_clock::now();
  Json config = load_json_file(settings.config_path);
  check_config_keys(config);
  if (!config.contains("scenarios") || !config.at("scenarios").is_array() ||
      config.at("scenarios").empty()) {
    throw std::runtime_error("config: \"scenarios\" must be a nonempty array");
  }

  const uint64_t seed = resolve_seed(config, settings);
  const uint64_t trials = settings.trials_flag
                              ? *settings.trials_flag
                              : config.at("trials").get<uint64_t>();
  const double epsilon = config.at("epsilon").get<double>();
  const double delta = config.at("delta").get<double>();
  const double level = config.contains("confidence_level")
                           ? config.at("confidence_level").get<double>()
                           : 0.95;
  narcissus::GameOptions options;
  options.ci_level = level;
  options.jobs = settings.jobs > 0
                     ? settings.jobs
                     : (config.contains("jobs") ? config.at("jobs").get<int>()
                                                : 1);

  Json results = Json::array();
  bool any_violation = false;
  bool any_inconclusive = false;

  for (const auto& entry : config.at("scenarios")) {
    narcissus::Scenario scenario =
        entry.is_string()
            ? narcissus::get_scenario(entry.get<std::string>())
            : narcissus::scenario_from_json(entry);
    if (config.contains("tau")) scenario.tau = config.at("tau").get<double>();
    if (config.contains("inner_trials")) {
      scenario.inner_trials = config.at("inner_trials").get<uint64_t>();
    }

    // Every scenario gets its own derived seed so suites do not share
    // streams across scenario boundaries.
    uint64_t scenario_seed = narcissus::RngStream::from_root(seed)
                                 .child("scenario")
                                 .child(scenario.name)
                                 .next_u64();

    std::vector<narcissus::GameReport> reports;
    switch (scenario.game) {
      case narcissus::GameKind::kNarcissus:
        reports = narcissus::run_narcissus_suite(
            scenario.dist, scenario.mechanism, scenario.adversaries,
            scenario.relation, trials, scenario_seed, options);
        break;
      case narcissus::GameKind::kPaired:
        reports = narcissus::run_paired_suite(
            scenario.pdist, scenario.mechanism, scenario.adversaries,
            scenario.relation, trials, scenario_seed, options);
        break;
      case narcissus::GameKind::kRero:
        for (const auto& adv : scenario.adversaries) {
          reports.push_back(narcissus::run_rero_game(
              scenario.dist, scenario.mechanism, adv, scenario.relation,
              scenario.baseline_candidates, trials, scenario_seed,
              scenario.analytic_baseline, options));
        }
        break;
      case narcissus::GameKind::kThresholded:
        for (const auto& adv : scenario.adversaries) {
          reports.push_back(narcissus::run_thresholded_game(
              scenario.dist, scenario.mechanism, adv, scenario.relation,
              scenario.tau, scenario.inner_trials, trials, scenario_seed,
              options));
        }
        break;
    }

    for (size_t k = 0; k < reports.size(); ++k) {
      narcissus::Verdict verdict =
          narcissus::evaluate_verdict(reports[k], epsilon, delta, level);
      any_violation |= verdict.decision == narcissus::Decision::kViolation;
      any_inconclusive |=
          verdict.decision == narcissus::Decision::kInconclusive;
      results.push_back(Json{{"scenario", scenario.name},
                             {"adversary", scenario.adversaries[k].name},
                             {"report", narcissus::to_json(reports[k])},
                             {"verdict", narcissus::to_json(verdict)}});
    }
  }

  Json echo = config;
  echo["seed"] = seed;
  echo["trials"] = trials;
  echo.erase("out");
  Json report{{"config", echo},
              {"versions", Json{{"narcissus", kVersion},
                                {"bytecode", narcissus::dsl::kVersion}}},
              {"results", results}};

  std::string out_path = !settings.out_path.empty()
                             ? settings.out_path
                             : (config.contains("out")
                                    ? config.at("out").get<std::string>()
                                    : std::string{});
  std::string payload;
  if (settings.format == "csv") {
    std::ostringstream csv;
    csv << "scenario,adversary,game,trials,successes_real,successes_baseline,"
           "p_real,p_baseline,decision,margin\n";
    for (const auto& row : results) {
      const auto& rep = row.at("report");
      csv << csv_escape(row.at("scenario").get<std::string>()) << ','
          << csv_escape(row.at("adversary").get<std::string>()) << ','
          << rep.at("game").get<std::string>() << ','
          << rep.at("trials").get<uint64_t>() << ','
          << rep.at("successes_real").get<uint64_t>() << ','
          << rep.at("successes_baseline").get<uint64_t>() << ','
          << rep.at("p_real").get<double>() << ','
          << rep.at("p_baseline").get<double>() << ','
          << row.at("verdict").at("decision").get<std::string>() << ','
          << row.at("verdict").at("margin").get<double>() << '\n';
    }
    payload = csv.str();
  } else {
    payload = report.dump(2) + "\n";
  }

  if (!out_path.empty()) {
    write_file(out_path, payload);
  } else {
    std::cout << payload;
  }

  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  std::cerr << "audit: " << results.size() << " runs in " << elapsed.count()
            << " ms; verdicts "
            << (any_violation ? "contain a violation"
                              : (any_inconclusive ? "contain an inconclusive"
                                                  : "all consistent"))
            << "\n";
  if (any_violation) return 2;
  if (any_inconclusive) return 3;
  return 0;
}

narcissus::Target target_from_spec(const Json& spec) {
  const std::string kind = spec.at("kind").get<std::string>();
  if (kind == "exact") {
    return narcissus::Target::exact(
        narcissus::from_hex(spec.at("target_hex").get<std::string>()));
  }
  if (kind == "hamming") {
    return narcissus::Target::hamming_ball(
        narcissus::from_hex(spec.at("target_hex").get<std::string>()),
        spec.at("threshold").get<double>(), spec.at("width_bits").get<size_t>(),
        spec.at("elements").get<size_t>());
  }
  throw std::runtime_error("unknown relation kind: " + kind);
}

int run_extract_verify(const std::string& program_path,
                       const std::string& model_path,
                       const std::string& relation_spec, double q,
                       uint64_t trials, uint64_t seed,
                       const std::string& out_path) {
  narcissus::dsl::Program program;
  try {
    program = narcissus::dsl::Program::parse(load_file_bytes(program_path));
  } catch (const narcissus::dsl::FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  narcissus::Bytes model = load_file_bytes(model_path);
  Json spec = relation_spec.size() && relation_spec[0] == '{'
                  ? Json::parse(relation_spec)
                  : load_json_file(relation_spec);
  narcissus::Target target = target_from_spec(spec);

  narcissus::ExtractionEvidence evidence =
      narcissus::validate_extractor(program, model, target, q, trials, seed);

  Json out = narcissus::to_json(evidence);
  std::string payload = out.dump(2) + "\n";
  if (!out_path.empty()) {
    write_file(out_path, payload);
  } else {
    std::cout << payload;
  }
  std::cout << (evidence.accepted ? "ACCEPT" : "REJECT") << ": quality "
            << evidence.quality << " (program " << std::fixed
            << narcissus::dsl::program_length_bits(evidence.program)
            << " bits, floor " << evidence.k_lower.value_bits << " bits)\n";
  std::cout << "warning: the incompressibility floor is a compression "
               "heuristic, not a proof; a short generator for the target "
               "would invalidate this evidence, and detecting one is "
               "computationally hard in general.\n";
  return evidence.accepted ? 0 : 4;
}

int run_hardness_demo(int d, uint64_t instances, uint64_t seed,
                      const std::string& emit_dir,
                      const std::string& out_path) {
  if (!emit_dir.empty()) {
    for (int b = 0; b <= 1; ++b) {
      narcissus::HardInstance instance =
          narcissus::attacker_generate(d, b, seed + uint64_t(b));
      std::string stem = emit_dir + "/instance-b" + std::to_string(b);
      write_file(stem + ".json", narcissus::to_json(instance).dump(2) + "\n");
      write_file(stem + ".program.ndsl", instance.program.serialize());
      write_file(stem + ".model.bin", instance.y);
      Json relation{{"kind", "exact"},
                    {"target_hex", narcissus::to_hex(instance.x)}};
      write_file(stem + ".relation.json", relation.dump(2) + "\n");
    }
    std::cerr << "emitted replay instances to " << emit_dir << "\n";
  }

  Json table = Json::array();
  std::cout << "verifier            accuracy   95% CI\n";
  for (const auto& [name, verifier] : narcissus::bundled_verifiers()) {
    narcissus::AccuracyReport report = narcissus::distinguisher_experiment(
        verifier, name, d, instances, seed);
    table.push_back(narcissus::to_json(report));
    std::printf("%-18s  %.4f     [%.4f, %.4f]\n", name.c_str(),
                report.accuracy, report.ci.lower, report.ci.upper);
  }
  if (!out_path.empty()) {
    write_file(out_path, table.dump(2) + "\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"empirical audit games for reconstruction resiliency"};
  app.require_subcommand(1);

  AuditSettings audit;
  auto* audit_cmd = app.add_subcommand("audit", "run a configured experiment");
  audit_cmd->add_option("--config", audit.config_path, "experiment config file")
      ->required();
  uint64_t seed_flag = 0;
  uint64_t trials_flag = 0;
  auto* seed_opt = audit_cmd->add_option("--seed", seed_flag, "seed override");
  auto* trials_opt =
      audit_cmd->add_option("--trials", trials_flag, "trials override");
  audit_cmd->add_option("--jobs", audit.jobs, "worker threads");
  audit_cmd->add_option("--out", audit.out_path, "report path");
  audit_cmd->add_option("--format", audit.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  std::string program_path, model_path, relation_spec, ev_out;
  double q = 0.5;
  uint64_t ev_trials = 1000, ev_seed = 1;
  auto* ev_cmd =
      app.add_subcommand("extract-verify", "validate extraction evidence");
  ev_cmd->add_option("--program", program_path, "bytecode file")->required();
  ev_cmd->add_option("--model", model_path, "model bytes file")->required();
  ev_cmd->add_option("--relation", relation_spec, "relation spec file or JSON")
      ->required();
  ev_cmd->add_option("--q", q, "quality demand in [0,1)");
  ev_cmd->add_option("--trials", ev_trials, "success-estimate trials");
  ev_cmd->add_option("--seed", ev_seed, "seed");
  ev_cmd->add_option("--out", ev_out, "evidence report path");

  int hd_d = 16;
  uint64_t hd_instances = 200, hd_seed = 1;
  std::string hd_emit, hd_out;
  auto* hd_cmd = app.add_subcommand(
      "hardness-demo", "verification-hardness distinguisher table");
  hd_cmd->add_option("--d", hd_d, "security parameter (multiple of 4)");
  hd_cmd->add_option("--instances", hd_instances, "instance count");
  hd_cmd->add_option("--seed", hd_seed, "seed");
  hd_cmd->add_option("--emit", hd_emit, "directory for replay instances");
  hd_cmd->add_option("--out", hd_out, "accuracy table path");

  auto* ls_cmd = app.add_subcommand("list-scenarios", "bundled scenario list");

  CLI11_PARSE(app, argc, argv);

  try {
    if (audit_cmd->parsed()) {
      if (!seed_opt->empty()) audit.seed_flag = seed_flag;
      if (!trials_opt->empty()) audit.trials_flag = trials_flag;
      return run_audit(audit);
    }
    if (ev_cmd->parsed()) {
      return run_extract_verify(program_path, model_path, relation_spec, q,
                                ev_trials, ev_seed, ev_out);
    }
    if (hd_cmd->parsed()) {
      return run_hardness_demo(hd_d, hd_instances, hd_seed, hd_emit, hd_out);
    }
    if (ls_cmd->parsed()) {
      for (const auto& [name, description] :
           narcissus::scenario_catalog().items()) {
        std::cout << name << "\n    " << description.get<std::string>()
                  << "\n";
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
