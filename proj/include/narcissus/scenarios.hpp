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

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "narcissus/game.hpp"
#include "narcissus/mechanisms.hpp"
#include "narcissus/relations.hpp"

namespace narcissus {

// A complete audit setup: distribution, mechanism, relation and a named
// adversary suite, dimensionally compatible by construction.
struct Scenario {
  std::string name;
  std::string description;
  GameKind game = GameKind::kNarcissus;

  DatasetDistribution dist;           // narcissus / rero / thresholded
  PairedDatasetDistribution pdist;    // paired
  Mechanism mechanism;
  Relation relation;
  std::vector<Adversary> adversaries;

  // rero extras
  std::vector<Candidate> baseline_candidates;
  std::optional<double> analytic_baseline;

  // thresholded extras
  double tau = 0.25;
  uint64_t inner_trials = 200;
};

// Registered scenario names, alphabetical.
std::vector<std::string> scenario_names();

// Lookup; throws std::invalid_argument for unknown names.
Scenario get_scenario(const std::string& name);

// Builds a scenario from an inline definition:
//   { "name": ..., "game": "narcissus|paired|rero|thresholded",
//     "distribution": {...} or "paired_distribution": {...},
//     "mechanism": {...}, "relation": {...}, "adversaries": [{...}, ...],
//     "baseline_candidates": [candidate...], "analytic_baseline": x,
//     "tau": x, "inner_trials": n }
// Component objects are {"kind": ..., parameters...}; unknown keys are
// rejected.
Scenario scenario_from_json(const nlohmann::json& spec);

// Name -> description map for the catalog listing.
nlohmann::json scenario_catalog();

}  // namespace narcissus
