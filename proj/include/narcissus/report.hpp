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

#include <json.hpp>

#include "narcissus/game.hpp"
#include "narcissus/hardness.hpp"
#include "narcissus/kolmogorov.hpp"

// JSON encodings of every report object. Keys are emitted in sorted order
// and numbers round-trip exactly, so a report file is a deterministic
// function of (config, seed).
namespace narcissus {

using Json = nlohmann::json;

Json to_json(const BinomialCI& ci);
BinomialCI binomial_ci_from_json(const Json& j);

Json to_json(const GameReport& report);
GameReport game_report_from_json(const Json& j);

Json to_json(const Verdict& verdict);
Verdict verdict_from_json(const Json& j);

Json to_json(const Candidate& candidate);
Candidate candidate_from_json(const Json& j);

Json to_json(const KEstimate& estimate);
Json to_json(const ExtractionEvidence& evidence);

Json to_json(const HardInstance& instance);
HardInstance hard_instance_from_json(const Json& j);

Json to_json(const AccuracyReport& report);

bool operator==(const BinomialCI& a, const BinomialCI& b);
bool operator==(const GameReport& a, const GameReport& b);

}  // namespace narcissus
