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
#include <optional>
#include <string>
#include <vector>

#include "narcissus/core.hpp"
#include "narcissus/stats.hpp"

namespace narcissus {

// The four audit games. In every game the adversary sees only the mechanism
// output, never which dataset it will be scored against.
//
//   narcissus    real: R(S, z) for y = M(S), z = A(y).
//                baseline: the same z scored against an independent fresh T.
//   paired       (S0, S1) from a paired distribution, fair side bit b,
//                y = M(S_b); real scores R(S_b, z), baseline R(S_{1-b}, z).
//   rero         real as in narcissus; baseline is the best fixed candidate
//                z* from a declared set (or an injected analytic value).
//   thresholded  success only when R(S, z) = 1 AND a nested estimate of
//                Pr_T[R(T, z) = 1] stays at or below tau.
enum class GameKind { kNarcissus, kPaired, kRero, kThresholded };

std::string game_kind_name(GameKind kind);

struct GameReport {
  GameKind game_kind = GameKind::kNarcissus;
  uint64_t trials = 0;
  uint64_t successes_real = 0;
  uint64_t successes_baseline = 0;
  double p_real = 0.0;
  double p_baseline = 0.0;
  BinomialCI ci_real;
  BinomialCI ci_baseline;
  uint64_t seed = 0;
  double ci_level = 0.95;

  // How the baseline side was obtained: "paired-fresh-sample",
  // "candidate-set-max:<index>", "analytic", or "threshold-parameter".
  std::string baseline_method;

  // Thresholded-game parameters (tau is also echoed into p_baseline there).
  double tau = 0.0;
  uint64_t inner_trials = 0;
};

enum class Decision { kConsistent, kViolation, kInconclusive };

std::string decision_name(Decision decision);

// Three-way verdict of the resiliency inequality
//   p_real <= e^epsilon * p_baseline + delta
// decided on confidence intervals rather than point estimates, so Monte
// Carlo noise cannot manufacture a violation:
//   violation    lower-CI(p_real) >  e^eps * upper-CI(p_baseline) + delta
//   consistent   upper-CI(p_real) <= e^eps * lower-CI(p_baseline) + delta
//   inconclusive otherwise.
struct Verdict {
  double epsilon = 0.0;
  double delta = 0.0;
  double margin = 0.0;  // p_real - (e^eps * p_baseline + delta), point estimate
  Decision decision = Decision::kInconclusive;
  double confidence_level = 0.95;
};

struct GameOptions {
  double ci_level = 0.95;
  int jobs = 1;  // <=1: sequential. Counts are identical for any job count.
};

// Single-adversary games.
GameReport run_narcissus_game(const DatasetDistribution& dist,
                              const Mechanism& mech, const Adversary& adv,
                              const Relation& rel, uint64_t trials,
                              uint64_t seed, const GameOptions& options = {});

GameReport run_paired_game(const PairedDatasetDistribution& pdist,
                           const Mechanism& mech, const Adversary& adv,
                           const Relation& rel, uint64_t trials, uint64_t seed,
                           const GameOptions& options = {});

GameReport run_rero_game(const DatasetDistribution& dist, const Mechanism& mech,
                         const Adversary& adv, const Relation& rel,
                         const std::vector<Candidate>& baseline_candidates,
                         uint64_t trials, uint64_t seed,
                         std::optional<double> analytic_baseline = std::nullopt,
                         const GameOptions& options = {});

GameReport run_thresholded_game(const DatasetDistribution& dist,
                                const Mechanism& mech, const Adversary& adv,
                                const Relation& rel, double tau,
                                uint64_t inner_trials, uint64_t trials,
                                uint64_t seed, const GameOptions& options = {});

// Suite variants share the per-trial (S, T, y) across all adversaries, so an
// n-adversary audit costs one sampling pass instead of n. Each adversary
// still gets its own derived streams; report k equals a single-adversary run
// of adversary k under the suite's stream layout.
std::vector<GameReport> run_narcissus_suite(
    const DatasetDistribution& dist, const Mechanism& mech,
    const std::vector<Adversary>& advs, const Relation& rel, uint64_t trials,
    uint64_t seed, const GameOptions& options = {});

std::vector<GameReport> run_paired_suite(const PairedDatasetDistribution& pdist,
                                         const Mechanism& mech,
                                         const std::vector<Adversary>& advs,
                                         const Relation& rel, uint64_t trials,
                                         uint64_t seed,
                                         const GameOptions& options = {});

// Verdict for a finished report at (epsilon, delta). Intervals are
// recomputed from the counts at `level`; degenerate baselines (analytic
// values, the thresholded game's tau) keep zero-width intervals.
Verdict evaluate_verdict(const GameReport& report, double epsilon, double delta,
                         double level);

// Tuple of every mechanism's output on the same dataset, each with an
// independent randomness stream.
Mechanism compose_mechanisms(std::vector<Mechanism> mechs);

}  // namespace narcissus
