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

#include "narcissus/game.hpp"

#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace narcissus {

// Stream derivation tree (pinned; tests rely on it):
//   root = from_root(seed)
//   trial t:   base = root / "trial" / t
//     S          <- dist( base / "S" )
//     T          <- dist( base / "T" )            narcissus baseline only
//     (S0, S1)   <- pdist( base / "pair" ),  b = bit( base / "b" )   paired
//     y          <- mech( base / "mech" )
//     z_k        <- adv_k( base / "adv" / k )
//     real score <- rel( base / "rel" / k / "real" )
//     base score <- rel( base / "rel" / k / "base" )
//     inner j:   T_j <- dist( base / "inner" / j / "T" ),
//                rel( base / "inner" / j / "rel" )   thresholded only
//   rero baseline, candidate c, trial t:
//     T   <- dist( root / "rero-baseline" / c / t / "T" )
//     rel( root / "rero-baseline" / c / t / "rel" )
//
// The narcissus and thresholded games share every label on the real side, so
// with equal seeds the thresholded game at tau = 1 reproduces the narcissus
// real-side successes exactly.

std::string game_kind_name(GameKind kind) {
  switch (kind) {
    case GameKind::kNarcissus:
      return "narcissus";
    case GameKind::kPaired:
      return "paired";
    case GameKind::kRero:
      return "rero";
    case GameKind::kThresholded:
      return "thresholded";
  }
  return "unknown";
}

std::string decision_name(Decision decision) {
  switch (decision) {
    case Decision::kConsistent:
      return "consistent";
    case Decision::kViolation:
      return "violation";
    case Decision::kInconclusive:
      return "inconclusive";
  }
  return "unknown";
}

namespace {

struct Tally {
  uint64_t real = 0;
  uint64_t base = 0;
};

// Runs `body(t, tallies)` for every trial, optionally across threads.
// Tallies are integer counts, so the result is independent of the partition.
template <typename Body>
void for_each_trial(uint64_t trials, int jobs, std::vector<Tally>& tallies,
                    Body&& body) {
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  unsigned max_jobs = std::thread::hardware_concurrency();
  if (max_jobs == 0) max_jobs = 1;
  unsigned n_jobs = jobs <= 1 ? 1u : std::min<unsigned>(unsigned(jobs), max_jobs);
  if (n_jobs > trials) n_jobs = unsigned(trials);

  if (n_jobs == 1) {
    for (uint64_t t = 0; t < trials; ++t) body(t, tallies);
    return;
  }

  std::vector<std::vector<Tally>> partial(
      n_jobs, std::vector<Tally>(tallies.size()));
  std::vector<std::thread> workers;
  std::exception_ptr error;
  std::mutex error_mu;
  for (unsigned w = 0; w < n_jobs; ++w) {
    uint64_t begin = trials * w / n_jobs;
    uint64_t end = trials * (w + 1) / n_jobs;
    workers.emplace_back([&, w, begin, end] {
      try {
        for (uint64_t t = begin; t < end; ++t) body(t, partial[w]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& worker : workers) worker.join();
  if (error) std::rethrow_exception(error);
  for (const auto& part : partial) {
    for (size_t i = 0; i < tallies.size(); ++i) {
      tallies[i].real += part[i].real;
      tallies[i].base += part[i].base;
    }
  }
}

GameReport make_report(GameKind kind, uint64_t trials, const Tally& tally,
                       uint64_t seed, const GameOptions& options,
                       const std::string& baseline_method) {
  GameReport report;
  report.game_kind = kind;
  report.trials = trials;
  report.successes_real = tally.real;
  report.successes_baseline = tally.base;
  report.p_real = double(tally.real) / double(trials);
  report.p_baseline = double(tally.base) / double(trials);
  report.ci_real = clopper_pearson(tally.real, trials, options.ci_level);
  report.ci_baseline = clopper_pearson(tally.base, trials, options.ci_level);
  report.seed = seed;
  report.ci_level = options.ci_level;
  report.baseline_method = baseline_method;
  return report;
}

void check_components(const Mechanism& mech, const Relation& rel) {
  if (!mech.apply) throw std::invalid_argument("mechanism has no procedure");
  if (!rel.eval) throw std::invalid_argument("relation has no procedure");
}

[[noreturn]] void rethrow_trial_error(uint64_t trial, const CandidateError& e) {
  throw CandidateError("trial " + std::to_string(trial) + ": " + e.what());
}

}  // namespace

std::vector<GameReport> run_narcissus_suite(const DatasetDistribution& dist,
                                            const Mechanism& mech,
                                            const std::vector<Adversary>& advs,
                                            const Relation& rel,
                                            uint64_t trials, uint64_t seed,
                                            const GameOptions& options) {
  check_components(mech, rel);
  if (!dist.sample) throw std::invalid_argument("distribution has no sampler");
  if (advs.empty()) throw std::invalid_argument("no adversaries");

  RngStream root = RngStream::from_root(seed);
  RngStream trial_root = root.child("trial");
  std::vector<Tally> tallies(advs.size());

  for_each_trial(trials, options.jobs, tallies, [&](uint64_t t,
                                                    std::vector<Tally>& out) {
    RngStream base = trial_root.child(t);
    RngStream s_stream = base.child("S");
    RngStream t_stream = base.child("T");
    RngStream m_stream = base.child("mech");
    Dataset s = dist.sample(s_stream);
    Dataset fresh = dist.sample(t_stream);
    Output y = mech.apply(s, m_stream);
    RngStream adv_root = base.child("adv");
    RngStream rel_root = base.child("rel");
    for (size_t k = 0; k < advs.size(); ++k) {
      RngStream a_stream = adv_root.child(uint64_t(k));
      Candidate z = advs[k].attack(y, a_stream);
      try {
        RngStream rr = rel_root.child(uint64_t(k)).child("real");
        RngStream rb = rel_root.child(uint64_t(k)).child("base");
        if (rel.eval(s, z, rr)) ++out[k].real;
        if (rel.eval(fresh, z, rb)) ++out[k].base;
      } catch (const CandidateError& e) {
        rethrow_trial_error(t, e);
      }
    }
  });

  std::vector<GameReport> reports;
  reports.reserve(advs.size());
  for (const auto& tally : tallies) {
    reports.push_back(make_report(GameKind::kNarcissus, trials, tally, seed,
                                  options, "paired-fresh-sample"));
  }
  return reports;
}

GameReport run_narcissus_game(const DatasetDistribution& dist,
                              const Mechanism& mech, const Adversary& adv,
                              const Relation& rel, uint64_t trials,
                              uint64_t seed, const GameOptions& options) {
  return run_narcissus_suite(dist, mech, {adv}, rel, trials, seed, options)[0];
}

std::vector<GameReport> run_paired_suite(const PairedDatasetDistribution& pdist,
                                         const Mechanism& mech,
                                         const std::vector<Adversary>& advs,
                                         const Relation& rel, uint64_t trials,
                                         uint64_t seed,
                                         const GameOptions& options) {
  check_components(mech, rel);
  if (!pdist.sample) throw std::invalid_argument("distribution has no sampler");
  if (advs.empty()) throw std::invalid_argument("no adversaries");

  RngStream root = RngStream::from_root(seed);
  RngStream trial_root = root.child("trial");
  std::vector<Tally> tallies(advs.size());

  for_each_trial(trials, options.jobs, tallies, [&](uint64_t t,
                                                    std::vector<Tally>& out) {
    RngStream base = trial_root.child(t);
    RngStream pair_stream = base.child("pair");
    auto [s0, s1] = pdist.sample(pair_stream);
    RngStream b_stream = base.child("b");
    int b = b_stream.bit();
    const Dataset& chosen = b == 0 ? s0 : s1;
    const Dataset& other = b == 0 ? s1 : s0;
    RngStream m_stream = base.child("mech");
    Output y = mech.apply(chosen, m_stream);
    RngStream adv_root = base.child("adv");
    RngStream rel_root = base.child("rel");
    for (size_t k = 0; k < advs.size(); ++k) {
      RngStream a_stream = adv_root.child(uint64_t(k));
      Candidate z = advs[k].attack(y, a_stream);
      try {
        RngStream rr = rel_root.child(uint64_t(k)).child("real");
        RngStream rb = rel_root.child(uint64_t(k)).child("base");
        if (rel.eval(chosen, z, rr)) ++out[k].real;
        if (rel.eval(other, z, rb)) ++out[k].base;
      } catch (const CandidateError& e) {
        rethrow_trial_error(t, e);
      }
    }
  });

  std::vector<GameReport> reports;
  reports.reserve(advs.size());
  for (const auto& tally : tallies) {
    reports.push_back(make_report(GameKind::kPaired, trials, tally, seed,
                                  options, "paired-fresh-sample"));
  }
  return reports;
}

GameReport run_paired_game(const PairedDatasetDistribution& pdist,
                           const Mechanism& mech, const Adversary& adv,
                           const Relation& rel, uint64_t trials, uint64_t seed,
                           const GameOptions& options) {
  return run_paired_suite(pdist, mech, {adv}, rel, trials, seed, options)[0];
}

GameReport run_rero_game(const DatasetDistribution& dist, const Mechanism& mech,
                         const Adversary& adv, const Relation& rel,
                         const std::vector<Candidate>& baseline_candidates,
                         uint64_t trials, uint64_t seed,
                         std::optional<double> analytic_baseline,
                         const GameOptions& options) {
  check_components(mech, rel);
  if (!dist.sample) throw std::invalid_argument("distribution has no sampler");
  if (baseline_candidates.empty() && !analytic_baseline.has_value()) {
    throw std::invalid_argument(
        "rero baseline needs candidates or an analytic value");
  }

  RngStream root = RngStream::from_root(seed);
  RngStream trial_root = root.child("trial");
  std::vector<Tally> tallies(1);

  // Real side: identical stream layout to the narcissus game.
  for_each_trial(trials, options.jobs, tallies, [&](uint64_t t,
                                                    std::vector<Tally>& out) {
    RngStream base = trial_root.child(t);
    RngStream s_stream = base.child("S");
    RngStream m_stream = base.child("mech");
    Dataset s = dist.sample(s_stream);
    Output y = mech.apply(s, m_stream);
    RngStream a_stream = base.child("adv").child(uint64_t(0));
    Candidate z = adv.attack(y, a_stream);
    try {
      RngStream rr = base.child("rel").child(uint64_t(0)).child("real");
      if (rel.eval(s, z, rr)) ++out[0].real;
    } catch (const CandidateError& e) {
      rethrow_trial_error(t, e);
    }
  });

  GameReport report;
  if (analytic_baseline.has_value()) {
    double p = *analytic_baseline;
    if (p < 0.0 || p > 1.0) {
      throw std::invalid_argument("analytic baseline must be in [0,1]");
    }
    report = make_report(GameKind::kRero, trials, tallies[0], seed, options,
                         "analytic");
    report.successes_baseline = uint64_t(std::llround(p * double(trials)));
    report.p_baseline = p;
    report.ci_baseline = BinomialCI{p, p, options.ci_level};
    return report;
  }

  // Baseline: sup over the declared candidate set, estimated per candidate
  // against fresh datasets.
  RngStream rero_root = root.child("rero-baseline");
  uint64_t best = 0;
  size_t best_index = 0;
  for (size_t c = 0; c < baseline_candidates.size(); ++c) {
    std::vector<Tally> cand_tally(1);
    RngStream cand_root = rero_root.child(uint64_t(c));
    for_each_trial(trials, options.jobs, cand_tally,
                   [&](uint64_t t, std::vector<Tally>& out) {
                     RngStream base = cand_root.child(t);
                     RngStream t_stream = base.child("T");
                     Dataset fresh = dist.sample(t_stream);
                     RngStream rstream = base.child("rel");
                     try {
                       if (rel.eval(fresh, baseline_candidates[c], rstream)) {
                         ++out[0].real;
                       }
                     } catch (const CandidateError& e) {
                       rethrow_trial_error(t, e);
                     }
                   });
    if (cand_tally[0].real >= best) {
      if (cand_tally[0].real > best || c == 0) best_index = c;
      best = cand_tally[0].real;
    }
  }

  Tally combined{tallies[0].real, best};
  report = make_report(GameKind::kRero, trials, combined, seed, options,
                       "candidate-set-max:" + std::to_string(best_index));
  return report;
}

GameReport run_thresholded_game(const DatasetDistribution& dist,
                                const Mechanism& mech, const Adversary& adv,
                                const Relation& rel, double tau,
                                uint64_t inner_trials, uint64_t trials,
                                uint64_t seed, const GameOptions& options) {
  check_components(mech, rel);
  if (!dist.sample) throw std::invalid_argument("distribution has no sampler");
  if (tau < 0.0 || tau > 1.0) {
    throw std::invalid_argument("tau must be in [0,1]");
  }
  if (inner_trials == 0) {
    throw std::invalid_argument("inner_trials must be >= 1");
  }

  RngStream root = RngStream::from_root(seed);
  RngStream trial_root = root.child("trial");
  std::vector<Tally> tallies(1);

  for_each_trial(trials, options.jobs, tallies, [&](uint64_t t,
                                                    std::vector<Tally>& out) {
    RngStream base = trial_root.child(t);
    RngStream s_stream = base.child("S");
    RngStream m_stream = base.child("mech");
    Dataset s = dist.sample(s_stream);
    Output y = mech.apply(s, m_stream);
    RngStream a_stream = base.child("adv").child(uint64_t(0));
    Candidate z = adv.attack(y, a_stream);
    try {
      RngStream rr = base.child("rel").child(uint64_t(0)).child("real");
      if (!rel.eval(s, z, rr)) return;
      // Nested estimate of the conditional baseline Pr_T[R(T, z) = 1].
      // tau = 1 never binds, so the check is skipped and the real side
      // matches the narcissus game exactly under shared seeds.
      if (tau < 1.0) {
        uint64_t hits = 0;
        RngStream inner_root = base.child("inner");
        for (uint64_t j = 0; j < inner_trials; ++j) {
          RngStream inner = inner_root.child(j);
          RngStream it_stream = inner.child("T");
          Dataset fresh = dist.sample(it_stream);
          RngStream ir_stream = inner.child("rel");
          if (rel.eval(fresh, z, ir_stream)) ++hits;
        }
        double estimate = double(hits) / double(inner_trials);
        if (estimate > tau) return;
      }
      ++out[0].real;
    } catch (const CandidateError& e) {
      rethrow_trial_error(t, e);
    }
  });

  GameReport report = make_report(GameKind::kThresholded, trials, tallies[0],
                                  seed, options, "threshold-parameter");
  report.successes_baseline = 0;
  report.p_baseline = tau;
  report.ci_baseline = BinomialCI{tau, tau, options.ci_level};
  report.tau = tau;
  report.inner_trials = inner_trials;
  return report;
}

Verdict evaluate_verdict(const GameReport& report, double epsilon, double delta,
                         double level) {
  if (epsilon < 0.0) throw std::invalid_argument("epsilon must be >= 0");
  if (delta < 0.0 || delta > 1.0) {
    throw std::invalid_argument("delta must be in [0,1]");
  }

  BinomialCI real = clopper_pearson(report.successes_real, report.trials, level);
  BinomialCI base;
  bool degenerate_baseline = report.game_kind == GameKind::kThresholded ||
                             report.baseline_method == "analytic";
  if (degenerate_baseline) {
    base = BinomialCI{report.p_baseline, report.p_baseline, level};
  } else {
    base = clopper_pearson(report.successes_baseline, report.trials, level);
  }

  const double scale = std::exp(epsilon);
  Verdict verdict;
  verdict.epsilon = epsilon;
  verdict.delta = delta;
  verdict.confidence_level = level;
  verdict.margin = report.p_real - (scale * report.p_baseline + delta);
  if (real.lower > scale * base.upper + delta) {
    verdict.decision = Decision::kViolation;
  } else if (real.upper <= scale * base.lower + delta) {
    verdict.decision = Decision::kConsistent;
  } else {
    verdict.decision = Decision::kInconclusive;
  }
  return verdict;
}

Mechanism compose_mechanisms(std::vector<Mechanism> mechs) {
  if (mechs.empty()) {
    throw std::invalid_argument("compose_mechanisms: empty sequence");
  }
  std::string name = "compose(";
  for (size_t i = 0; i < mechs.size(); ++i) {
    if (i > 0) name += ",";
    name += mechs[i].name;
  }
  name += ")";
  return Mechanism{
      name, [mechs = std::move(mechs)](const Dataset& s, RngStream& stream) {
        OutputTuple parts;
        parts.reserve(mechs.size());
        for (size_t i = 0; i < mechs.size(); ++i) {
          RngStream sub = stream.child(uint64_t(i));
          parts.push_back(mechs[i].apply(s, sub));
        }
        return Output::tuple(std::move(parts));
      }};
}

}  // namespace narcissus
