#pragma once

// Learner-versus-adversary runs and lower-bound sweeps.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ompred/problems.hpp"
#include "ompred/sequence.hpp"

namespace ompred {

enum class AdversaryKind { Random, LowerBound, File };
enum class ComparatorKind { BruteForce, Subgradient, None };

struct RunConfig {
  Problem problem = Problem::MaxCut;
  int m = 0;  // rows; ignored for max-cut and gambling
  int n = 8;
  int T = 1000;
  std::uint64_t seed = 1;
  std::optional<double> eta;
  AdversaryKind adversary = AdversaryKind::Random;
  std::string sequence_file;
  std::string output;  // trace CSV, empty for none
  ComparatorKind comparator = ComparatorKind::BruteForce;
  double tau0 = 0.0;  // cf trace bound
  double G = 1.0;     // cf Lipschitz bound
  int cf_iters = 400;

  /// UsageError on an inconsistent combination.
  void check() const;
};

struct RunSummary {
  OmpConfig omp;
  int rounds = 0;
  double cumulative_loss = 0.0;
  std::optional<double> comparator_loss;
  std::optional<double> comparator_lower_bound;  // cf only
  std::optional<double> regret;                  // learner minus comparator_loss
  std::optional<double> regret_upper_bound;      // cf only, learner minus the lower bound
  double bound = 0.0;                            // 2 G sqrt(tau beta log(2p) T)
  bool within_bound = true;
  double eta = 0.0;
  double max_eta_norm = 0.0;
  double max_violation = 0.0;
  double max_slackness = 0.0;
  int clamps = 0;
  double seconds = 0.0;
};

OmpConfig config_for(const RunConfig& rc, int T);
Sequence sequence_for(const RunConfig& rc);

/// Plays the learner against the configured adversary and computes the
/// comparator. The regret check uses regret_upper_bound when it exists.
RunSummary run_experiment(const RunConfig& rc);

/// Plays a given sequence; no trace, no comparator.
OmpSession play(const OmpConfig& cfg, const Sequence& s);

struct LowerBoundConfig {
  Problem problem = Problem::MaxCut;
  int m = 0;
  int n = 8;
  int T = 4096;
  double tau0 = 0.0;
  double G = 1.0;
  std::vector<std::uint64_t> seeds;
  bool play_learner = true;
};

struct SeedOutcome {
  std::uint64_t seed = 0;
  double learner_loss = 0.0;
  double comparator_loss = 0.0;
  double regret = 0.0;  // learner minus comparator
  double gain = 0.0;    // expected learner loss minus comparator
};

struct LowerBoundReport {
  std::vector<SeedOutcome> seeds;  // in the order given
  double mean_regret = 0.0;
  double sd_regret = 0.0;
  double mean_gain = 0.0;
  double sd_gain = 0.0;
  double mean_comparator = 0.0;
  double lower_bound_value = 0.0;  // sqrt(nT/16) or G sqrt(tau0 sqrt(n) T / 2)
};

/// Seeds run concurrently; results are aggregated in seed-list order.
LowerBoundReport lowerbound(const LowerBoundConfig& cfg);

}  // namespace ompred
