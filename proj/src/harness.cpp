#include "ompred/harness.hpp"

#include <chrono>
#include <cmath>
#include <exception>

#include "ompred/adversaries.hpp"
#include "ompred/error.hpp"
#include "ompred/io.hpp"

namespace ompred {

void RunConfig::check() const {
  if (T < 1 && adversary != AdversaryKind::File) throw UsageError("T must be at least 1");
  if (eta && !(*eta > 0.0)) throw UsageError("eta must be positive");
  if (adversary == AdversaryKind::File && sequence_file.empty()) {
    throw UsageError("file adversary needs a sequence file");
  }
  switch (problem) {
    case Problem::MaxCut:
      if (n < 2) throw UsageError("max-cut needs n >= 2");
      if (comparator == ComparatorKind::BruteForce && n > 20) {
        throw UsageError("brute-force cut comparator needs n <= 20");
      }
      if (comparator == ComparatorKind::Subgradient) throw UsageError("subgradient comparator is for cf");
      break;
    case Problem::Gambling:
      if (n < 2) throw UsageError("gambling needs n >= 2");
      if (comparator == ComparatorKind::BruteForce && n > 8) {
        throw UsageError("brute-force permutation comparator needs n <= 8");
      }
      if (comparator == ComparatorKind::Subgradient) throw UsageError("subgradient comparator is for cf");
      if (adversary == AdversaryKind::LowerBound) throw UsageError("no lower-bound adversary for gambling");
      break;
    case Problem::CollaborativeFiltering:
      if (m < 1 || n < 1) throw UsageError("cf needs m, n >= 1");
      if (!(tau0 > 0.0)) throw UsageError("cf needs a positive trace bound tau0");
      if (!(G > 0.0)) throw UsageError("G must be positive");
      if (comparator == ComparatorKind::BruteForce) throw UsageError("cf has no brute-force comparator");
      if (cf_iters < 1) throw UsageError("cf iterations must be positive");
      break;
  }
}

OmpConfig config_for(const RunConfig& rc, int T) {
  try {
    switch (rc.problem) {
      case Problem::MaxCut: return maxcut_config(rc.n, T, rc.eta);
      case Problem::Gambling: return gambling_config(rc.n, T, rc.eta);
      case Problem::CollaborativeFiltering: return cf_config(rc.m, rc.n, rc.tau0, rc.G, T, rc.eta);
    }
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  throw UsageError("unknown problem");
}

Sequence sequence_for(const RunConfig& rc) {
  const int m = rc.problem == Problem::CollaborativeFiltering ? rc.m : rc.n;
  try {
    switch (rc.adversary) {
      case AdversaryKind::Random: return random_adversary(rc.problem, m, rc.n, rc.T, rc.seed, rc.G);
      case AdversaryKind::LowerBound:
        if (rc.problem == Problem::MaxCut) return maxcut_lb(rc.n, rc.T, rc.seed);
        if (rc.problem == Problem::CollaborativeFiltering) return cf_lb(rc.m, rc.n, rc.tau0, rc.G, rc.T, rc.seed);
        throw UsageError("no lower-bound adversary for gambling");
      case AdversaryKind::File: return read_sequence_file(rc.sequence_file, rc.problem, m, rc.n);
    }
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  throw UsageError("unknown adversary");
}

OmpSession play(const OmpConfig& cfg, const Sequence& s) {
  OmpSession session = start_session(cfg);
  for (const Round& r : s.rounds) omp_round(session, r.i, r.j, r.fn);
  return session;
}

RunSummary run_experiment(const RunConfig& rc) {
  rc.check();
  const auto start = std::chrono::steady_clock::now();
  const Sequence seq = sequence_for(rc);
  if (seq.rounds.empty()) throw UsageError("sequence has no rounds");
  if (rc.adversary == AdversaryKind::File && rc.T > 0 && rc.T != seq.T()) {
    throw UsageError("T = " + std::to_string(rc.T) + " but the sequence file has " +
                     std::to_string(seq.T()) + " rounds");
  }

  RunSummary sum;
  sum.omp = config_for(rc, seq.T());
  OmpSession session = start_session(sum.omp);
  {
    TraceWriter trace(rc.output);
    for (const Round& r : seq.rounds) {
      const LossEvent& e = omp_round(session, r.i, r.j, r.fn);
      trace.write(e, session.cumulative_loss);
    }
  }
  sum.rounds = seq.T();
  sum.cumulative_loss = session.cumulative_loss;
  sum.eta = sum.omp.eta;
  sum.max_eta_norm = session.max_eta_norm;
  sum.max_violation = session.max_violation;
  sum.max_slackness = session.max_slackness;
  sum.clamps = session.clamps;
  sum.bound = regret_bound(sum.omp);

  switch (rc.comparator) {
    case ComparatorKind::BruteForce:
      sum.comparator_loss = rc.problem == Problem::MaxCut
                                ? best_cut_bruteforce(seq.rounds, rc.n).loss
                                : best_permutation_bruteforce(seq.rounds, rc.n).loss;
      break;
    case ComparatorKind::Subgradient: {
      const CfComparator c = best_cf_subgradient(seq.rounds, rc.m, rc.n, rc.tau0, rc.cf_iters);
      sum.comparator_loss = c.loss;
      sum.comparator_lower_bound = c.lower_bound;
      sum.regret_upper_bound = sum.cumulative_loss - c.lower_bound;
      break;
    }
    case ComparatorKind::None: break;
  }
  if (sum.comparator_loss) sum.regret = sum.cumulative_loss - *sum.comparator_loss;
  if (sum.regret_upper_bound) {
    sum.within_bound = *sum.regret_upper_bound <= sum.bound;
  } else if (sum.regret) {
    sum.within_bound = *sum.regret <= sum.bound;
  }
  sum.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return sum;
}

// ---------------------------------------------------------------------------

namespace {

SeedOutcome run_seed(const LowerBoundConfig& cfg, std::uint64_t seed) {
  SeedOutcome out;
  out.seed = seed;
  if (cfg.problem == Problem::MaxCut) {
    const Sequence s = maxcut_lb(cfg.n, cfg.T, seed);
    out.comparator_loss = best_cut_bruteforce(s.rounds, cfg.n, false).loss;
    out.gain = 0.5 * cfg.T - out.comparator_loss;
    if (cfg.play_learner) out.learner_loss = play(maxcut_config(cfg.n, cfg.T), s).cumulative_loss;
  } else {
    const Sequence s = cf_lb(cfg.m, cfg.n, cfg.tau0, cfg.G, cfg.T, seed);
    out.comparator_loss = comparator_loss(s.rounds, cf_lb_comparator(s));
    out.gain = -out.comparator_loss;
    if (cfg.play_learner) {
      out.learner_loss = play(cf_config(cfg.m, cfg.n, cfg.tau0, cfg.G, cfg.T), s).cumulative_loss;
    }
  }
  out.regret = out.learner_loss - out.comparator_loss;
  return out;
}

void mean_sd(const std::vector<double>& v, double& mean, double& sd) {
  mean = 0.0;
  sd = 0.0;
  if (v.empty()) return;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  if (v.size() < 2) return;
  for (double x : v) sd += (x - mean) * (x - mean);
  sd = std::sqrt(sd / static_cast<double>(v.size() - 1));
}

}  // namespace

LowerBoundReport lowerbound(const LowerBoundConfig& cfg) {
  if (cfg.seeds.empty()) throw UsageError("lowerbound needs at least one seed");
  if (cfg.problem == Problem::Gambling) throw UsageError("no lower-bound adversary for gambling");
  if (cfg.problem == Problem::MaxCut && cfg.n > 20) throw UsageError("max-cut comparator needs n <= 20");
  // Surface parameter errors before going parallel.
  try {
    if (cfg.problem == Problem::MaxCut) {
      maxcut_lb(cfg.n, cfg.T, 0);
      maxcut_config(cfg.n, cfg.T);
    } else {
      cf_lb(cfg.m, cfg.n, cfg.tau0, cfg.G, cfg.T, 0);
      cf_config(cfg.m, cfg.n, cfg.tau0, cfg.G, cfg.T);
    }
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }

  const auto count = static_cast<std::int64_t>(cfg.seeds.size());
  std::vector<SeedOutcome> outcomes(cfg.seeds.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < count; ++k) {
    try {
      outcomes[static_cast<std::size_t>(k)] = run_seed(cfg, cfg.seeds[static_cast<std::size_t>(k)]);
    } catch (...) {
#pragma omp critical(ompred_lb_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  LowerBoundReport r;
  r.seeds = std::move(outcomes);
  std::vector<double> regrets, gains, comps;
  for (const SeedOutcome& o : r.seeds) {
    regrets.push_back(o.regret);
    gains.push_back(o.gain);
    comps.push_back(o.comparator_loss);
  }
  double unused = 0.0;
  mean_sd(regrets, r.mean_regret, r.sd_regret);
  mean_sd(gains, r.mean_gain, r.sd_gain);
  mean_sd(comps, r.mean_comparator, unused);
  if (cfg.problem == Problem::MaxCut) {
    r.lower_bound_value = std::sqrt(cfg.n * static_cast<double>(cfg.T) / 16.0);
  } else {
    r.lower_bound_value = cfg.G * std::sqrt(0.5 * cfg.tau0 * std::sqrt(static_cast<double>(cfg.n)) * cfg.T);
  }
  return r;
}

}  // namespace ompred
