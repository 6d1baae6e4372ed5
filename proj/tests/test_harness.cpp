#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "ompred/adversaries.hpp"
#include "ompred/error.hpp"
#include "ompred/harness.hpp"
#include "ompred/io.hpp"

using namespace ompred;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("ompred_harness_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Run, DeterministicTrace) {
  RunConfig rc;
  rc.n = 5;
  rc.T = 200;
  rc.seed = 21;
  rc.output = temp_path("a.csv");
  const RunSummary a = run_experiment(rc);
  rc.output = temp_path("b.csv");
  const RunSummary b = run_experiment(rc);
  EXPECT_EQ(a.cumulative_loss, b.cumulative_loss);
  const std::string ta = slurp(temp_path("a.csv"));
  EXPECT_EQ(ta, slurp(temp_path("b.csv")));
  EXPECT_EQ(std::count(ta.begin(), ta.end(), '\n'), 201);
  std::filesystem::remove(temp_path("a.csv"));
  std::filesystem::remove(temp_path("b.csv"));
}

TEST(Run, SummaryFields) {
  RunConfig rc;
  rc.n = 6;
  rc.T = 300;
  rc.seed = 3;
  const RunSummary s = run_experiment(rc);
  EXPECT_EQ(s.rounds, 300);
  ASSERT_TRUE(s.comparator_loss.has_value());
  ASSERT_TRUE(s.regret.has_value());
  EXPECT_NEAR(*s.regret, s.cumulative_loss - *s.comparator_loss, 1e-12);
  EXPECT_EQ(s.bound, regret_bound(s.omp));
  EXPECT_EQ(s.within_bound, *s.regret <= s.bound);
  EXPECT_LE(s.max_violation, 1e-6);
  EXPECT_LE(s.max_eta_norm, 1.0);

  const Sequence seq = random_adversary(Problem::MaxCut, 6, 6, 300, 3);
  const OmpSession direct = play(maxcut_config(6, 300), seq);
  EXPECT_EQ(direct.cumulative_loss, s.cumulative_loss);
}

TEST(Run, CfReportsBothBounds) {
  RunConfig rc;
  rc.problem = Problem::CollaborativeFiltering;
  rc.m = 3;
  rc.n = 4;
  rc.T = 200;
  rc.tau0 = 3.0;
  rc.comparator = ComparatorKind::Subgradient;
  rc.cf_iters = 100;
  const RunSummary s = run_experiment(rc);
  ASSERT_TRUE(s.comparator_lower_bound && s.regret_upper_bound && s.regret);
  EXPECT_LE(*s.comparator_lower_bound, *s.comparator_loss);
  EXPECT_GE(*s.regret_upper_bound, *s.regret);
}

TEST(Run, FileAdversary) {
  const std::string path = temp_path("seq.csv");
  const Sequence seq = random_adversary(Problem::Gambling, 4, 4, 60, 8);
  {
    std::ofstream out(path);
    write_sequence(out, seq);
  }
  RunConfig rc;
  rc.problem = Problem::Gambling;
  rc.n = 4;
  rc.T = 0;
  rc.adversary = AdversaryKind::File;
  rc.sequence_file = path;
  const RunSummary s = run_experiment(rc);
  EXPECT_EQ(s.rounds, 60);
  EXPECT_EQ(s.cumulative_loss, play(gambling_config(4, 60), seq).cumulative_loss);
  std::filesystem::remove(path);
}

TEST(Run, UsageErrors) {
  RunConfig rc;
  rc.T = 0;
  EXPECT_THROW(rc.check(), UsageError);
  rc.T = 10;
  rc.eta = 0.0;
  EXPECT_THROW(rc.check(), UsageError);
  rc.eta.reset();
  rc.comparator = ComparatorKind::Subgradient;
  EXPECT_THROW(rc.check(), UsageError);
  rc.comparator = ComparatorKind::BruteForce;
  rc.adversary = AdversaryKind::File;
  EXPECT_THROW(rc.check(), UsageError);

  RunConfig lb;
  lb.n = 8;
  lb.T = 10;
  lb.adversary = AdversaryKind::LowerBound;
  EXPECT_THROW(run_experiment(lb), UsageError);

  RunConfig cf;
  cf.problem = Problem::CollaborativeFiltering;
  cf.m = 2;
  cf.n = 2;
  cf.tau0 = 100.0;
  cf.comparator = ComparatorKind::Subgradient;
  EXPECT_THROW(run_experiment(cf), UsageError);
}

TEST(LowerBound, AggregatesInSeedOrder) {
  LowerBoundConfig cfg;
  cfg.n = 4;
  cfg.T = 64;
  cfg.seeds = {5, 2, 9};
  const LowerBoundReport r = lowerbound(cfg);
  ASSERT_EQ(r.seeds.size(), 3u);
  double mean = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(r.seeds[k].seed, cfg.seeds[k]);
    const Sequence s = maxcut_lb(4, 64, cfg.seeds[k]);
    EXPECT_EQ(r.seeds[k].learner_loss, play(maxcut_config(4, 64), s).cumulative_loss);
    EXPECT_EQ(r.seeds[k].comparator_loss, best_cut_bruteforce(s.rounds, 4).loss);
    EXPECT_EQ(r.seeds[k].gain, 32.0 - r.seeds[k].comparator_loss);
    mean += r.seeds[k].regret / 3.0;
  }
  EXPECT_NEAR(r.mean_regret, mean, 1e-12);
  EXPECT_NEAR(r.lower_bound_value, std::sqrt(4.0 * 64 / 16), 1e-12);
}

TEST(LowerBound, CfWithoutLearner) {
  LowerBoundConfig cfg;
  cfg.problem = Problem::CollaborativeFiltering;
  cfg.m = 4;
  cfg.n = 4;
  cfg.tau0 = 4.0;
  cfg.T = 32;
  cfg.seeds = {1, 2};
  cfg.play_learner = false;
  const LowerBoundReport r = lowerbound(cfg);
  for (const SeedOutcome& o : r.seeds) {
    const Sequence s = cf_lb(4, 4, 4.0, 1.0, 32, o.seed);
    EXPECT_EQ(o.comparator_loss, comparator_loss(s.rounds, cf_lb_comparator(s)));
    EXPECT_EQ(o.gain, -o.comparator_loss);
  }
  EXPECT_NEAR(r.lower_bound_value, std::sqrt(4.0 * 2.0 * 32 / 2.0), 1e-12);
}
