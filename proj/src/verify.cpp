#include "ompred/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "ompred/adversaries.hpp"
#include "ompred/decompose.hpp"
#include "ompred/error.hpp"
#include "ompred/linalg.hpp"
#include "ompred/mmw.hpp"
#include "ompred/problems.hpp"
#include "ompred/reduction.hpp"
#include "ompred/rng.hpp"
#include "ompred/search.hpp"

namespace ompred {

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

std::string sci(const char* label, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s %.3e", label, v);
  return buf;
}

Matrix random_matrix(SplitMix64& rng, int rows, int cols, double scale = 1.0) {
  Matrix w(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) w(i, j) = rng.uniform(-scale, scale);
  return w;
}

SymMatrix random_sym(SplitMix64& rng, int d, double scale = 1.0) {
  SymMatrix s(d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) s.set(i, j, rng.uniform(-scale, scale));
  return s;
}

SuiteReport linalg_suite() {
  SuiteReport r{"linalg", {}};
  SplitMix64 rng(11);

  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + static_cast<int>(rng.below(32));
    const SymMatrix m = random_sym(rng, d, 3.0);
    const EigenDecomp e = eig_sym(m);
    const SymMatrix back = matrix_fn(e, [](double l) { return l; });
    worst = std::max(worst, max_abs(back - m) / (1.0 + max_abs(m)));
  }
  r.checks.push_back({"eigen reconstruction", worst <= 1e-8, sci("max scaled residual", worst)});

  worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int rows = 1 + static_cast<int>(rng.below(6));
    const int cols = 1 + static_cast<int>(rng.below(6));
    const Matrix w = random_matrix(rng, rows, cols);
    const Matrix wtw = multiply(w.transpose(), w);
    std::vector<double> sv;
    for (double l : eig_sym(SymMatrix(wtw)).values) sv.push_back(std::sqrt(std::max(0.0, l)));
    const std::vector<double> spec = eig_sym(symmetrize(w, Embedding::Block)).values;
    std::vector<double> mags;
    for (double l : spec) mags.push_back(std::fabs(l));
    std::sort(mags.rbegin(), mags.rend());
    std::sort(sv.rbegin(), sv.rend());
    // The block spectrum is {+-sigma_k} plus |rows - cols| zeros.
    const std::size_t r_min = static_cast<std::size_t>(std::min(rows, cols));
    for (std::size_t k = 0; k < r_min; ++k) {
      worst = std::max(worst, std::fabs(mags[2 * k] - sv[k]));
      worst = std::max(worst, std::fabs(mags[2 * k + 1] - sv[k]));
    }
    for (std::size_t k = 2 * r_min; k < mags.size(); ++k) worst = std::max(worst, mags[k]);
  }
  r.checks.push_back({"block spectrum is +-singular values", worst <= 1e-7, sci("max deviation", worst)});

  double lowest = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + static_cast<int>(rng.below(8));
    const SymMatrix x = matrix_exp(random_sym(rng, d, 2.0));
    const SymMatrix a = matrix_exp(random_sym(rng, d, 2.0));
    lowest = std::min(lowest, qre(x, a));
  }
  r.checks.push_back({"relative entropy non-negative", lowest >= -1e-9, sci("min value", lowest)});

  worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 2 + static_cast<int>(rng.below(6));
    std::vector<double> diag(static_cast<std::size_t>(d));
    double total = 0.0;
    for (double& v : diag) total += (v = rng.uniform(-2.0, 2.0));
    diag.back() -= total;
    const SymMatrix e = matrix_exp(SymMatrix::diagonal(diag));
    double det = 1.0;
    for (int i = 0; i < d; ++i) det *= e(i, i);
    worst = std::max(worst, std::fabs(det - 1.0));
  }
  r.checks.push_back({"exp of traceless diagonal has unit determinant", worst <= 1e-8, sci("max error", worst)});
  return r;
}

CheckResult all_pass(const std::string& name, int total, int failed, double worst_residual) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%d/%d passed, max residual %.3e", total - failed, total, worst_residual);
  return {name, failed == 0, buf};
}

SuiteReport decompositions_suite() {
  SuiteReport r{"decompositions", {}};
  SplitMix64 rng(23);

  int total = 0, failed = 0;
  double worst = 0.0;
  auto tally = [&](const ValidationReport& v) {
    ++total;
    if (!v.passed) ++failed;
    worst = std::max(worst, v.reconstruction);
  };

  for (int n : {2, 4, 8, 16, 32}) {
    for (int k = 0; k < 20; ++k) {
      const std::uint64_t mask = rng.next() & ((std::uint64_t{1} << n) - 1);
      const CutSet c(n, mask);
      tally(validate(decompose_cut(c), cut_matrix(c).to_matrix()));
    }
  }
  r.checks.push_back(all_pass("cut decompositions", total, failed, worst));

  total = failed = 0;
  worst = 0.0;
  double tightness = 0.0;
  for (int k = 0; k < 20; ++k) {
    const Matrix w = random_matrix(rng, 4, 6);
    const Decomposition d = decompose_trace_norm(w);
    tally(validate(d, w));
    tightness = std::max(tightness, std::fabs(d.tau - 2.0 * trace_norm(w)));
  }
  r.checks.push_back(all_pass("trace-norm decompositions", total, failed, worst));
  r.checks.push_back({"trace-norm split is tight", tightness <= 1e-7, sci("max |tau - 2||W||_*|", tightness)});

  total = failed = 0;
  worst = 0.0;
  for (int k = 0; k <= 5; ++k) tally(validate(decompose_triangular(k), triangular(1 << k)));
  r.checks.push_back(all_pass("triangular decompositions", total, failed, worst));

  total = failed = 0;
  worst = 0.0;
  for (int n = 3; n <= 9; ++n) {
    for (int k = 0; k < 5; ++k) {
      std::vector<int> map(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) map[static_cast<std::size_t>(i)] = i + 1;
      for (int i = n - 1; i > 0; --i) {
        std::swap(map[static_cast<std::size_t>(i)],
                  map[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(i + 1)))]);
      }
      const Permutation pi(map);
      tally(validate(decompose_permutation(pi), perm_matrix(pi)));
    }
  }
  r.checks.push_back(all_pass("permutation decompositions", total, failed, worst));

  bool hadamard_ok = true;
  std::string detail;
  for (int n : {4, 16}) {
    const Matrix h = hadamard(n);
    const Decomposition d = decompose_trace_norm(h, Embedding::Block);
    const double tau = n * std::sqrt(static_cast<double>(n));
    const double floor = 0.25 * tau * std::sqrt(static_cast<double>(n));
    const double ratio = d.beta * d.tau / floor;
    hadamard_ok = hadamard_ok && ratio >= 1.0 && ratio <= 12.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%sn=%d ratio %.4f", detail.empty() ? "" : ", ", n, ratio);
    detail += buf;
  }
  r.checks.push_back({"hadamard beta*tau within [1, 12] of the floor", hadamard_ok, detail});
  return r;
}

SuiteReport projection_suite() {
  SuiteReport r{"projection", {}};
  SplitMix64 rng(37);
  double viol = 0.0, slack = 0.0, box = 0.0;
  for (int p : {2, 4, 8}) {
    for (int k = 0; k < 20; ++k) {
      const bool unit = rng.below(2) == 0;
      const int m = p / 2;
      const int n = p - m;
      const OmpConfig cfg = OmpConfig::make(m, n, false, 1.0 + rng.uniform(0.0, 2.0), 1.0 + rng.uniform(0.0, p),
                                            1.0, 100, unit ? kUnitRange : kSignedRange);
      const ConstraintSet cs = constraints_Kt(1 + static_cast<int>(rng.below(m)),
                                              1 + static_cast<int>(rng.below(n)), cfg);
      SymMatrix y = matrix_exp(random_sym(rng, cfg.N(), 1.5));
      y *= rng.uniform(0.3, 3.0) * cfg.tau / y.trace();
      const ProjectionResult res = project_qre(y, cs);
      viol = std::max(viol, cs.max_violation(res.X));
      for (std::size_t j = 0; j < cs.size(); ++j) {
        slack = std::max(slack, res.duals[j] * std::fabs(cs[j].bound - apply(cs[j], res.X)));
        box = std::max(box, res.duals[j] - cs.dual_upper(j));
        box = std::max(box, -res.duals[j]);
      }
    }
  }
  r.checks.push_back({"projected points feasible", viol <= 1e-6, sci("max violation", viol)});
  r.checks.push_back({"complementary slackness", slack <= 1e-5, sci("max alpha*gap", slack)});
  r.checks.push_back({"duals inside the box", box <= 1e-9, sci("max excess", box)});

  double fd = 0.0;
  for (int k = 0; k < 10; ++k) {
    const OmpConfig cfg = OmpConfig::make(2, 2, false, 2.0, 6.0, 1.0, 100, kSignedRange);
    const ConstraintSet cs = constraints_Kt(1 + static_cast<int>(rng.below(2)), 1 + static_cast<int>(rng.below(2)), cfg);
    const SymMatrix y = matrix_exp(random_sym(rng, cfg.N(), 1.0));
    std::vector<double> a(cs.size());
    for (double& v : a) v = rng.uniform(0.0, 1.0);
    const std::vector<double> g = dual_gradient(y, cs, a);
    for (std::size_t j = 0; j < cs.size(); ++j) {
      const double h = 1e-5;
      std::vector<double> up = a, dn = a;
      up[j] += h;
      dn[j] -= h;
      const double est = (dual_objective(y, cs, up) - dual_objective(y, cs, dn)) / (2 * h);
      fd = std::max(fd, std::fabs(est - g[j]));
    }
  }
  r.checks.push_back({"dual gradient matches finite differences", fd <= 1e-5, sci("max error", fd)});
  return r;
}

SuiteReport oracles_suite() {
  SuiteReport r{"oracles", {}};
  int mismatches = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    SplitMix64 pick(seed);
    const int n = 2 + static_cast<int>(pick.below(7));
    const int T = 1 + static_cast<int>(pick.below(50));
    const Sequence s = random_adversary(Problem::MaxCut, n, n, T, seed);
    const std::vector<std::uint64_t> ties = best_cut_tie_set(s.rounds, n);
    const WeightedCut wc = max_weight_cut(maxcut_weights(s.rounds, n));
    const CutResult best = best_cut_bruteforce(s.rounds, n);
    double total_w = 0.0;
    for (const Round& rd : s.rounds) total_w += rd.fn.param;
    // With W and y in {-1, 1}: loss = T/2 - cut(w) + sum(w)/2.
    const double predicted = 0.5 * T - wc.weight + 0.5 * total_w;
    if (ties != wc.ties || best.cut.mask() != ties.front() || predicted != best.loss) ++mismatches;
  }
  r.checks.push_back({"best cut equals max-weight cut", mismatches == 0,
                      std::to_string(mismatches) + " mismatches in 100 sequences"});

  int disagreements = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Sequence cut = random_adversary(Problem::MaxCut, 12, 12, 200, seed);
    const CutCosts cc = compile_cut_costs(cut.rounds, 12);
    const SearchResult a = search_cuts_serial(cc), b = search_cuts_parallel(cc);
    if (a.index != b.index || a.loss != b.loss) ++disagreements;
    const Sequence perm = random_adversary(Problem::Gambling, 7, 7, 200, seed);
    const PermCosts pc = compile_perm_costs(perm.rounds, 7);
    const SearchResult c = search_perms_serial(pc), d = search_perms_parallel(pc);
    if (c.index != d.index || c.loss != d.loss) ++disagreements;
  }
  r.checks.push_back({"serial and parallel searches agree", disagreements == 0,
                      std::to_string(disagreements) + " disagreements in 40 searches"});

  int inconsistent = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SplitMix64 rng(seed);
    const int n = 3 + static_cast<int>(rng.below(5));
    std::vector<Round> rounds;
    for (int t = 0; t < 60; ++t) {
      const int i = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      int j = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
      if (j >= i) ++j;
      rounds.push_back({i, j, LossFn{LossKind::Absolute, i <= j ? 1.0 : 0.0}});
    }
    const PermutationResult best = best_permutation_bruteforce(rounds, n);
    if (best.loss != 0.0 || !(best.pi == Permutation::identity(n))) ++inconsistent;
  }
  r.checks.push_back({"consistent orders are recovered with zero loss", inconsistent == 0,
                      std::to_string(inconsistent) + " failures in 20 sequences"});
  return r;
}

}  // namespace

std::vector<std::string> verify_suite_names() { return {"linalg", "decompositions", "projection", "oracles"}; }

std::vector<SuiteReport> run_verify(const std::string& suite) {
  const std::vector<std::pair<std::string, std::function<SuiteReport()>>> suites = {
      {"linalg", linalg_suite},
      {"decompositions", decompositions_suite},
      {"projection", projection_suite},
      {"oracles", oracles_suite},
  };
  std::vector<SuiteReport> out;
  for (const auto& [name, fn] : suites)
    if (suite == "all" || suite == name) out.push_back(fn());
  if (out.empty()) throw UsageError("unknown verify suite '" + suite + "'");
  return out;
}

}  // namespace ompred
