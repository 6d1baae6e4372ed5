#pragma once

// The three problems bound to the reduction, and offline comparator oracles.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ompred/decompose.hpp"
#include "ompred/reduction.hpp"
#include "ompred/sequence.hpp"

namespace ompred {

/// q = 0, p = n, beta = 1, tau = n, G = 1/2, range [-1, 1].
OmpConfig maxcut_config(int n, int T, std::optional<double> eta = std::nullopt);

/// The learner's shape is padded to n' = 2^k >= n: q = n', p = 2n',
/// beta = k + 1, tau = 4 n' (k + 1), G = 1, range [0, 1]. Sequences on [n]
/// are played unchanged inside the padded shape.
OmpConfig gambling_config(int n, int T, std::optional<double> eta = std::nullopt);

/// q = m, p = m + n, beta = sqrt(m + n), tau = 2 tau0. DomainError when
/// tau0 > m sqrt(n).
OmpConfig cf_config(int m, int n, double tau0, double G, int T,
                    std::optional<double> eta = std::nullopt);

struct CutResult {
  CutSet cut;
  double loss;
};
/// Exact minimiser over all 2^n cuts, ties to the smallest bit mask; n <= 20.
CutResult best_cut_bruteforce(std::span<const Round> rounds, int n, bool parallel = true);
/// All masks attaining the brute-force minimum, ascending; n <= 20.
std::vector<std::uint64_t> best_cut_tie_set(std::span<const Round> rounds, int n);

/// w(i, j) = sum of labels on the unordered pair {i, j}, zero diagonal.
SymMatrix maxcut_weights(std::span<const Round> rounds, int n);

struct WeightedCut {
  double weight;
  std::vector<std::uint64_t> ties;  // all maximising masks, ascending
};
/// Maximum weight cut by enumeration; n <= 20.
WeightedCut max_weight_cut(const SymMatrix& w);

struct PermutationResult {
  Permutation pi;
  double loss;
};
/// Exact minimiser over all n! permutations, ties to the lexicographically
/// smallest mapping; n <= 8.
PermutationResult best_permutation_bruteforce(std::span<const Round> rounds, int n,
                                              bool parallel = true);

struct CfComparator {
  Matrix W;              // feasible: entries in [-1, 1], trace norm <= tau0
  double loss;           // loss of W, an upper bound on the class optimum
  double lower_bound;    // certified lower bound on the class optimum
};
/// Projected subgradient descent over {W in [-1,1]^{m x n}, ||W||_* <= tau0}.
CfComparator best_cf_subgradient(std::span<const Round> rounds, int m, int n, double tau0,
                                 int iters = 400);

/// Sum over rounds of fn(W(i, j)).
double comparator_loss(std::span<const Round> rounds, const Matrix& w);

/// Singular values soft-thresholded so their sum is at most tau0.
Matrix cap_trace_norm(const Matrix& w, double tau0);

struct RegretReport {
  double learner_loss = 0.0;
  double comparator_loss = 0.0;
  double regret = 0.0;
  double bound = 0.0;
  bool within_bound = false;
};
RegretReport evaluate_run(double learner_loss, double comparator_loss, double bound);

}  // namespace ompred
