#pragma once

// Exhaustive comparator searches over cuts (2^n) and permutations (n!), each
// in a serial reference form and an OpenMP form. Both reduce with the same
// total order on (loss, candidate index), so they return identical results.

#include <cstdint>
#include <span>
#include <vector>

#include "ompred/sequence.hpp"

namespace ompred {

/// Per unordered pair {i, j}: the summed loss when W(i, j) = -1 and the
/// difference made by W(i, j) = +1 instead.
struct CutCosts {
  int n = 0;
  double base = 0.0;
  std::vector<int> a;  // 0-based endpoints
  std::vector<int> b;
  std::vector<double> delta;
};

CutCosts compile_cut_costs(std::span<const Round> rounds, int n);
double cut_loss(const CutCosts& c, std::uint64_t mask);

/// Per ordered pair (i, j), i != j: the summed loss when pi(i) > pi(j)
/// (W = 0) and the difference when pi(i) < pi(j) (W = 1). Rounds on the
/// diagonal (W = 1 always) go into `base`.
struct PermCosts {
  int n = 0;
  double base = 0.0;
  std::vector<double> delta;  // n x n row-major, 0-based
};

PermCosts compile_perm_costs(std::span<const Round> rounds, int n);
/// mapping is 0-based: mapping[i] = pi(i + 1) - 1.
double perm_loss(const PermCosts& c, std::span<const int> mapping);

struct SearchResult {
  std::uint64_t index = 0;  // bit mask, or lexicographic rank of the mapping
  double loss = 0.0;
};

SearchResult search_cuts_serial(const CutCosts& c);
SearchResult search_cuts_parallel(const CutCosts& c);
SearchResult search_perms_serial(const PermCosts& c);
SearchResult search_perms_parallel(const PermCosts& c);

/// Every mask attaining the minimum loss, ascending.
std::vector<std::uint64_t> optimal_cuts(const CutCosts& c);

/// The permutation of rank `rank` in lexicographic order, 0-based mapping.
std::vector<int> permutation_of_rank(int n, std::uint64_t rank);
std::uint64_t factorial(int n);

}  // namespace ompred
