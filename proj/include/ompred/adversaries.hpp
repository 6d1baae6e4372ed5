#pragma once

// Seeded sequence generators. Every sequence is a pure function of its
// parameters and seed (SplitMix64).

#include <cstdint>

#include "ompred/linalg.hpp"
#include "ompred/sequence.hpp"

namespace ompred {

/// n/2 contiguous intervals of length 2T/n; interval i queries (i, i + n/2)
/// with Rademacher labels under the halved absolute loss. Requires n even and
/// T divisible by n/2 (DomainError otherwise).
Sequence maxcut_lb(int n, int T, std::uint64_t seed);

/// tau0 sqrt(n) intervals of length T / (tau0 sqrt(n)), one per entry of the
/// first tau0 / sqrt(n) rows in row-major order; round losses sigma G W(i, j)
/// with Rademacher sigma. Requires both quotients to be integers and
/// tau0 <= m sqrt(n).
Sequence cf_lb(int m, int n, double tau0, double G, int T, std::uint64_t seed);

/// W*(i, j) = -sign(sum of sigma over the entry's rounds), sign(0) = +1;
/// zero on entries that were never queried.
Matrix cf_lb_comparator(const Sequence& s);

/// Uniform entries (distinct endpoints for max-cut and gambling). Max-cut:
/// Rademacher labels, halved absolute loss. Gambling: fair 0/1 labels,
/// absolute loss. CF: linear coefficients uniform on [-G, G].
Sequence random_adversary(Problem problem, int m, int n, int T, std::uint64_t seed, double G = 1.0);

/// Smallest T' >= T satisfying the divisibility rule of maxcut_lb / cf_lb.
int nearest_valid_T(int T, int block);

}  // namespace ompred
