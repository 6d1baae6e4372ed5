#include "ompred/adversaries.hpp"

#include <cmath>
#include <string>

#include "ompred/error.hpp"
#include "ompred/rng.hpp"

namespace ompred {

int nearest_valid_T(int T, int block) {
  if (block < 1) return T;
  const int r = T % block;
  return r == 0 ? T : T + (block - r);
}

Sequence maxcut_lb(int n, int T, std::uint64_t seed) {
  if (n < 2 || n % 2 != 0) throw DomainError("maxcut_lb needs an even n >= 2");
  const int half = n / 2;
  if (T < half || T % half != 0) {
    throw DomainError("maxcut_lb needs T divisible by n/2 = " + std::to_string(half) +
                      "; nearest valid T is " + std::to_string(nearest_valid_T(std::max(T, half), half)));
  }
  const int len = T / half;
  SplitMix64 rng(seed);
  Sequence s{Problem::MaxCut, n, n, seed, {}};
  s.rounds.reserve(static_cast<std::size_t>(T));
  for (int i = 1; i <= half; ++i)
    for (int t = 0; t < len; ++t)
      s.rounds.push_back({i, i + half, LossFn{LossKind::AbsoluteHalved, double(rng.rademacher())}});
  return s;
}

Sequence cf_lb(int m, int n, double tau0, double G, int T, std::uint64_t seed) {
  if (m < 1 || n < 1) throw DomainError("shape must be positive");
  if (!(G > 0.0)) throw DomainError("G must be positive");
  const double root = std::sqrt(static_cast<double>(n));
  if (tau0 > m * root * (1.0 + 1e-12)) throw DomainError("trace bound exceeds m sqrt(n)");
  const double rows_real = tau0 / root;
  const long rows = std::lround(rows_real);
  if (rows < 1 || std::fabs(rows_real - rows) > 1e-9) {
    throw DomainError("cf_lb needs tau0 / sqrt(n) to be a positive integer");
  }
  const long intervals = rows * n;
  if (T < intervals || T % intervals != 0) {
    throw DomainError("cf_lb needs T divisible by tau0 sqrt(n) = " + std::to_string(intervals) +
                      "; nearest valid T is " +
                      std::to_string(nearest_valid_T(std::max<int>(T, static_cast<int>(intervals)),
                                                     static_cast<int>(intervals))));
  }
  const long len = T / intervals;
  SplitMix64 rng(seed);
  Sequence s{Problem::CollaborativeFiltering, m, n, seed, {}};
  s.rounds.reserve(static_cast<std::size_t>(T));
  for (long e = 0; e < intervals; ++e)
    for (long t = 0; t < len; ++t)
      s.rounds.push_back({static_cast<int>(e / n) + 1, static_cast<int>(e % n) + 1,
                          LossFn{LossKind::Linear, rng.rademacher() * G}});
  return s;
}

Matrix cf_lb_comparator(const Sequence& s) {
  Matrix sum(s.m, s.n);
  Matrix seen(s.m, s.n);
  for (const Round& r : s.rounds) {
    sum(r.i - 1, r.j - 1) += r.fn.param;
    seen(r.i - 1, r.j - 1) = 1.0;
  }
  Matrix w(s.m, s.n);
  for (int i = 0; i < s.m; ++i)
    for (int j = 0; j < s.n; ++j)
      if (seen(i, j) != 0.0) w(i, j) = sum(i, j) >= 0.0 ? -1.0 : 1.0;
  return w;
}

Sequence random_adversary(Problem problem, int m, int n, int T, std::uint64_t seed, double G) {
  if (m < 1 || n < 1) throw DomainError("shape must be positive");
  if (T < 0) throw DomainError("T must be non-negative");
  if (problem != Problem::CollaborativeFiltering) {
    if (m != n) throw DomainError("max-cut and gambling need a square shape");
    if (n < 2) throw DomainError("need n >= 2 for distinct endpoints");
  }
  if (problem == Problem::CollaborativeFiltering && !(G > 0.0)) throw DomainError("G must be positive");
  SplitMix64 rng(seed);
  Sequence s{problem, m, n, seed, {}};
  s.rounds.reserve(static_cast<std::size_t>(T));
  for (int t = 0; t < T; ++t) {
    if (problem == Problem::CollaborativeFiltering) {
      const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(m))) + 1;
      const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(n))) + 1;
      s.rounds.push_back({i, j, LossFn{LossKind::Linear, rng.uniform(-G, G)}});
      continue;
    }
    const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n))) + 1;
    int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1))) + 1;
    if (j >= i) ++j;
    if (problem == Problem::MaxCut) {
      s.rounds.push_back({i, j, LossFn{LossKind::AbsoluteHalved, double(rng.rademacher())}});
    } else {
      s.rounds.push_back({i, j, LossFn{LossKind::Absolute, double(rng.below(2))}});
    }
  }
  return s;
}

}  // namespace ompred
