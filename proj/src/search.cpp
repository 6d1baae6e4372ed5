#include "ompred/search.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <utility>


#include "ompred/error.hpp"

namespace ompred {

namespace {

// Strictly better in the (loss, index) order.
bool better(const SearchResult& x, const SearchResult& y) {
  return x.loss < y.loss || (x.loss == y.loss && x.index < y.index);
}

const SearchResult kWorst{std::numeric_limits<std::uint64_t>::max(),
                          std::numeric_limits<double>::infinity()};

void check_round(const Round& r, int n) {
  if (r.i < 1 || r.i > n || r.j < 1 || r.j > n) throw DomainError("round index outside [1, n]");
}

}  // namespace

CutCosts compile_cut_costs(std::span<const Round> rounds, int n) {
  if (n < 1 || n > 62) throw DomainError("cut search size must be in [1, 62]");
  CutCosts c;
  c.n = n;
  std::map<std::pair<int, int>, double> delta;
  for (const Round& r : rounds) {
    check_round(r, n);
    const double same = r.fn.value(-1.0);
    if (r.i == r.j) {
      c.base += same;
      continue;
    }
    c.base += same;
    const int lo = std::min(r.i, r.j) - 1;
    const int hi = std::max(r.i, r.j) - 1;
    delta[{lo, hi}] += r.fn.value(1.0) - same;
  }
  for (const auto& [key, d] : delta) {
    c.a.push_back(key.first);
    c.b.push_back(key.second);
    c.delta.push_back(d);
  }
  return c;
}

double cut_loss(const CutCosts& c, std::uint64_t mask) {
  double s = c.base;
  for (std::size_t k = 0; k < c.delta.size(); ++k)
    if (((mask >> c.a[k]) ^ (mask >> c.b[k])) & 1U) s += c.delta[k];
  return s;
}

SearchResult search_cuts_serial(const CutCosts& c) {
  SearchResult best = kWorst;
  const std::uint64_t count = std::uint64_t{1} << c.n;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    const SearchResult cand{mask, cut_loss(c, mask)};
    if (better(cand, best)) best = cand;
  }
  return best;
}

SearchResult search_cuts_parallel(const CutCosts& c) {
  const std::int64_t count = std::int64_t{1} << c.n;
  SearchResult best = kWorst;
#pragma omp parallel
  {
    SearchResult local = kWorst;
#pragma omp for schedule(static) nowait
    for (std::int64_t mask = 0; mask < count; ++mask) {
      const SearchResult cand{static_cast<std::uint64_t>(mask),
                              cut_loss(c, static_cast<std::uint64_t>(mask))};
      if (better(cand, local)) local = cand;
    }
#pragma omp critical(ompred_cut_reduce)
    if (better(local, best)) best = local;
  }
  return best;
}

std::vector<std::uint64_t> optimal_cuts(const CutCosts& c) {
  const SearchResult best = search_cuts_serial(c);
  std::vector<std::uint64_t> out;
  const std::uint64_t count = std::uint64_t{1} << c.n;
  for (std::uint64_t mask = 0; mask < count; ++mask)
    if (cut_loss(c, mask) == best.loss) out.push_back(mask);
  return out;
}

// ---------------------------------------------------------------------------

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

std::vector<int> permutation_of_rank(int n, std::uint64_t rank) {
  if (n < 1 || n > 20) throw DomainError("permutation size must be in [1, 20]");
  if (rank >= factorial(n)) throw DomainError("permutation rank out of range");
  std::vector<int> pool(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) pool[static_cast<std::size_t>(k)] = k;
  std::vector<int> out;
  out.reserve(pool.size());
  for (int k = n; k >= 1; --k) {
    const std::uint64_t f = factorial(k - 1);
    const auto pick = static_cast<std::size_t>(rank / f);
    rank %= f;
    out.push_back(pool[pick]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return out;
}

PermCosts compile_perm_costs(std::span<const Round> rounds, int n) {
  if (n < 1 || n > 12) throw DomainError("permutation search size must be in [1, 12]");
  PermCosts c;
  c.n = n;
  c.delta.assign(static_cast<std::size_t>(n * n), 0.0);
  for (const Round& r : rounds) {
    check_round(r, n);
    if (r.i == r.j) {
      c.base += r.fn.value(1.0);
      continue;
    }
    const double zero = r.fn.value(0.0);
    c.base += zero;
    c.delta[static_cast<std::size_t>((r.i - 1) * n + (r.j - 1))] += r.fn.value(1.0) - zero;
  }
  return c;
}

double perm_loss(const PermCosts& c, std::span<const int> mapping) {
  double s = c.base;
  const int n = c.n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && mapping[static_cast<std::size_t>(i)] < mapping[static_cast<std::size_t>(j)])
        s += c.delta[static_cast<std::size_t>(i * n + j)];
  return s;
}

namespace {

// Scans ranks [first, last) in lexicographic order.
SearchResult scan_perms(const PermCosts& c, std::uint64_t first, std::uint64_t last) {
  SearchResult best = kWorst;
  if (first >= last) return best;
  std::vector<int> perm = permutation_of_rank(c.n, first);
  for (std::uint64_t rank = first; rank < last; ++rank) {
    const SearchResult cand{rank, perm_loss(c, perm)};
    if (better(cand, best)) best = cand;
    std::next_permutation(perm.begin(), perm.end());
  }
  return best;
}

}  // namespace

SearchResult search_perms_serial(const PermCosts& c) { return scan_perms(c, 0, factorial(c.n)); }

SearchResult search_perms_parallel(const PermCosts& c) {
  const std::uint64_t total = factorial(c.n);
  constexpr std::int64_t kChunks = 256;
  SearchResult best = kWorst;
#pragma omp parallel
  {
    SearchResult local = kWorst;
#pragma omp for schedule(dynamic) nowait
    for (std::int64_t chunk = 0; chunk < kChunks; ++chunk) {
      const std::uint64_t first = total * static_cast<std::uint64_t>(chunk) / kChunks;
      const std::uint64_t last = total * static_cast<std::uint64_t>(chunk + 1) / kChunks;
      const SearchResult r = scan_perms(c, first, last);
      if (better(r, local)) local = r;
    }
#pragma omp critical(ompred_perm_reduce)
    if (better(local, best)) best = local;
  }
  return best;
}

}  // namespace ompred
