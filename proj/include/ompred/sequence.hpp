#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "ompred/loss.hpp"

namespace ompred {

enum class Problem { MaxCut, Gambling, CollaborativeFiltering };

std::string_view problem_name(Problem p);
/// "maxcut", "gambling" or "cf"; DomainError otherwise.
Problem parse_problem(std::string_view name);

/// One adversary move: the queried entry (1-based) and its loss.
struct Round {
  int i = 0;
  int j = 0;
  LossFn fn;

  friend bool operator==(const Round&, const Round&) = default;
};

struct Sequence {
  Problem problem = Problem::MaxCut;
  int m = 0;
  int n = 0;
  std::uint64_t seed = 0;
  std::vector<Round> rounds;

  int T() const { return static_cast<int>(rounds.size()); }

  friend bool operator==(const Sequence&, const Sequence&) = default;
};

/// Indices within the shape; max-cut and gambling reject i == j.
void validate_sequence(const Sequence& s);

}  // namespace ompred
