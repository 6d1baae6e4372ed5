#include "ompred/sequence.hpp"

#include <string>

#include "ompred/error.hpp"

namespace ompred {

std::string_view problem_name(Problem p) {
  switch (p) {
    case Problem::MaxCut: return "maxcut";
    case Problem::Gambling: return "gambling";
    case Problem::CollaborativeFiltering: return "cf";
  }
  return "?";
}

Problem parse_problem(std::string_view name) {
  if (name == "maxcut") return Problem::MaxCut;
  if (name == "gambling") return Problem::Gambling;
  if (name == "cf") return Problem::CollaborativeFiltering;
  throw DomainError("unknown problem '" + std::string(name) + "'");
}

void validate_sequence(const Sequence& s) {
  if (s.m < 1 || s.n < 1) throw ValidationError("sequence shape must be positive");
  if (s.problem != Problem::CollaborativeFiltering && s.m != s.n) {
    throw ValidationError("max-cut and gambling sequences need a square shape");
  }
  int t = 0;
  for (const Round& r : s.rounds) {
    ++t;
    if (r.i < 1 || r.i > s.m || r.j < 1 || r.j > s.n) {
      throw ValidationError("round " + std::to_string(t) + ": index (" + std::to_string(r.i) + ", " +
                            std::to_string(r.j) + ") outside the shape");
    }
    if (s.problem != Problem::CollaborativeFiltering && r.i == r.j) {
      throw ValidationError("round " + std::to_string(t) + ": self-pair (" + std::to_string(r.i) +
                            ", " + std::to_string(r.j) + ")");
    }
  }
}

}  // namespace ompred
