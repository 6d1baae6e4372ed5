#pragma once

// Plain-text formats. Matrices: a line "m n" then m lines of n decimals.
// Sequences: CSV with header t,i,j,kind,param. Traces: CSV with header
// t,i,j,yhat,g,loss,cumloss, written one complete line at a time.

#include <cstdio>
#include <iosfwd>
#include <string>

#include "ompred/linalg.hpp"
#include "ompred/reduction.hpp"
#include "ompred/sequence.hpp"

namespace ompred {

void write_matrix(std::ostream& out, const Matrix& m);
/// ValidationError on malformed input.
Matrix read_matrix(std::istream& in);
Matrix read_matrix_file(const std::string& path);

void write_sequence(std::ostream& out, const Sequence& s);
/// Rows are taken in file order; `t` must count 1, 2, ... ValidationError on
/// malformed input or indices outside the shape.
Sequence read_sequence(std::istream& in, Problem problem, int m, int n);
Sequence read_sequence_file(const std::string& path, Problem problem, int m, int n);

class TraceWriter {
 public:
  /// Truncates `path` and writes the header; an empty path disables output.
  explicit TraceWriter(const std::string& path);
  ~TraceWriter();
  TraceWriter(const TraceWriter&) = delete;
  TraceWriter& operator=(const TraceWriter&) = delete;

  void write(const LossEvent& e, double cumulative_loss);

 private:
  std::FILE* file_ = nullptr;
};

}  // namespace ompred
