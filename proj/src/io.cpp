#include "ompred/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "ompred/error.hpp"

namespace ompred {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "': " + std::strerror(errno));
  return in;
}

}  // namespace

void write_matrix(std::ostream& out, const Matrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) out << (j ? " " : "") << fmt(m(i, j));
    out << '\n';
  }
}

Matrix read_matrix(std::istream& in) {
  long rows = 0, cols = 0;
  if (!(in >> rows >> cols) || rows < 1 || cols < 1 || rows * cols > 100'000'000L) {
    throw ValidationError("matrix header must be two positive integers");
  }
  std::vector<double> entries(static_cast<std::size_t>(rows * cols));
  for (double& v : entries) {
    if (!(in >> v)) throw ValidationError("matrix body has fewer than m * n numbers");
  }
  std::string extra;
  if (in >> extra) throw ValidationError("trailing content after matrix body");
  try {
    return Matrix(static_cast<int>(rows), static_cast<int>(cols), std::move(entries));
  } catch (const Error& e) {
    throw ValidationError(e.what());
  }
}

Matrix read_matrix_file(const std::string& path) {
  std::ifstream in = open_input(path);
  return read_matrix(in);
}

void write_sequence(std::ostream& out, const Sequence& s) {
  out << "t,i,j,kind,param\n";
  int t = 0;
  for (const Round& r : s.rounds) {
    out << ++t << ',' << r.i << ',' << r.j << ',' << kind_name(r.fn.kind) << ',' << fmt(r.fn.param)
        << '\n';
  }
}

Sequence read_sequence(std::istream& in, Problem problem, int m, int n) {
  Sequence s{problem, m, n, 0, {}};
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("empty sequence file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t,i,j,kind,param") throw ValidationError("sequence header must be t,i,j,kind,param");
  int expected = 1;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string cells[5];
    for (int k = 0; k < 5; ++k) {
      if (!std::getline(row, cells[k], ',')) {
        throw ValidationError("sequence row " + std::to_string(expected) + " has fewer than 5 fields");
      }
    }
    std::string more;
    if (std::getline(row, more)) throw ValidationError("sequence row " + std::to_string(expected) + " has extra fields");
    try {
      std::size_t used = 0;
      const int t = std::stoi(cells[0], &used);
      if (used != cells[0].size() || t != expected) throw ValidationError("round numbers must count 1, 2, ...");
      Round r;
      r.i = std::stoi(cells[1], &used);
      if (used != cells[1].size()) throw ValidationError("bad row index");
      r.j = std::stoi(cells[2], &used);
      if (used != cells[2].size()) throw ValidationError("bad column index");
      r.fn.kind = parse_kind(cells[3]);
      r.fn.param = std::stod(cells[4], &used);
      if (used != cells[4].size() || !std::isfinite(r.fn.param)) throw ValidationError("bad loss parameter");
      s.rounds.push_back(r);
    } catch (const ValidationError&) {
      throw;
    } catch (const std::exception& e) {
      throw ValidationError("sequence row " + std::to_string(expected) + ": " + e.what());
    }
    ++expected;
  }
  validate_sequence(s);
  return s;
}

Sequence read_sequence_file(const std::string& path, Problem problem, int m, int n) {
  std::ifstream in = open_input(path);
  return read_sequence(in, problem, m, n);
}

TraceWriter::TraceWriter(const std::string& path) {
  if (path.empty()) return;
  file_ = std::fopen(path.c_str(), "w");
  if (!file_) throw ValidationError("cannot write '" + path + "': " + std::strerror(errno));
  std::fputs("t,i,j,yhat,g,loss,cumloss\n", file_);
  std::fflush(file_);
}

TraceWriter::~TraceWriter() {
  if (file_) std::fclose(file_);
}

void TraceWriter::write(const LossEvent& e, double cumulative_loss) {
  if (!file_) return;
  char line[256];
  const int len = std::snprintf(line, sizeof line, "%d,%d,%d,%.17g,%.17g,%.17g,%.17g\n", e.t, e.i,
                                e.j, e.yhat, e.g, e.loss, cumulative_loss);
  std::fwrite(line, 1, static_cast<std::size_t>(len), file_);
  std::fflush(file_);
}

}  // namespace ompred
