// Command-line front end: run, decompose, lowerbound, verify.
//
// Exit status: 0 success, 1 invariant or validation failure, 2 usage error.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ompred/decompose.hpp"
#include "ompred/error.hpp"
#include "ompred/harness.hpp"
#include "ompred/io.hpp"
#include "ompred/verify.hpp"

using namespace ompred;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

void kv(const char* key, double v) { std::printf("%s: %.10g\n", key, v); }
void kv(const char* key, long v) { std::printf("%s: %ld\n", key, v); }
void kv(const char* key, const std::string& v) { std::printf("%s: %s\n", key, v.c_str()); }

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (cell.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw UsageError(std::string("bad integer '") + cell + "' in " + what);
    }
  }
  return out;
}

// "1-20", "3", or "1,4,9".
std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> out;
  const auto dash = text.find('-');
  if (dash != std::string::npos && text.find(',') == std::string::npos) {
    const std::vector<int> lo = parse_int_list(text.substr(0, dash), "--seeds");
    const std::vector<int> hi = parse_int_list(text.substr(dash + 1), "--seeds");
    if (lo.size() != 1 || hi.size() != 1 || lo[0] < 0 || hi[0] < lo[0]) throw UsageError("bad seed range");
    for (int s = lo[0]; s <= hi[0]; ++s) out.push_back(static_cast<std::uint64_t>(s));
    return out;
  }
  for (int s : parse_int_list(text, "--seeds")) {
    if (s < 0) throw UsageError("seeds must be non-negative");
    out.push_back(static_cast<std::uint64_t>(s));
  }
  if (out.empty()) throw UsageError("no seeds given");
  return out;
}

void print_report(const ValidationReport& v, double beta, double tau) {
  kv("beta", beta);
  kv("tau", tau);
  kv("realized_trace", v.realized_trace);
  kv("max_diagonal", v.max_diag);
  kv("symmetry_violation", v.symmetry_violation);
  kv("min_eig_P", v.min_eig_P);
  kv("min_eig_N", v.min_eig_N);
  kv("diag_excess", v.diag_excess);
  kv("trace_excess", v.trace_excess);
  kv("reconstruction", v.reconstruction);
  kv("valid", std::string(v.passed ? "yes" : "no"));
}

struct DecomposeArgs {
  std::string cls;
  int n = 0;
  int k = -1;
  std::string set;
  std::string perm;
  std::string file;
  bool block = false;
  bool dump = false;
  double tol = 1e-8;
};

int cmd_decompose(const DecomposeArgs& a) {
  Decomposition d;
  Matrix target;
  if (a.cls == "cut") {
    if (a.n < 1 || a.n > 64) throw UsageError("cut needs --n in [1, 64]");
    CutSet c(1, 0);
    try {
      c = CutSet::from_members(a.n, parse_int_list(a.set, "--set"));
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
    d = decompose_cut(c);
    target = cut_matrix(c).to_matrix();
  } else if (a.cls == "triangular") {
    if (a.k < 0 || a.k > 10) throw UsageError("triangular needs --k in [0, 10]");
    d = decompose_triangular(a.k);
    target = triangular(1 << a.k);
  } else if (a.cls == "permutation") {
    std::vector<int> map = a.perm.empty() ? std::vector<int>{} : parse_int_list(a.perm, "--perm");
    if (map.empty()) {
      if (a.n < 1 || a.n > 512) throw UsageError("permutation needs --perm or --n");
      for (int i = 1; i <= a.n; ++i) map.push_back(i);
    }
    std::optional<Permutation> pi;
    try {
      pi.emplace(std::move(map));
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
    d = decompose_permutation(*pi);
    target = perm_matrix(*pi);
  } else if (a.cls == "tracenorm") {
    if (a.file.empty()) throw UsageError("tracenorm needs --file");
    target = read_matrix_file(a.file);
    d = decompose_trace_norm(target, a.block ? Embedding::Block : Embedding::Auto);
    kv("trace_norm", trace_norm(target));
  } else {
    throw UsageError("unknown class '" + a.cls + "'");
  }
  kv("class", a.cls);
  kv("order", static_cast<long>(d.order()));
  const ValidationReport v = validate(d, target, a.tol);
  print_report(v, d.beta, d.tau);
  if (a.dump) {
    std::cout << "P\n";
    write_matrix(std::cout, d.P.to_matrix());
    std::cout << "N\n";
    write_matrix(std::cout, d.N.to_matrix());
  }
  return v.passed ? kOk : kFailure;
}

struct RunArgs {
  RunConfig rc;
  std::string problem = "maxcut";
  std::string adversary = "random";
  std::string comparator;
  double eta = 0.0;
};

int cmd_run(RunArgs& a, bool eta_given, bool T_given) {
  RunConfig& rc = a.rc;
  try {
    rc.problem = parse_problem(a.problem);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  static const std::map<std::string, AdversaryKind> adversaries = {
      {"random", AdversaryKind::Random}, {"lowerbound", AdversaryKind::LowerBound}, {"file", AdversaryKind::File}};
  static const std::map<std::string, ComparatorKind> comparators = {{"bruteforce", ComparatorKind::BruteForce},
                                                                    {"subgradient", ComparatorKind::Subgradient},
                                                                    {"none", ComparatorKind::None}};
  if (!adversaries.count(a.adversary)) throw UsageError("unknown adversary '" + a.adversary + "'");
  rc.adversary = adversaries.at(a.adversary);
  if (!rc.sequence_file.empty() && a.adversary == "random") rc.adversary = AdversaryKind::File;
  std::string comp = a.comparator;
  if (comp.empty()) comp = rc.problem == Problem::CollaborativeFiltering ? "subgradient" : "bruteforce";
  if (!comparators.count(comp)) throw UsageError("unknown comparator '" + comp + "'");
  rc.comparator = comparators.at(comp);
  if (eta_given) rc.eta = a.eta;
  if (rc.adversary == AdversaryKind::File && !T_given) rc.T = 0;

  const RunSummary s = run_experiment(rc);
  kv("problem", std::string(problem_name(rc.problem)));
  kv("rounds", static_cast<long>(s.rounds));
  kv("m", static_cast<long>(s.omp.m));
  kv("n", static_cast<long>(s.omp.n));
  kv("p", static_cast<long>(s.omp.p));
  kv("q", static_cast<long>(s.omp.q));
  kv("beta", s.omp.beta);
  kv("tau", s.omp.tau);
  kv("G", s.omp.G);
  kv("eta", s.eta);
  kv("max_eta_norm", s.max_eta_norm);
  kv("eta_precondition", std::string(s.max_eta_norm <= 1.0 ? "held" : "violated"));
  kv("cumulative_loss", s.cumulative_loss);
  if (s.comparator_loss) kv("comparator_loss", *s.comparator_loss);
  if (s.comparator_lower_bound) kv("comparator_lower_bound", *s.comparator_lower_bound);
  if (s.regret) kv("regret", *s.regret);
  if (s.regret_upper_bound) kv("regret_upper_bound", *s.regret_upper_bound);
  kv("bound", s.bound);
  kv("within_bound", std::string(s.within_bound ? "yes" : "no"));
  kv("max_constraint_violation", s.max_violation);
  kv("max_slackness", s.max_slackness);
  kv("clamps", static_cast<long>(s.clamps));
  kv("seconds", s.seconds);
  return kOk;
}

struct LowerBoundArgs {
  LowerBoundConfig cfg;
  std::string problem = "maxcut";
  std::string seeds = "1-20";
  bool no_learner = false;
};

int cmd_lowerbound(LowerBoundArgs& a) {
  try {
    a.cfg.problem = parse_problem(a.problem);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  a.cfg.seeds = parse_seeds(a.seeds);
  a.cfg.play_learner = !a.no_learner;
  if (a.cfg.problem == Problem::MaxCut) a.cfg.m = a.cfg.n;
  const LowerBoundReport r = lowerbound(a.cfg);
  std::printf("seed,learner_loss,comparator_loss,regret,gain\n");
  for (const SeedOutcome& o : r.seeds) {
    std::printf("%llu,%.10g,%.10g,%.10g,%.10g\n", static_cast<unsigned long long>(o.seed), o.learner_loss,
                o.comparator_loss, o.regret, o.gain);
  }
  kv("seeds", static_cast<long>(r.seeds.size()));
  if (a.cfg.play_learner) {
    kv("mean_regret", r.mean_regret);
    kv("sd_regret", r.sd_regret);
  }
  kv("mean_comparator_loss", r.mean_comparator);
  kv("mean_gain", r.mean_gain);
  kv("sd_gain", r.sd_gain);
  kv("lower_bound_value", r.lower_bound_value);
  return kOk;
}

int cmd_verify(const std::string& suite) {
  bool ok = true;
  for (const SuiteReport& s : run_verify(suite)) {
    for (const CheckResult& c : s.checks) {
      std::printf("[%s] %s/%s: %s\n", c.passed ? "PASS" : "FAIL", s.suite.c_str(), c.name.c_str(),
                  c.detail.c_str());
    }
    ok = ok && s.passed();
  }
  return ok ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online matrix prediction: runs, decompositions, lower bounds, invariant checks"};
  app.require_subcommand(1);

  RunArgs run;
  CLI::App* run_cmd = app.add_subcommand("run", "Play the learner against an adversary");
  run_cmd->set_config("--config", "", "key = value file; flags win on conflict");
  run_cmd->add_option("--problem", run.problem, "maxcut | gambling | cf")->capture_default_str();
  run_cmd->add_option("--m", run.rc.m, "rows (cf)");
  run_cmd->add_option("--n", run.rc.n, "nodes / items / columns")->capture_default_str();
  CLI::Option* T_opt = run_cmd->add_option("-T,--T", run.rc.T, "rounds")->capture_default_str();
  run_cmd->add_option("--seed", run.rc.seed, "PRNG seed")->capture_default_str();
  CLI::Option* eta_opt = run_cmd->add_option("--eta", run.eta, "learning-rate override");
  run_cmd->add_option("--adversary", run.adversary, "random | lowerbound | file")->capture_default_str();
  run_cmd->add_option("--sequence", run.rc.sequence_file, "sequence CSV for the file adversary");
  run_cmd->add_option("--output", run.rc.output, "trace CSV path");
  run_cmd->add_option("--comparator", run.comparator, "bruteforce | subgradient | none");
  run_cmd->add_option("--tau0", run.rc.tau0, "trace bound (cf)");
  run_cmd->add_option("--G", run.rc.G, "Lipschitz bound (cf)")->capture_default_str();
  run_cmd->add_option("--cf-iters", run.rc.cf_iters, "subgradient iterations")->capture_default_str();

  DecomposeArgs dec;
  CLI::App* dec_cmd = app.add_subcommand("decompose", "Build and validate a decomposition");
  dec_cmd->set_config("--config", "", "key = value file; flags win on conflict");
  dec_cmd->add_option("class", dec.cls, "cut | tracenorm | triangular | permutation")->required();
  dec_cmd->add_option("--n", dec.n, "size");
  dec_cmd->add_option("--k", dec.k, "log2 size (triangular)");
  dec_cmd->add_option("--set", dec.set, "cut members, comma separated, 1-based");
  dec_cmd->add_option("--perm", dec.perm, "permutation images, comma separated, 1-based");
  dec_cmd->add_option("--file", dec.file, "matrix file (tracenorm)");
  dec_cmd->add_flag("--block", dec.block, "always use the block embedding");
  dec_cmd->add_flag("--dump", dec.dump, "print P and N");
  dec_cmd->add_option("--tol", dec.tol, "validation tolerance")->capture_default_str();

  LowerBoundArgs lb;
  CLI::App* lb_cmd = app.add_subcommand("lowerbound", "Lower-bound adversary over a seed list");
  lb_cmd->set_config("--config", "", "key = value file; flags win on conflict");
  lb_cmd->add_option("--problem", lb.problem, "maxcut | cf")->capture_default_str();
  lb_cmd->add_option("--m", lb.cfg.m, "rows (cf)");
  lb_cmd->add_option("--n", lb.cfg.n, "nodes / columns")->capture_default_str();
  lb_cmd->add_option("-T,--T", lb.cfg.T, "rounds")->capture_default_str();
  lb_cmd->add_option("--tau0", lb.cfg.tau0, "trace bound (cf)");
  lb_cmd->add_option("--G", lb.cfg.G, "Lipschitz bound (cf)")->capture_default_str();
  lb_cmd->add_option("--seeds", lb.seeds, "range a-b or comma list")->capture_default_str();
  lb_cmd->add_flag("--no-learner", lb.no_learner, "only compute comparators");

  std::string suite = "all";
  CLI::App* ver_cmd = app.add_subcommand("verify", "Run invariant suites");
  ver_cmd->add_option("suite", suite, "linalg | decompositions | projection | oracles | all")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*run_cmd) return cmd_run(run, eta_opt->count() > 0, T_opt->count() > 0);
    if (*dec_cmd) return cmd_decompose(dec);
    if (*lb_cmd) return cmd_lowerbound(lb);
    if (*ver_cmd) return cmd_verify(suite);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kUsage;
  } catch (const InvariantViolation& e) {
    std::fprintf(stderr, "invariant violated: %s\n", e.what());
    return kFailure;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kFailure;
  }
  return kUsage;
}
