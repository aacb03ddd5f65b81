// ionc: command-line front end for the overlapping-networks solver.
//
// Exit codes:
//   0  success (solution set complete)
//   1  internal error
//   2  invalid input (usage, unreadable or malformed file)
//   3  unsatisfiable instance
//   4  search timed out (partial solution set written)
//   5  solution cap reached (partial solution set written)
//   6  oracle refused the instance size

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include <unistd.h>

#include <CLI11.hpp>

#include "ionc/asp.hpp"
#include "ionc/io.hpp"
#include "ionc/oracle.hpp"
#include "ionc/simulate.hpp"
#include "ionc/solver.hpp"
#include "ionc/stats.hpp"
#include "ionc/synth.hpp"

namespace {

using namespace ionc;

enum Exit : int {
  kOk = 0,
  kInternal = 1,
  kInput = 2,
  kUnsat = 3,
  kTimedOut = 4,
  kCapped = 5,
  kRefused = 6,
};

int exit_for(SolveStatus s) {
  switch (s) {
    case SolveStatus::Complete: return kOk;
    case SolveStatus::Unsatisfiable: return kUnsat;
    case SolveStatus::TimedOut: return kTimedOut;
    case SolveStatus::CappedAtLimit: return kCapped;
  }
  return kInternal;
}

Instance load_instance(const std::string& path) {
  Instance inst = parse_instance(read_text_file(path));
  for (const auto& w : inst.warnings()) std::cerr << "warning: " << w << '\n';
  return inst;
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    write_text_file(out_path, text);
  }
}

int finish_solutions(const Universe& u, const SolutionSet& set, const std::string& out) {
  emit(out, format_solutions(u, set));
  std::cerr << to_string(set.status) << ": " << set.solutions.size() << " graph(s) in "
            << std::fixed << std::setprecision(3) << set.elapsed_s << " s\n";
  return exit_for(set.status);
}

struct SolveOpts {
  std::string instance;
  std::string out;
  std::size_t cap = SolverConfig{}.max_solutions;
  double timeout = SolverConfig{}.timeout_s;
  std::size_t workers = 1;
};

int cmd_solve(const SolveOpts& o) {
  const Instance inst = load_instance(o.instance);
  SolverConfig cfg;
  cfg.max_solutions = o.cap;
  cfg.timeout_s = o.timeout;
  cfg.workers = o.workers;
  return finish_solutions(inst.universe(), solve(inst, cfg), o.out);
}

int cmd_oracle(const std::string& path, std::size_t max_nodes, const std::string& out) {
  const Instance inst = load_instance(path);
  return finish_solutions(inst.universe(), brute_force_solve(inst, OracleLimit{max_nodes}), out);
}

int cmd_emit_asp(const std::string& path, bool strict) {
  const Instance inst = load_instance(path);
  std::cout << emit_program(inst, strict ? EmitMode::StrictListing : EmitMode::Augmented);
  return kOk;
}

int cmd_asp_solve(const std::string& path, const std::string& solver, bool strict,
                  const std::string& out) {
  const Instance inst = load_instance(path);
  const auto program = std::filesystem::temp_directory_path() /
                       ("ionc-" + std::to_string(::getpid()) + ".lp");
  write_text_file(program, emit_program(inst, strict ? EmitMode::StrictListing : EmitMode::Augmented));
  const std::string command = solver + " --models 0 '" + program.string() + "' 2>/dev/null";
  std::string text;
  {
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(::popen(command.c_str(), "r"), ::pclose);
    if (!pipe) throw Error("cannot run '" + solver + "'");
    char buf[4096];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof buf, pipe.get())) > 0) text.append(buf, got);
  }
  std::filesystem::remove(program);
  return finish_solutions(inst.universe(), parse_answer_sets(text, inst.size()), out);
}

int cmd_parse_answers(const std::string& instance_path, const std::string& answers_path,
                      const std::string& out) {
  const Instance inst = load_instance(instance_path);
  std::string text;
  if (answers_path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    text = read_text_file(answers_path);
  }
  return finish_solutions(inst.universe(), parse_answer_sets(text, inst.size()), out);
}

struct SimOpts {
  SweepSpec spec;
  double timeout = 60.0;
  std::size_t cap = SolverConfig{}.max_solutions;
  std::size_t workers = 1;
  std::string out;
  bool no_timing = false;
  bool membership = false;
};

int cmd_simulate(const SimOpts& o) {
  SolverConfig cfg;
  cfg.timeout_s = o.timeout;
  cfg.max_solutions = o.cap;
  const auto cells = run_sweep(o.spec, cfg, o.workers);
  std::ostringstream csv;
  write_sweep_csv(csv, cells, CsvOptions{!o.no_timing, o.membership});
  emit(o.out, csv.str());
  return kOk;
}

struct GenOpts {
  SimParams params;
  std::size_t rep = 0;
  std::string instance_out;
  std::string truth_out;
};

int cmd_generate(const GenOpts& o) {
  const GeneratedCase c = make_case(o.params, o.rep);
  emit(o.instance_out, format_instance(c.instance));
  if (!o.truth_out.empty()) {
    write_text_file(o.truth_out, format_graph(c.instance.universe(), c.ground_truth));
  }
  return kOk;
}

int cmd_report(const std::string& solutions_path, const std::string& truth_path) {
  const SolutionsDocument doc = parse_solutions(read_text_file(solutions_path));
  const Universe& u = doc.universe;
  const auto& sols = doc.set.solutions;
  std::cout << "status " << to_string(doc.set.status) << '\n';
  std::cout << "solutions " << sols.size() << '\n';
  if (sols.empty()) return exit_for(doc.set.status);

  std::cout << "edge frequencies (from to fraction):\n";
  std::cout << std::fixed << std::setprecision(6);
  for (const EdgeFrequency& f : edge_frequencies(sols)) {
    std::cout << u.name(f.edge.from) << ' ' << u.name(f.edge.to) << ' ' << f.fraction << '\n';
  }

  std::cout << "s75 " << prop_same(sols, 0.75) << '\n';
  std::cout << "s90 " << prop_same(sols, 0.90) << '\n';
  std::cout << "s100 " << prop_same(sols, 1.00) << '\n';
  if (!truth_path.empty()) {
    const GraphDocument truth = parse_graph(read_text_file(truth_path));
    if (!(truth.universe == u)) throw FormatError("ground truth and solutions use different variables");
    std::cout << "a75 " << prop_accurate(sols, truth.graph, 0.75) << '\n';
    std::cout << "a90 " << prop_accurate(sols, truth.graph, 0.90) << '\n';
    std::cout << "a100 " << prop_accurate(sols, truth.graph, 1.00) << '\n';
    std::cout << "truth_in_solutions " << (doc.set.contains(truth.graph) ? "true" : "false") << '\n';
  }
  return exit_for(doc.set.status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Enumerate every DAG consistent with a set of overlapping input graphs"};
  app.require_subcommand(1);

  SolveOpts solve_opts;
  auto* solve_cmd = app.add_subcommand("solve", "Enumerate the solution set of an instance");
  solve_cmd->add_option("instance", solve_opts.instance, "Instance JSON file")->required();
  solve_cmd->add_option("--cap", solve_opts.cap, "Maximum number of solutions (0 = unlimited)");
  solve_cmd->add_option("--timeout", solve_opts.timeout, "Wall-clock limit in seconds (0 = none)");
  solve_cmd->add_option("--workers", solve_opts.workers, "Search threads")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--out", solve_opts.out, "Solutions JSON file (default: stdout)");

  std::string oracle_instance, oracle_out;
  std::size_t oracle_max = OracleLimit{}.max_nodes;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force solution set for small instances");
  oracle_cmd->add_option("instance", oracle_instance, "Instance JSON file")->required();
  oracle_cmd->add_option("--max-nodes", oracle_max, "Largest universe the oracle accepts");
  oracle_cmd->add_option("--out", oracle_out, "Solutions JSON file (default: stdout)");

  std::string emit_instance;
  bool strict = false;
  auto* emit_cmd = app.add_subcommand("emit-asp", "Print the instance as an ASP program");
  emit_cmd->add_option("instance", emit_instance, "Instance JSON file")->required();
  emit_cmd->add_flag("--strict-listing", strict, "Omit the bidirected-enforcement constraints");

  std::string asp_instance, asp_solver = "clingo", asp_out;
  bool asp_strict = false;
  auto* asp_cmd = app.add_subcommand("asp-solve", "Solve through an external ASP system");
  asp_cmd->add_option("instance", asp_instance, "Instance JSON file")->required();
  asp_cmd->add_option("--solver", asp_solver, "ASP system command line");
  asp_cmd->add_flag("--strict-listing", asp_strict, "Omit the bidirected-enforcement constraints");
  asp_cmd->add_option("--out", asp_out, "Solutions JSON file (default: stdout)");

  std::string pa_instance, pa_answers = "-", pa_out;
  auto* pa_cmd = app.add_subcommand("parse-answers", "Convert ASP answer-set output to a solutions file");
  pa_cmd->add_option("instance", pa_instance, "Instance JSON file")->required();
  pa_cmd->add_option("answers", pa_answers, "Answer-set text (default: stdin)");
  pa_cmd->add_option("--out", pa_out, "Solutions JSON file (default: stdout)");

  SimOpts sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Run a synthetic benchmark sweep and write CSV");
  sim_cmd->add_option("--nodes", sim.spec.n_nodes, "Ground-truth node count");
  sim_cmd->add_option("--degree", sim.spec.degrees, "p_degree value(s)");
  sim_cmd->add_option("--overlap", sim.spec.overlaps, "p_overlap value(s)");
  sim_cmd->add_option("--subgraphs", sim.spec.subgraphs, "Subgraph count(s)");
  sim_cmd->add_option("--reps", sim.spec.reps, "Replicates per parameterization");
  sim_cmd->add_option("--seed", sim.spec.seed, "Base RNG seed");
  sim_cmd->add_option("--timeout", sim.timeout, "Per-case solver timeout in seconds");
  sim_cmd->add_option("--cap", sim.cap, "Per-case solution cap (0 = unlimited)");
  sim_cmd->add_option("--workers", sim.workers, "Parallel replicates")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--out", sim.out, "CSV file (default: stdout)");
  sim_cmd->add_flag("--no-timing", sim.no_timing, "Leave runtime columns empty");
  sim_cmd->add_flag("--check-membership", sim.membership,
                    "Append a gt_in_solutions column");

  GenOpts gen;
  auto* gen_cmd = app.add_subcommand("generate", "Write one synthetic instance and its ground truth");
  gen_cmd->add_option("--nodes", gen.params.n_nodes, "Ground-truth node count");
  gen_cmd->add_option("--degree", gen.params.p_degree, "p_degree");
  gen_cmd->add_option("--overlap", gen.params.p_overlap, "p_overlap");
  gen_cmd->add_option("--subgraphs", gen.params.s, "Subgraph count");
  gen_cmd->add_option("--seed", gen.params.seed, "Base RNG seed");
  gen_cmd->add_option("--rep", gen.rep, "Replicate index");
  gen_cmd->add_option("--out", gen.instance_out, "Instance JSON file (default: stdout)");
  gen_cmd->add_option("--truth", gen.truth_out, "Ground-truth graph JSON file");

  std::string report_solutions, report_truth;
  auto* report_cmd = app.add_subcommand("report", "Edge frequencies and agreement statistics");
  report_cmd->add_option("solutions", report_solutions, "Solutions JSON file")->required();
  report_cmd->add_option("--truth", report_truth, "Ground-truth graph JSON file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve_opts);
    if (*oracle_cmd) return cmd_oracle(oracle_instance, oracle_max, oracle_out);
    if (*emit_cmd) return cmd_emit_asp(emit_instance, strict);
    if (*asp_cmd) return cmd_asp_solve(asp_instance, asp_solver, asp_strict, asp_out);
    if (*pa_cmd) return cmd_parse_answers(pa_instance, pa_answers, pa_out);
    if (*sim_cmd) return cmd_simulate(sim);
    if (*gen_cmd) return cmd_generate(gen);
    if (*report_cmd) return cmd_report(report_solutions, report_truth);
  } catch (const SizeRefusal& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRefused;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}
