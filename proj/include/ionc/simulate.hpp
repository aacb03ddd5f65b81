#pragma once

// End-to-end benchmark sweeps: generate, project, solve, score.

#include <iosfwd>
#include <vector>

#include "ionc/solver.hpp"
#include "ionc/stats.hpp"
#include "ionc/synth.hpp"

namespace ionc {

struct SweepSpec {
  std::size_t n_nodes = 8;
  std::vector<double> degrees{0.25};
  std::vector<double> overlaps{0.5};
  std::vector<std::size_t> subgraphs{2};
  std::size_t reps = 1;
  std::uint64_t seed = 0;
};

struct CaseResult {
  RunStats stats;
  bool gt_member = false;  // ground truth found among the solutions
};

struct CellResult {
  SimParams params;
  std::vector<CaseResult> runs;  // in rep order
  SummaryRow summary;
};

/// One replicate. The solver config's worker count is honoured; failures are
/// recorded in the returned row rather than thrown.
CaseResult run_case(const SimParams& params, std::size_t rep, const SolverConfig& solver);

/// Cells in degree-major, then overlap, then subgraph order. Replicates are
/// spread over `workers` threads; every replicate is solved single-threaded
/// and results do not depend on scheduling.
std::vector<CellResult> run_sweep(const SweepSpec& spec, const SolverConfig& solver,
                                  std::size_t workers);

void write_sweep_csv(std::ostream& out, const std::vector<CellResult>& cells,
                     const CsvOptions& opt = {});

}  // namespace ionc
