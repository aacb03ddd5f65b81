#include "ionc/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <ostream>
#include <thread>

namespace ionc {

CaseResult run_case(const SimParams& params, std::size_t rep, const SolverConfig& solver) {
  CaseResult out;
  out.stats.params = params;
  out.stats.rep = rep;
  try {
    const GeneratedCase c = make_case(params, rep);
    AdjacencyTally tally(params.n_nodes);
    const auto truth = c.ground_truth.rows();
    bool member = false;
    const SolutionVisitor visit = [&](std::span<const Row> adj) {
      tally.add(adj);
      member = member || std::equal(adj.begin(), adj.end(), truth.begin(), truth.end());
    };
    const EnumerationSummary run = enumerate_solutions(c.instance, solver, visit);
    out.stats.status = run.status;
    out.stats.runtime_s = run.elapsed_s;
    out.stats.n_solutions = run.count;
    out.gt_member = member;
    if (run.status == SolveStatus::Complete) fill_statistics(out.stats, tally, c.ground_truth);
  } catch (const std::exception& e) {
    out.stats.error = e.what();
  }
  return out;
}

std::vector<CellResult> run_sweep(const SweepSpec& spec, const SolverConfig& solver,
                                  std::size_t workers) {
  if (workers == 0) throw PreconditionError("sweep needs at least one worker");
  std::vector<CellResult> cells;
  for (double degree : spec.degrees) {
    for (double overlap : spec.overlaps) {
      for (std::size_t s : spec.subgraphs) {
        CellResult cell;
        cell.params = SimParams{spec.n_nodes, degree, overlap, s, spec.seed, spec.reps};
        cell.params.validate();
        cell.runs.resize(spec.reps);
        cells.push_back(std::move(cell));
      }
    }
  }

  SolverConfig per_case = solver;
  per_case.workers = 1;
  const std::size_t jobs = cells.size() * spec.reps;
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t j = next++; j < jobs; j = next++) {
      CellResult& cell = cells[j / spec.reps];
      const std::size_t rep = j % spec.reps;
      cell.runs[rep] = run_case(cell.params, rep, per_case);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> threads;
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(work);
  }

  for (CellResult& cell : cells) {
    std::vector<RunStats> rows;
    for (const CaseResult& r : cell.runs) rows.push_back(r.stats);
    cell.summary = aggregate(rows, cell.params);
  }
  return cells;
}

void write_sweep_csv(std::ostream& out, const std::vector<CellResult>& cells,
                     const CsvOptions& opt) {
  out << "# rng=" << Rng::kAlgorithm;
  if (!cells.empty()) out << " seed=" << cells.front().params.seed;
  out << '\n';
  write_csv_header(out, opt);
  for (const CellResult& cell : cells) {
    for (const CaseResult& r : cell.runs) write_csv_row(out, r.stats, opt, r.gt_member);
    write_csv_summary(out, cell.summary, opt);
  }
}

}  // namespace ionc
