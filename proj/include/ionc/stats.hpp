#pragma once

// Agreement and accuracy statistics over solution sets, per-edge frequency
// tables, and aggregation of benchmark runs into summary rows.

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ionc/graph.hpp"
#include "ionc/solver.hpp"
#include "ionc/synth.hpp"

namespace ionc {

enum class PairStatus { Adjacent, Absent };

/// Running per-pair adjacency counts over a stream of solutions, enough to
/// compute prop_same and prop_accurate without keeping the graphs.
class AdjacencyTally {
 public:
  explicit AdjacencyTally(std::size_t n);
  void add(std::span<const Row> adj);
  std::size_t solutions() const { return total_; }
  double prop_same(double threshold) const;
  double prop_accurate(const Dag& ground_truth, double threshold) const;

 private:
  std::size_t n_;
  std::size_t total_ = 0;
  std::vector<std::size_t> counts_;  // unordered pairs x < y, row-major
};

/// Fraction of unordered pairs whose majority adjacency status is shared by
/// at least `threshold` of the solutions. Throws PreconditionError on an
/// empty set.
double prop_same(std::span<const Dag> solutions, double threshold);

/// Among the pairs counted by prop_same at `threshold`, the fraction whose
/// majority status matches the ground truth. NaN when no pair qualifies.
double prop_accurate(std::span<const Dag> solutions, const Dag& ground_truth, double threshold);

struct EdgeFrequency {
  Edge edge;
  double fraction = 0.0;
};

/// One entry per ordered pair (self-pairs excluded), row-major.
std::vector<EdgeFrequency> edge_frequencies(std::span<const Dag> solutions);

struct RunStats {
  SimParams params;
  std::size_t rep = 0;
  SolveStatus status = SolveStatus::Complete;
  double runtime_s = 0.0;
  std::size_t n_solutions = 0;
  std::string error;  // set when the run failed before producing a status
  // Populated for complete runs only. a100 is kept in memory but is not a
  // CSV column.
  std::optional<double> s75, a75, s90, a90, s100, a100;
};

/// Fills the agreement statistics of `row` from a complete solution set.
void fill_statistics(RunStats& row, std::span<const Dag> solutions, const Dag& ground_truth);
void fill_statistics(RunStats& row, const AdjacencyTally& tally, const Dag& ground_truth);

struct SummaryRow {
  SimParams params;
  std::size_t reps = 0;
  std::size_t completed = 0;
  bool suppressed = false;
  double median_runtime_s = 0.0;
  double median_solutions = 0.0;
  double s75 = 0.0, a75 = 0.0, s90 = 0.0, a90 = 0.0, s100 = 0.0;
};

/// Medians of runtime and solution count, means of the agreement statistics,
/// all over completed runs. Suppressed when fewer than 95% of reps completed.
SummaryRow aggregate(std::span<const RunStats> rows, const SimParams& params);

double median(std::vector<double> values);

/// CSV output. Columns: n_nodes, p_degree, p_overlap, s, rep, status,
/// runtime_s, n_solutions, s75, a75, s90, a90, s100.
struct CsvOptions {
  bool timing = true;         // false: runtime columns are left empty
  bool membership = false;    // appends gt_in_solutions
};

void write_csv_header(std::ostream& out, const CsvOptions& opt = {});
void write_csv_row(std::ostream& out, const RunStats& row, const CsvOptions& opt = {},
                   std::optional<bool> gt_member = std::nullopt);
void write_csv_summary(std::ostream& out, const SummaryRow& row, const CsvOptions& opt = {});

std::string format_number(double v);

}  // namespace ionc
