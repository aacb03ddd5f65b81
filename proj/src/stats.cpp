#include "ionc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace ionc {

namespace {

void check_threshold(double threshold) {
  if (!(threshold > 0.5 && threshold <= 1.0)) {
    throw PreconditionError("agreement threshold must lie in (0.5, 1]");
  }
}

bool shared(std::size_t majority, std::size_t total, double threshold) {
  return static_cast<double>(majority) >= threshold * static_cast<double>(total) - 1e-9;
}

double mean_of(std::span<const RunStats> rows, std::optional<double> RunStats::*field) {
  double sum = 0.0;
  std::size_t k = 0;
  for (const RunStats& r : rows) {
    const auto& v = r.*field;
    if (v && !std::isnan(*v)) {
      sum += *v;
      ++k;
    }
  }
  return k == 0 ? std::numeric_limits<double>::quiet_NaN() : sum / static_cast<double>(k);
}

}  // namespace

AdjacencyTally::AdjacencyTally(std::size_t n) : n_(n), counts_(n * (n - 1) / 2, 0) {}

void AdjacencyTally::add(std::span<const Row> adj) {
  if (adj.size() != n_) throw PreconditionError("solution size mismatch");
  std::size_t i = 0;
  for (NodeId x = 0; x < n_; ++x) {
    for (NodeId y = x + 1; y < n_; ++y, ++i) {
      counts_[i] += (((adj[x] >> y) | (adj[y] >> x)) & 1U);
    }
  }
  ++total_;
}

double AdjacencyTally::prop_same(double threshold) const {
  check_threshold(threshold);
  if (total_ == 0) throw PreconditionError("statistics need a non-empty solution set");
  if (counts_.empty()) return 1.0;
  std::size_t kept = 0;
  for (std::size_t c : counts_) kept += shared(std::max(c, total_ - c), total_, threshold) ? 1 : 0;
  return static_cast<double>(kept) / static_cast<double>(counts_.size());
}

double AdjacencyTally::prop_accurate(const Dag& ground_truth, double threshold) const {
  check_threshold(threshold);
  if (total_ == 0) throw PreconditionError("statistics need a non-empty solution set");
  if (ground_truth.size() != n_) throw PreconditionError("ground truth size mismatch");
  std::size_t kept = 0;
  std::size_t accurate = 0;
  std::size_t i = 0;
  for (NodeId x = 0; x < n_; ++x) {
    for (NodeId y = x + 1; y < n_; ++y, ++i) {
      const std::size_t c = counts_[i];
      if (!shared(std::max(c, total_ - c), total_, threshold)) continue;
      ++kept;
      const bool majority_adjacent = 2 * c > total_;
      accurate += majority_adjacent == ground_truth.adjacent(x, y) ? 1 : 0;
    }
  }
  if (kept == 0) return std::numeric_limits<double>::quiet_NaN();
  return static_cast<double>(accurate) / static_cast<double>(kept);
}

namespace {

AdjacencyTally tally_of(std::span<const Dag> solutions) {
  if (solutions.empty()) throw PreconditionError("statistics need a non-empty solution set");
  AdjacencyTally tally(solutions.front().size());
  for (const Dag& g : solutions) tally.add(g.rows());
  return tally;
}

}  // namespace

double prop_same(std::span<const Dag> solutions, double threshold) {
  check_threshold(threshold);
  return tally_of(solutions).prop_same(threshold);
}

double prop_accurate(std::span<const Dag> solutions, const Dag& ground_truth, double threshold) {
  check_threshold(threshold);
  return tally_of(solutions).prop_accurate(ground_truth, threshold);
}

std::vector<EdgeFrequency> edge_frequencies(std::span<const Dag> solutions) {
  if (solutions.empty()) throw PreconditionError("edge frequencies need a non-empty solution set");
  const std::size_t n = solutions.front().size();
  std::vector<EdgeFrequency> out;
  for (NodeId x = 0; x < n; ++x) {
    for (NodeId y = 0; y < n; ++y) {
      if (x == y) continue;
      std::size_t c = 0;
      for (const Dag& g : solutions) c += g.has_edge(x, y) ? 1 : 0;
      out.push_back({{x, y}, static_cast<double>(c) / static_cast<double>(solutions.size())});
    }
  }
  return out;
}

void fill_statistics(RunStats& row, const AdjacencyTally& tally, const Dag& ground_truth) {
  row.s75 = tally.prop_same(0.75);
  row.s90 = tally.prop_same(0.90);
  row.s100 = tally.prop_same(1.00);
  row.a75 = tally.prop_accurate(ground_truth, 0.75);
  row.a90 = tally.prop_accurate(ground_truth, 0.90);
  row.a100 = tally.prop_accurate(ground_truth, 1.00);
}

void fill_statistics(RunStats& row, std::span<const Dag> solutions, const Dag& ground_truth) {
  fill_statistics(row, tally_of(solutions), ground_truth);
}

double median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

SummaryRow aggregate(std::span<const RunStats> rows, const SimParams& params) {
  SummaryRow out;
  out.params = params;
  out.reps = rows.size();
  std::vector<RunStats> done;
  for (const RunStats& r : rows) {
    if (r.error.empty() && r.status == SolveStatus::Complete) done.push_back(r);
  }
  out.completed = done.size();
  // Reported only when at least 95 of every 100 reps completed.
  out.suppressed = rows.empty() || 100 * out.completed < 95 * out.reps;

  std::vector<double> runtimes, sizes;
  for (const RunStats& r : done) {
    runtimes.push_back(r.runtime_s);
    sizes.push_back(static_cast<double>(r.n_solutions));
  }
  out.median_runtime_s = median(runtimes);
  out.median_solutions = median(sizes);
  out.s75 = mean_of(done, &RunStats::s75);
  out.a75 = mean_of(done, &RunStats::a75);
  out.s90 = mean_of(done, &RunStats::s90);
  out.a90 = mean_of(done, &RunStats::a90);
  out.s100 = mean_of(done, &RunStats::s100);
  return out;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

namespace {

std::string fraction(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string optional_fraction(const std::optional<double>& v) { return v ? fraction(*v) : ""; }

void write_params(std::ostream& out, const SimParams& p) {
  out << p.n_nodes << ',' << format_number(p.p_degree) << ',' << format_number(p.p_overlap) << ','
      << p.s << ',';
}

}  // namespace

void write_csv_header(std::ostream& out, const CsvOptions& opt) {
  out << "n_nodes,p_degree,p_overlap,s,rep,status,runtime_s,n_solutions,s75,a75,s90,a90,s100";
  if (opt.membership) out << ",gt_in_solutions";
  out << '\n';
}

void write_csv_row(std::ostream& out, const RunStats& row, const CsvOptions& opt,
                   std::optional<bool> gt_member) {
  write_params(out, row.params);
  out << row.rep << ',' << (row.error.empty() ? to_string(row.status) : "error") << ',';
  if (opt.timing) out << fraction(row.runtime_s);
  out << ',' << row.n_solutions << ',' << optional_fraction(row.s75) << ','
      << optional_fraction(row.a75) << ',' << optional_fraction(row.s90) << ','
      << optional_fraction(row.a90) << ',' << optional_fraction(row.s100);
  if (opt.membership) out << ',' << (gt_member ? (*gt_member ? "true" : "false") : "");
  out << '\n';
}

void write_csv_summary(std::ostream& out, const SummaryRow& row, const CsvOptions& opt) {
  write_params(out, row.params);
  out << "summary," << (row.suppressed ? "suppressed" : "reported") << ',';
  auto stat = [&](double v) { return row.suppressed ? std::string("*") : fraction(v); };
  if (opt.timing) out << (row.suppressed ? "*" : fraction(row.median_runtime_s));
  out << ',' << (row.suppressed ? "*" : format_number(row.median_solutions)) << ','
      << stat(row.s75) << ',' << stat(row.a75) << ',' << stat(row.s90) << ',' << stat(row.a90)
      << ',' << stat(row.s100);
  if (opt.membership) out << ',';
  out << '\n';
}

}  // namespace ionc
