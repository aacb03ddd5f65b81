#include "ionc/oracle.hpp"

#include <chrono>

namespace ionc {

namespace {

// Depth-first over bitstring positions, '0' before '1', so DAGs come out in
// ascending lexicographic order.
class DagWalker {
 public:
  DagWalker(std::size_t n, const std::function<bool(const Dag&)>& visit)
      : n_(n), visit_(visit), adj_(n, 0) {}

  bool walk(std::size_t pos) {
    if (pos == n_ * n_) {
      ++count_;
      return visit_(Dag::from_rows(adj_));
    }
    const auto from = static_cast<NodeId>(pos / n_);
    const auto to = static_cast<NodeId>(pos % n_);
    if (!walk(pos + 1)) return false;
    if (from == to || (bits::reach(adj_, to, ~Row{0}) & bit(from))) return true;
    adj_[from] |= bit(to);
    const bool go_on = walk(pos + 1);
    adj_[from] &= ~bit(to);
    return go_on;
  }

  std::uint64_t count_ = 0;

 private:
  std::size_t n_;
  const std::function<bool(const Dag&)>& visit_;
  std::vector<Row> adj_;
};

}  // namespace

std::uint64_t enumerate_all_dags(std::size_t n, const std::function<bool(const Dag&)>& visit,
                                 OracleLimit limit) {
  if (n > limit.max_nodes) {
    throw SizeRefusal("oracle refuses " + std::to_string(n) + " nodes (limit " +
                      std::to_string(limit.max_nodes) + ")");
  }
  DagWalker walker(n, visit);
  walker.walk(0);
  return walker.count_;
}

SolutionSet brute_force_solve(const Instance& inst, OracleLimit limit) {
  const auto start = std::chrono::steady_clock::now();
  SolutionSet out;
  out.explored = enumerate_all_dags(
      inst.size(),
      [&](const Dag& h) {
        if (check_candidate(inst, h)) out.solutions.push_back(h);
        return true;
      },
      limit);
  out.status = out.solutions.empty() ? SolveStatus::Unsatisfiable : SolveStatus::Complete;
  out.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace ionc
