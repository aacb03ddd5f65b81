#pragma once

// Brute-force reference: every labelled DAG on a small node count, and the
// solution set obtained by filtering them through check_candidate.

#include <cstdint>
#include <functional>

#include "ionc/graph.hpp"
#include "ionc/solver.hpp"

namespace ionc {

class SizeRefusal : public Error {
 public:
  using Error::Error;
};

struct OracleLimit {
  std::size_t max_nodes = 6;
};

/// Calls `visit` with every labelled DAG on n nodes in ascending adjacency
/// bitstring order. Returning false from `visit` stops the enumeration.
/// Returns the number of DAGs visited.
std::uint64_t enumerate_all_dags(std::size_t n, const std::function<bool(const Dag&)>& visit,
                                 OracleLimit limit = {});

SolutionSet brute_force_solve(const Instance& inst, OracleLimit limit = {});

}  // namespace ionc
