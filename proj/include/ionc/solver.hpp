#pragma once

// Enumeration of every DAG over the universe whose latent projection onto
// each input's variable set reproduces that input exactly.

#include <chrono>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ionc/graph.hpp"
#include "ionc/projection.hpp"

namespace ionc {

/// A universe plus the overlapping input graphs defined over it.
class Instance {
 public:
  Instance() = default;
  /// Throws Error when an input is sized for another universe or when the
  /// inputs do not jointly cover every variable.
  Instance(Universe universe, std::vector<InputGraph> inputs);

  const Universe& universe() const { return universe_; }
  const std::vector<InputGraph>& inputs() const { return inputs_; }
  std::size_t size() const { return universe_.size(); }

  /// Non-fatal findings, e.g. a disconnected overlap structure.
  std::vector<std::string> warnings() const;
  bool overlap_connected() const;

 private:
  Universe universe_;
  std::vector<InputGraph> inputs_;
};

struct SolverConfig {
  std::size_t max_solutions = 1'000'000;  // 0 = unlimited
  double timeout_s = 300.0;              // 0 = none
  std::size_t workers = 1;
  bool prune = true;  // false: only acyclicity pruning, everything else checked at leaves
};

enum class SolveStatus { Complete, CappedAtLimit, TimedOut, Unsatisfiable };

std::string_view to_string(SolveStatus s);
SolveStatus parse_status(std::string_view s);

struct SolutionSet {
  std::vector<Dag> solutions;  // canonical order, no duplicates
  SolveStatus status = SolveStatus::Complete;
  double elapsed_s = 0.0;
  std::uint64_t explored = 0;

  /// Sorts canonically and drops duplicates.
  void canonicalize();
  bool contains(const Dag& g) const;
};

enum class PairDomain : std::uint8_t { Free, Forbidden };

/// Domain of every ordered pair, indexed [from * n + to].
std::vector<PairDomain> forced_pair_domains(const Instance& inst);

bool check_candidate(const Instance& inst, const Dag& h);

SolutionSet solve(const Instance& inst, const SolverConfig& cfg = {});

/// Receives one solution's adjacency rows. Calls are never concurrent.
using SolutionVisitor = std::function<void(std::span<const Row>)>;

struct EnumerationSummary {
  SolveStatus status = SolveStatus::Complete;
  std::size_t count = 0;  // solutions passed to the visitor
  double elapsed_s = 0.0;
  std::uint64_t explored = 0;
};

/// Same search as solve, streaming solutions in search order instead of
/// storing them. With one worker the order, and so the prefix kept under a
/// cap, is deterministic.
EnumerationSummary enumerate_solutions(const Instance& inst, const SolverConfig& cfg,
                                       const SolutionVisitor& visit);

}  // namespace ionc
