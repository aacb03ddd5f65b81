#pragma once

// Latent projection of a DAG onto an observed subset of its nodes.
//
// An observed pair is labelled directed when one endpoint reaches the other
// through unobserved intermediates only, bidirected when instead some
// unobserved node reaches both that way, and absent otherwise.

#include <span>
#include <vector>

#include "ionc/graph.hpp"

namespace ionc {

enum class PairLabel : std::uint8_t {
  Absent,
  DirectedForward,   // x -> y
  DirectedBackward,  // y -> x
  Bidirected,
};

/// Label seen from the other endpoint (forward and backward swap).
constexpr PairLabel flipped(PairLabel l) {
  switch (l) {
    case PairLabel::DirectedForward: return PairLabel::DirectedBackward;
    case PairLabel::DirectedBackward: return PairLabel::DirectedForward;
    default: return l;
  }
}

/// Graph over a subset of the universe with exactly one label per unordered
/// pair of members. Pairs start out Absent, so the labelling is always total.
class InputGraph {
 public:
  InputGraph() = default;
  InputGraph(std::size_t universe_size, VarSet vars);

  std::size_t universe_size() const { return n_; }
  VarSet vars() const { return vars_; }

  /// Label of {x, y} oriented from x's point of view.
  PairLabel label(NodeId x, NodeId y) const;
  void set_label(NodeId x, NodeId y, PairLabel l);
  void set_directed(NodeId from, NodeId to) { set_label(from, to, PairLabel::DirectedForward); }
  void set_bidirected(NodeId a, NodeId b) { set_label(a, b, PairLabel::Bidirected); }
  void set_absent(NodeId a, NodeId b) { set_label(a, b, PairLabel::Absent); }

  friend bool operator==(const InputGraph&, const InputGraph&) = default;

 private:
  std::size_t index(NodeId x, NodeId y) const;

  std::size_t n_ = 0;
  VarSet vars_;
  std::vector<PairLabel> labels_;  // keyed by (min, max), oriented min -> max
};

/// Directed and confounding relations of a graph relative to one observed set,
/// as bit rows over the universe:
///   directed[x]   = observed y with a latent-only directed path x ~> y
///   confounded[x] = observed y sharing an unobserved latent-path ancestor with x
struct ProjectionRelations {
  std::vector<Row> directed;
  std::vector<Row> confounded;
};

/// Works on any adjacency (cyclic input is allowed; paths are reachability).
ProjectionRelations projection_relations(std::span<const Row> adj, VarSet observed);
/// Same, reusing the buffers in `out`.
void projection_relations(std::span<const Row> adj, VarSet observed, ProjectionRelations& out);

bool dir_t(const Dag& g, NodeId x, NodeId y, VarSet observed);
bool causal_conn(const Dag& g, NodeId x, NodeId y, VarSet observed);
InputGraph latent_project(const Dag& g, VarSet observed);

InputGraph relabel(const InputGraph& in, std::span<const NodeId> perm);

}  // namespace ionc
