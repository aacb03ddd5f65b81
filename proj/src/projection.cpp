#include "ionc/projection.hpp"

#include <algorithm>

namespace ionc {

InputGraph::InputGraph(std::size_t universe_size, VarSet vars)
    : n_(universe_size), vars_(vars), labels_(universe_size * universe_size, PairLabel::Absent) {
  if (universe_size > kMaxNodes) throw MalformedGraph("too many nodes");
  if (vars.mask() & ~low_mask(universe_size)) throw MalformedGraph("input variable out of range");
}

std::size_t InputGraph::index(NodeId x, NodeId y) const {
  if (x == y) throw PreconditionError("input graphs have no self-pairs");
  if (!vars_.contains(x) || !vars_.contains(y)) {
    throw PreconditionError("pair is not contained in the input's variable set");
  }
  return std::min(x, y) * n_ + std::max(x, y);
}

PairLabel InputGraph::label(NodeId x, NodeId y) const {
  const PairLabel stored = labels_[index(x, y)];
  return x < y ? stored : flipped(stored);
}

void InputGraph::set_label(NodeId x, NodeId y, PairLabel l) {
  labels_[index(x, y)] = x < y ? l : flipped(l);
}

void projection_relations(std::span<const Row> adj, VarSet observed, ProjectionRelations& out) {
  const std::size_t n = adj.size();
  const Row obs = observed.mask();
  const Row latent = ~obs & low_mask(n);
  out.directed.assign(adj.begin(), adj.end());
  out.confounded.assign(n, 0);
  // Warshall closure admitting only latent nodes as intermediates.
  for (NodeId k : VarSet(latent)) {
    const Row via = out.directed[k];
    for (NodeId v = 0; v < n; ++v) {
      if ((out.directed[v] >> k) & 1U) out.directed[v] |= via;
    }
  }
  for (NodeId v = 0; v < n; ++v) out.directed[v] &= obs;
  for (NodeId z : VarSet(latent)) {
    const Row hit = out.directed[z];
    for (NodeId x : VarSet(hit)) out.confounded[x] |= hit & ~bit(x);
  }
}

ProjectionRelations projection_relations(std::span<const Row> adj, VarSet observed) {
  ProjectionRelations rel;
  projection_relations(adj, observed, rel);
  return rel;
}

namespace {

void require_observed_pair(const Dag& g, NodeId x, NodeId y, VarSet observed) {
  if (x >= g.size() || y >= g.size()) throw MalformedGraph("node out of range");
  if (x == y) throw PreconditionError("pair endpoints must differ");
  if (!observed.contains(y)) throw PreconditionError("target must be observed");
}

}  // namespace

bool dir_t(const Dag& g, NodeId x, NodeId y, VarSet observed) {
  require_observed_pair(g, x, y, observed);
  return reachable_through(g, x, y, observed.complement(g.size()));
}

bool causal_conn(const Dag& g, NodeId x, NodeId y, VarSet observed) {
  require_observed_pair(g, x, y, observed);
  if (!observed.contains(x)) throw PreconditionError("both endpoints must be observed");
  if (dir_t(g, x, y, observed) || dir_t(g, y, x, observed)) return true;
  for (NodeId z : observed.complement(g.size())) {
    if (dir_t(g, z, x, observed) && dir_t(g, z, y, observed)) return true;
  }
  return false;
}

InputGraph latent_project(const Dag& g, VarSet observed) {
  if (observed.empty()) throw PreconditionError("cannot project onto an empty variable set");
  if (observed.mask() & ~low_mask(g.size())) throw MalformedGraph("observed node out of range");
  const auto rel = projection_relations(g.rows(), observed);
  InputGraph out(g.size(), observed);
  for (NodeId x : observed) {
    for (NodeId y : observed) {
      if (y <= x) continue;
      if ((rel.directed[x] >> y) & 1U) {
        out.set_label(x, y, PairLabel::DirectedForward);
      } else if ((rel.directed[y] >> x) & 1U) {
        out.set_label(x, y, PairLabel::DirectedBackward);
      } else if ((rel.confounded[x] >> y) & 1U) {
        out.set_label(x, y, PairLabel::Bidirected);
      }
    }
  }
  return out;
}

InputGraph relabel(const InputGraph& in, std::span<const NodeId> perm) {
  if (perm.size() != in.universe_size()) throw PreconditionError("permutation size mismatch");
  VarSet vars;
  for (NodeId v : in.vars()) vars.insert(perm[v]);
  InputGraph out(in.universe_size(), vars);
  for (NodeId x : in.vars()) {
    for (NodeId y : in.vars()) {
      if (x < y) out.set_label(perm[x], perm[y], in.label(x, y));
    }
  }
  return out;
}

}  // namespace ionc
