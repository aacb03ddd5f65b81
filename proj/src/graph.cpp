#include "ionc/graph.hpp"

#include <algorithm>
#include <utility>

namespace ionc {

Universe::Universe(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() > kMaxNodes) {
    throw Error("universe has " + std::to_string(names_.size()) + " variables; at most " +
                std::to_string(kMaxNodes) + " are supported");
  }
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw Error("empty variable name at position " + std::to_string(i));
    if (!index_.emplace(names_[i], static_cast<NodeId>(i)).second) {
      throw Error("duplicate variable name '" + names_[i] + "'");
    }
  }
}

NodeId Universe::index_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw Error("unknown variable '" + name + "'");
  return it->second;
}

VarSet VarSet::of(std::initializer_list<NodeId> members) {
  VarSet s;
  for (NodeId v : members) {
    if (v >= kMaxNodes) throw MalformedGraph("node id out of range");
    s.insert(v);
  }
  return s;
}

Dag::Dag(std::size_t n) : rows_(n, 0) {
  if (n > kMaxNodes) throw MalformedGraph("too many nodes");
}

Dag Dag::from_edges(std::size_t n, std::span<const Edge> edges) {
  Dag g(n);
  for (const Edge& e : edges) g.add_edge(e.from, e.to);
  return g;
}

Dag Dag::from_rows(std::span<const Row> rows) {
  Dag g(rows.size());
  const Row valid = low_mask(rows.size());
  for (std::size_t v = 0; v < rows.size(); ++v) {
    if (rows[v] & ~valid) throw MalformedGraph("edge endpoint out of range");
    if (rows[v] & bit(static_cast<NodeId>(v))) throw MalformedGraph("self-loop");
  }
  if (!bits::is_acyclic(rows)) throw MalformedGraph("graph contains a directed cycle");
  g.rows_.assign(rows.begin(), rows.end());
  return g;
}

VarSet Dag::parents(NodeId v) const {
  VarSet out;
  for (NodeId u = 0; u < rows_.size(); ++u) {
    if ((rows_[u] >> v) & 1U) out.insert(u);
  }
  return out;
}

std::size_t Dag::edge_count() const {
  std::size_t total = 0;
  for (Row r : rows_) total += static_cast<std::size_t>(std::popcount(r));
  return total;
}

std::vector<Edge> Dag::edges() const {
  std::vector<Edge> out;
  for (NodeId u = 0; u < rows_.size(); ++u) {
    for (NodeId v : VarSet(rows_[u])) out.push_back({u, v});
  }
  return out;
}

void Dag::add_edge(NodeId from, NodeId to) {
  if (from >= size() || to >= size()) throw MalformedGraph("edge endpoint out of range");
  if (from == to) throw MalformedGraph("self-loop");
  if (has_edge(from, to)) return;
  if (bits::reach(rows_, to, ~Row{0}) & bit(from)) {
    throw MalformedGraph("edge would close a directed cycle");
  }
  rows_[from] |= bit(to);
}

void Dag::remove_edge(NodeId from, NodeId to) {
  if (from >= size() || to >= size()) throw MalformedGraph("edge endpoint out of range");
  rows_[from] &= ~bit(to);
}

std::string Dag::bitstring() const {
  std::string s(size() * size(), '0');
  for (std::size_t u = 0; u < size(); ++u) {
    for (NodeId v : VarSet(rows_[u])) s[u * size() + v] = '1';
  }
  return s;
}

bool canonical_less(std::span<const Row> a, std::span<const Row> b) {
  // Column 0 is the first character of a row, so the lowest differing bit
  // decides.
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const Row diff = a[i] ^ b[i];
    if (diff != 0) return (a[i] & (diff & (~diff + 1))) == 0;
  }
  return a.size() < b.size();
}

namespace bits {

bool is_acyclic(std::span<const Row> adj) {
  const std::size_t n = adj.size();
  std::vector<Row> parents(n, 0);
  for (std::size_t u = 0; u < n; ++u) {
    for (NodeId v : VarSet(adj[u])) {
      if (v >= n) return false;
      parents[v] |= bit(static_cast<NodeId>(u));
    }
  }
  // Kahn: peel off sources until nothing is left or no source exists.
  Row remaining = low_mask(n);
  while (remaining != 0) {
    Row sources = 0;
    for (NodeId v : VarSet(remaining)) {
      if ((parents[v] & remaining) == 0) sources |= bit(v);
    }
    if (sources == 0) return false;
    remaining &= ~sources;
  }
  return true;
}

Row reach(std::span<const Row> adj, NodeId from, Row allowed) {
  Row reached = adj[from];
  Row frontier = reached & allowed;
  Row expanded = 0;
  while (frontier != 0) {
    const auto v = static_cast<NodeId>(std::countr_zero(frontier));
    frontier &= frontier - 1;
    expanded |= bit(v);
    const Row fresh = adj[v] & ~reached;
    reached |= fresh;
    frontier |= fresh & allowed & ~expanded;
  }
  return reached;
}

}  // namespace bits

bool is_acyclic(std::span<const Edge> edges, std::size_t n) {
  if (n > kMaxNodes) throw MalformedGraph("too many nodes");
  std::vector<Row> adj(n, 0);
  for (const Edge& e : edges) {
    if (e.from >= n || e.to >= n) throw MalformedGraph("edge endpoint out of range");
    if (e.from == e.to) return false;
    adj[e.from] |= bit(e.to);
  }
  return bits::is_acyclic(adj);
}

bool reachable_through(const Dag& g, NodeId from, NodeId to, VarSet allowed_intermediates) {
  if (from >= g.size() || to >= g.size()) throw MalformedGraph("node out of range");
  if (from == to) throw PreconditionError("reachable_through requires distinct endpoints");
  return (bits::reach(g.rows(), from, allowed_intermediates.mask()) >> to) & 1U;
}

VarSet ancestors(const Dag& g, VarSet of) {
  // Includes the members of `of` themselves.
  Row result = of.mask();
  bool grew = true;
  while (grew) {
    grew = false;
    for (NodeId u = 0; u < g.size(); ++u) {
      if (!((result >> u) & 1U) && (g.rows()[u] & result)) {
        result |= bit(u);
        grew = true;
      }
    }
  }
  return VarSet(result);
}

bool d_separated(const Dag& g, NodeId x, NodeId y, VarSet z) {
  const std::size_t n = g.size();
  if (x >= n || y >= n || (z.mask() & ~low_mask(n))) throw MalformedGraph("node out of range");
  if (x == y) throw PreconditionError("d_separated requires x != y");
  if (z.contains(x) || z.contains(y)) {
    throw PreconditionError("d_separated requires x and y outside the conditioning set");
  }

  // Reachability with direction state: "up" means the trail entered the node
  // from one of its children, "down" from one of its parents.
  const VarSet anc = ancestors(g, z);
  std::vector<Row> parents(n, 0);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : g.children(u)) parents[v] |= bit(u);
  }
  Row visited_up = 0;
  Row visited_down = 0;
  std::vector<std::pair<NodeId, bool>> stack{{x, true}};
  while (!stack.empty()) {
    auto [v, up] = stack.back();
    stack.pop_back();
    Row& visited = up ? visited_up : visited_down;
    if (visited & bit(v)) continue;
    visited |= bit(v);
    if (v == y) return false;

    const bool observed = z.contains(v);
    if (up && !observed) {
      for (NodeId p : VarSet(parents[v])) stack.emplace_back(p, true);
      for (NodeId c : g.children(v)) stack.emplace_back(c, false);
    } else if (!up) {
      if (!observed) {
        for (NodeId c : g.children(v)) stack.emplace_back(c, false);
      }
      if (anc.contains(v)) {
        for (NodeId p : VarSet(parents[v])) stack.emplace_back(p, true);
      }
    }
  }
  return true;
}

Dag relabel(const Dag& g, std::span<const NodeId> perm) {
  if (perm.size() != g.size()) throw PreconditionError("permutation size mismatch");
  std::vector<Row> out(g.size(), 0);
  for (NodeId u = 0; u < g.size(); ++u) {
    for (NodeId v : g.children(u)) out[perm[u]] |= bit(perm[v]);
  }
  return Dag::from_rows(out);
}

}  // namespace ionc
