#pragma once

// Core graph types: variable universe, node sets, DAGs and the structural
// queries the rest of the library is built on (acyclicity, restricted
// reachability, d-separation).
//
// Graphs are dense and small. Adjacency is stored as one 64-bit row per node,
// so a universe holds at most kMaxNodes variables.

#include <bit>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace ionc {

inline constexpr std::size_t kMaxNodes = 64;

using NodeId = std::uint32_t;
using Row = std::uint64_t;

inline constexpr Row bit(NodeId v) { return Row{1} << v; }

inline constexpr Row low_mask(std::size_t n) {
  return n >= 64 ? ~Row{0} : (Row{1} << n) - 1;
}

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedGraph : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Ordered table of distinct variable names. Node ids index into it.
class Universe {
 public:
  Universe() = default;
  explicit Universe(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(NodeId v) const { return names_.at(v); }
  const std::vector<std::string>& names() const { return names_; }

  /// Throws Error for unknown names.
  NodeId index_of(const std::string& name) const;
  bool contains(const std::string& name) const { return index_.contains(name); }

  friend bool operator==(const Universe& a, const Universe& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId> index_;
};

/// Set of node ids backed by a single 64-bit mask.
class VarSet {
 public:
  class iterator {
   public:
    using value_type = NodeId;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    explicit iterator(Row rest) : rest_(rest) {}
    NodeId operator*() const { return static_cast<NodeId>(std::countr_zero(rest_)); }
    iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    iterator operator++(int) {
      auto old = *this;
      ++*this;
      return old;
    }
    bool operator==(const iterator&) const = default;

   private:
    Row rest_ = 0;
  };

  constexpr VarSet() = default;
  constexpr explicit VarSet(Row mask) : mask_(mask) {}
  static VarSet of(std::initializer_list<NodeId> members);

  static constexpr VarSet all(std::size_t n) { return VarSet(low_mask(n)); }

  constexpr Row mask() const { return mask_; }
  constexpr bool contains(NodeId v) const { return v < 64 && (mask_ >> v) & 1U; }
  constexpr bool empty() const { return mask_ == 0; }
  std::size_t size() const { return static_cast<std::size_t>(std::popcount(mask_)); }
  void insert(NodeId v) { mask_ |= bit(v); }
  void erase(NodeId v) { mask_ &= ~bit(v); }

  /// Members not in this set, within a universe of size n.
  constexpr VarSet complement(std::size_t n) const { return VarSet(~mask_ & low_mask(n)); }
  std::vector<NodeId> members() const { return {begin(), end()}; }

  iterator begin() const { return iterator(mask_); }
  iterator end() const { return iterator(0); }

  friend constexpr VarSet operator|(VarSet a, VarSet b) { return VarSet(a.mask_ | b.mask_); }
  friend constexpr VarSet operator&(VarSet a, VarSet b) { return VarSet(a.mask_ & b.mask_); }
  friend constexpr VarSet operator-(VarSet a, VarSet b) { return VarSet(a.mask_ & ~b.mask_); }
  friend constexpr bool operator==(VarSet a, VarSet b) = default;

 private:
  Row mask_ = 0;
};

struct Edge {
  NodeId from = 0;
  NodeId to = 0;
  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

/// Directed acyclic graph over nodes 0..n-1. Every mutation keeps the graph
/// acyclic and free of self-loops.
class Dag {
 public:
  Dag() = default;
  explicit Dag(std::size_t n);

  /// Throws MalformedGraph on out-of-range endpoints, self-loops or cycles.
  static Dag from_edges(std::size_t n, std::span<const Edge> edges);
  static Dag from_rows(std::span<const Row> rows);

  std::size_t size() const { return rows_.size(); }
  bool has_edge(NodeId from, NodeId to) const { return (rows_.at(from) >> to) & 1U; }
  bool adjacent(NodeId a, NodeId b) const { return has_edge(a, b) || has_edge(b, a); }
  VarSet children(NodeId v) const { return VarSet(rows_.at(v)); }
  VarSet parents(NodeId v) const;
  std::span<const Row> rows() const { return rows_; }
  std::size_t edge_count() const;
  std::vector<Edge> edges() const;

  void add_edge(NodeId from, NodeId to);
  void remove_edge(NodeId from, NodeId to);

  /// Row-major adjacency bitstring of length n*n ('1' = edge).
  std::string bitstring() const;

  friend bool operator==(const Dag&, const Dag&) = default;

 private:
  std::vector<Row> rows_;
};

/// Canonical order: ascending row-major adjacency bitstring.
bool canonical_less(std::span<const Row> a, std::span<const Row> b);
inline bool canonical_less(const Dag& a, const Dag& b) { return canonical_less(a.rows(), b.rows()); }

/// Low-level queries on raw adjacency rows (row v = children of v).
namespace bits {

bool is_acyclic(std::span<const Row> adj);

/// Nodes reachable from `from` by a directed path of length >= 1 whose
/// intermediate vertices all lie in `allowed`.
Row reach(std::span<const Row> adj, NodeId from, Row allowed);

}  // namespace bits

/// Throws MalformedGraph when an endpoint is outside [0, n).
bool is_acyclic(std::span<const Edge> edges, std::size_t n);

bool reachable_through(const Dag& g, NodeId from, NodeId to, VarSet allowed_intermediates);

VarSet ancestors(const Dag& g, VarSet of);

bool d_separated(const Dag& g, NodeId x, NodeId y, VarSet z);

Dag relabel(const Dag& g, std::span<const NodeId> perm);

}  // namespace ionc
