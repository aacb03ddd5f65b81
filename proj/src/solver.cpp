#include "ionc/solver.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <thread>

namespace ionc {

Instance::Instance(Universe universe, std::vector<InputGraph> inputs)
    : universe_(std::move(universe)), inputs_(std::move(inputs)) {
  if (universe_.size() == 0) throw Error("instance has an empty universe");
  if (inputs_.empty()) throw Error("instance has no input graphs");
  Row covered = 0;
  for (std::size_t t = 0; t < inputs_.size(); ++t) {
    if (inputs_[t].universe_size() != universe_.size()) {
      throw Error("input " + std::to_string(t) + " is defined over a different universe size");
    }
    if (inputs_[t].vars().empty()) throw Error("input " + std::to_string(t) + " has no variables");
    covered |= inputs_[t].vars().mask();
  }
  if (covered != low_mask(universe_.size())) {
    const auto missing = VarSet(low_mask(universe_.size()) & ~covered);
    throw Error("variable '" + universe_.name(*missing.begin()) + "' appears in no input graph");
  }
}

bool Instance::overlap_connected() const {
  std::vector<std::size_t> parent(inputs_.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t a = 0; a < inputs_.size(); ++a) {
    for (std::size_t b = a + 1; b < inputs_.size(); ++b) {
      if (!(inputs_[a].vars() & inputs_[b].vars()).empty()) parent[find(a)] = find(b);
    }
  }
  for (std::size_t i = 1; i < inputs_.size(); ++i) {
    if (find(i) != find(0)) return false;
  }
  return true;
}

std::vector<std::string> Instance::warnings() const {
  std::vector<std::string> out;
  if (!overlap_connected()) {
    out.emplace_back("overlap structure of the input graphs is not connected");
  }
  return out;
}

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Complete: return "complete";
    case SolveStatus::CappedAtLimit: return "capped";
    case SolveStatus::TimedOut: return "timed_out";
    case SolveStatus::Unsatisfiable: return "unsatisfiable";
  }
  return "unknown";
}

SolveStatus parse_status(std::string_view s) {
  for (auto st : {SolveStatus::Complete, SolveStatus::CappedAtLimit, SolveStatus::TimedOut,
                  SolveStatus::Unsatisfiable}) {
    if (to_string(st) == s) return st;
  }
  throw Error("unknown solver status '" + std::string(s) + "'");
}

void SolutionSet::canonicalize() {
  std::sort(solutions.begin(), solutions.end(),
            [](const Dag& a, const Dag& b) { return canonical_less(a, b); });
  solutions.erase(std::unique(solutions.begin(), solutions.end()), solutions.end());
}

bool SolutionSet::contains(const Dag& g) const {
  return std::binary_search(solutions.begin(), solutions.end(), g,
                            [](const Dag& a, const Dag& b) { return canonical_less(a, b); });
}

std::vector<PairDomain> forced_pair_domains(const Instance& inst) {
  const std::size_t n = inst.size();
  std::vector<PairDomain> dom(n * n, PairDomain::Free);
  for (NodeId v = 0; v < n; ++v) dom[v * n + v] = PairDomain::Forbidden;
  for (const InputGraph& t : inst.inputs()) {
    for (NodeId x : t.vars()) {
      for (NodeId y : t.vars()) {
        if (x == y) continue;
        const PairLabel l = t.label(x, y);
        if (l != PairLabel::DirectedForward) dom[x * n + y] = PairDomain::Forbidden;
      }
    }
  }
  return dom;
}

bool check_candidate(const Instance& inst, const Dag& h) {
  if (h.size() != inst.size()) {
    throw PreconditionError("candidate has " + std::to_string(h.size()) + " nodes, instance has " +
                            std::to_string(inst.size()));
  }
  return std::all_of(inst.inputs().begin(), inst.inputs().end(), [&](const InputGraph& t) {
    return latent_project(h, t.vars()) == t;
  });
}

namespace {

// Per-input label masks, symmetric except `forward` and `backward`.
struct LabelMasks {
  VarSet observed;
  Row latent = 0;
  bool any_absent = false;
  bool any_bidirected = false;
  std::vector<Row> absent;
  std::vector<Row> bidirected;
  std::vector<Row> forward;
  std::vector<Row> backward;
};

LabelMasks label_masks(const InputGraph& t) {
  const std::size_t n = t.universe_size();
  LabelMasks m;
  m.observed = t.vars();
  m.absent = m.bidirected = m.forward = m.backward = std::vector<Row>(n, 0);
  for (NodeId x : t.vars()) {
    for (NodeId y : t.vars()) {
      if (x == y) continue;
      switch (t.label(x, y)) {
        case PairLabel::Absent: m.absent[x] |= bit(y); break;
        case PairLabel::Bidirected: m.bidirected[x] |= bit(y); break;
        case PairLabel::DirectedForward: m.forward[x] |= bit(y); break;
        case PairLabel::DirectedBackward: m.backward[x] |= bit(y); break;
      }
    }
    m.any_absent = m.any_absent || m.absent[x] != 0;
    m.any_bidirected = m.any_bidirected || m.bidirected[x] != 0;
  }
  m.latent = low_mask(n) & ~t.vars().mask();
  return m;
}

struct SharedControl {
  std::size_t cap = 0;
  std::chrono::steady_clock::time_point deadline;
  bool has_deadline = false;
  std::atomic<bool> stop{false};
  std::atomic<bool> capped{false};
  std::atomic<bool> timed_out{false};
  std::atomic<std::size_t> found{0};
  const SolutionVisitor* visit = nullptr;
  bool serialize = false;
  std::mutex visit_mutex;
};

struct Node {
  std::size_t depth = 0;
  std::vector<Row> in;  // decided edges
  std::vector<Row> up;  // decided plus undecided edges
};

// Three-valued branch and bound over the free ordered pairs. Absence-type
// constraints are monotone in the edge set, so they are checked against the
// decided edges; existence-type constraints against decided plus undecided.
class Search {
 public:
  Search(const std::vector<Edge>& pairs, const std::vector<LabelMasks>& masks, bool prune,
         SharedControl& ctl)
      : pairs_(pairs), masks_(masks), prune_(prune), ctl_(ctl) {}

  // Same relations as projection_relations, on fixed buffers: reach_ holds
  // the latent-only closure (unmasked), conf_ the confounded rows if asked.
  void relate(const std::vector<Row>& adj, const LabelMasks& m, bool confounded) {
    const std::size_t n = adj.size();
    std::copy(adj.begin(), adj.end(), reach_);
    for (NodeId k : VarSet(m.latent)) {
      const Row via = reach_[k];
      const Row kb = bit(k);
      for (std::size_t v = 0; v < n; ++v) {
        if (reach_[v] & kb) reach_[v] |= via;
      }
    }
    if (!confounded) return;
    const Row obs = m.observed.mask();
    for (NodeId x : m.observed) conf_[x] = 0;
    for (NodeId z : VarSet(m.latent)) {
      const Row hit = reach_[z] & obs;
      for (NodeId x : VarSet(hit)) conf_[x] |= hit & ~bit(x);
    }
  }

  bool lower_ok(const std::vector<Row>& in) {
    if (!prune_) return true;
    for (const LabelMasks& m : masks_) {
      if (!m.any_absent && !m.any_bidirected) continue;
      relate(in, m, m.any_absent);
      for (NodeId x : m.observed) {
        if (reach_[x] & (m.absent[x] | m.bidirected[x])) return false;
        if (m.any_absent && (conf_[x] & m.absent[x])) return false;
      }
    }
    return true;
  }

  bool upper_ok(const std::vector<Row>& up) {
    if (!prune_) return true;
    for (const LabelMasks& m : masks_) {
      relate(up, m, m.any_bidirected);
      for (NodeId x : m.observed) {
        if ((reach_[x] & m.forward[x]) != m.forward[x]) return false;
        if (m.any_bidirected && (conf_[x] & m.bidirected[x]) != m.bidirected[x]) return false;
      }
    }
    return true;
  }

  // Label-for-label projection equality, same as check_candidate.
  bool exact(const std::vector<Row>& in) {
    for (const LabelMasks& m : masks_) {
      relate(in, m, true);
      const Row obs = m.observed.mask();
      for (NodeId x : m.observed) {
        if ((reach_[x] & obs) != m.forward[x]) return false;
        if ((conf_[x] & ~m.forward[x] & ~m.backward[x]) != m.bidirected[x]) return false;
      }
    }
    return true;
  }

  // Drops from `up` every undecided edge that would close a cycle with the
  // decided ones. False when the shrunken bound loses a required relation.
  bool propagate(Node& node) {
    const std::size_t n = node.in.size();
    closure_.assign(node.in.begin(), node.in.end());
    for (NodeId k = 0; k < n; ++k) {
      for (NodeId v = 0; v < n; ++v) {
        if ((closure_[v] >> k) & 1U) closure_[v] |= closure_[k];
      }
    }
    bool changed = false;
    for (NodeId a = 0; a < n; ++a) {
      Row doomed = 0;
      for (NodeId b : VarSet(node.up[a] & ~node.in[a])) {
        if ((closure_[b] >> a) & 1U) doomed |= bit(b);
      }
      if (doomed) {
        node.up[a] &= ~doomed;
        changed = true;
      }
    }
    return !changed || upper_ok(node.up);
  }

  // Turns `node` into its In child for edge `e`; false when that child is pruned.
  bool take_in(Node& node, Edge e) {
    if (!((node.up[e.from] >> e.to) & 1U)) return false;
    if (bits::reach(node.in, e.to, ~Row{0}) & bit(e.from)) return false;
    node.in[e.from] |= bit(e.to);
    return lower_ok(node.in) && (!prune_ || propagate(node));
  }

  // Turns `node` into its Out child for edge `e`; false when that child is pruned.
  bool take_out(Node& node, Edge e) {
    if (!((node.up[e.from] >> e.to) & 1U)) return true;  // already excluded
    node.up[e.from] &= ~bit(e.to);
    return upper_ok(node.up);
  }

  // Children of `node` that survive pruning, Out branch first.
  void expand(const Node& node, std::vector<Node>& out) {
    const Edge e = pairs_[node.depth];
    Node out_child = node;
    out_child.depth += 1;
    Node in_child = out_child;
    if (take_out(out_child, e)) out.push_back(std::move(out_child));
    if (take_in(in_child, e)) out.push_back(std::move(in_child));
  }

  void run(Node& node) {
    if (ctl_.stop.load(std::memory_order_relaxed)) return;
    ++explored_;
    if ((explored_ & 0xFFF) == 0 && ctl_.has_deadline &&
        std::chrono::steady_clock::now() >= ctl_.deadline) {
      ctl_.timed_out = true;
      ctl_.stop = true;
      return;
    }
    if (node.depth == pairs_.size()) {
      leaf(node.in);
      return;
    }
    const Edge e = pairs_[node.depth];
    ++node.depth;
    const std::size_t n = node.in.size();
    Row saved_up[kMaxNodes];
    std::copy_n(node.up.begin(), n, saved_up);

    if (take_out(node, e)) run(node);
    std::copy_n(saved_up, n, node.up.begin());

    const Row saved_in = node.in[e.from];
    if (take_in(node, e)) run(node);
    node.in[e.from] = saved_in;
    std::copy_n(saved_up, n, node.up.begin());
    --node.depth;
  }

  void leaf(const std::vector<Row>& in) {
    if (!exact(in)) return;
    if (ctl_.found.fetch_add(1) >= ctl_.cap && ctl_.cap != 0) {
      ctl_.capped = true;
      ctl_.stop = true;
      return;
    }
    if (ctl_.serialize) {
      std::lock_guard lock(ctl_.visit_mutex);
      (*ctl_.visit)(in);
    } else {
      (*ctl_.visit)(in);
    }
  }

  std::uint64_t explored_ = 0;

 private:
  const std::vector<Edge>& pairs_;
  const std::vector<LabelMasks>& masks_;
  bool prune_;
  SharedControl& ctl_;
  Row reach_[kMaxNodes] = {};
  Row conf_[kMaxNodes] = {};
  std::vector<Row> closure_;
};

}  // namespace

EnumerationSummary enumerate_solutions(const Instance& inst, const SolverConfig& cfg,
                                       const SolutionVisitor& visit) {
  if (cfg.workers == 0) throw PreconditionError("solver needs at least one worker");
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = inst.size();

  const auto domains = forced_pair_domains(inst);
  std::vector<Edge> pairs;
  for (NodeId x = 0; x < n; ++x) {
    for (NodeId y = 0; y < n; ++y) {
      if (domains[x * n + y] == PairDomain::Free) pairs.push_back({x, y});
    }
  }
  std::vector<LabelMasks> masks;
  for (const InputGraph& t : inst.inputs()) masks.push_back(label_masks(t));

  SharedControl ctl;
  ctl.cap = cfg.max_solutions;
  ctl.visit = &visit;
  ctl.serialize = cfg.workers > 1;
  if (cfg.timeout_s > 0) {
    ctl.has_deadline = true;
    ctl.deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                               std::chrono::duration<double>(cfg.timeout_s));
  }

  Node root{0, std::vector<Row>(n, 0), std::vector<Row>(n, 0)};
  for (const Edge& e : pairs) root.up[e.from] |= bit(e.to);

  Search head(pairs, masks, cfg.prune, ctl);
  std::vector<Node> frontier;
  if (head.upper_ok(root.up)) frontier.push_back(std::move(root));

  // Split the tree breadth-first into enough independent subtrees.
  if (cfg.workers > 1) {
    const std::size_t target = 8 * cfg.workers;
    while (!frontier.empty() && frontier.size() < target && frontier.front().depth < pairs.size()) {
      std::vector<Node> next;
      for (Node& node : frontier) {
        ++head.explored_;
        head.expand(node, next);
      }
      frontier = std::move(next);
    }
  }

  std::vector<Search> searches(cfg.workers, head);
  for (Search& s : searches) s.explored_ = 0;
  std::atomic<std::size_t> next_index{0};
  auto work = [&](Search& s) {
    for (std::size_t i = next_index++; i < frontier.size(); i = next_index++) s.run(frontier[i]);
  };
  if (cfg.workers == 1) {
    work(searches[0]);
  } else {
    std::vector<std::jthread> threads;
    for (Search& s : searches) threads.emplace_back(work, std::ref(s));
  }

  EnumerationSummary out;
  out.explored = head.explored_;
  for (const Search& s : searches) out.explored += s.explored_;
  out.count = std::min(ctl.found.load(), cfg.max_solutions == 0 ? ctl.found.load() : cfg.max_solutions);
  if (ctl.timed_out) {
    out.status = SolveStatus::TimedOut;
  } else if (ctl.capped) {
    out.status = SolveStatus::CappedAtLimit;
  } else if (out.count == 0) {
    out.status = SolveStatus::Unsatisfiable;
  } else {
    out.status = SolveStatus::Complete;
  }
  out.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

SolutionSet solve(const Instance& inst, const SolverConfig& cfg) {
  SolutionSet result;
  const SolutionVisitor collect = [&](std::span<const Row> adj) {
    result.solutions.push_back(Dag::from_rows(adj));
  };
  const EnumerationSummary summary = enumerate_solutions(inst, cfg, collect);
  result.canonicalize();
  result.status = summary.status;
  result.explored = summary.explored;
  result.elapsed_s = summary.elapsed_s;
  return result;
}

}  // namespace ionc
