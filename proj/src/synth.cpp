#include "ionc/synth.hpp"

#include <cmath>
#include <numeric>

namespace ionc {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw PreconditionError(std::string(what) + " must lie in [0, 1]");
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed;
  const std::uint64_t base = splitmix64(state);
  state = base ^ (stream * 0xD1B54A32D192ED03ULL + 1);
  engine_.seed(splitmix64(state));
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw PreconditionError("empty range");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % bound;
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::size_t Rng::binomial(std::size_t trials, double p) {
  std::size_t k = 0;
  for (std::size_t i = 0; i < trials; ++i) k += bernoulli(p) ? 1 : 0;
  return k;
}

void SimParams::validate() const {
  if (n_nodes < 2 || n_nodes > kMaxNodes) {
    throw PreconditionError("n_nodes must lie in [2, " + std::to_string(kMaxNodes) + "]");
  }
  check_probability(p_degree, "p_degree");
  check_probability(p_overlap, "p_overlap");
  if (s < 2 || s > n_nodes) throw PreconditionError("subgraph count must lie in [2, n_nodes]");
}

Dag sample_adjacencies(std::size_t n, double p_degree, Rng& rng) {
  if (n < 2) throw PreconditionError("ground truth needs at least two nodes");
  if (n > kMaxNodes) throw PreconditionError("too many nodes");
  check_probability(p_degree, "p_degree");

  Dag g(n);
  std::vector<NodeId> others;
  for (NodeId i = 0; i < n; ++i) {
    const std::size_t degree = rng.binomial(n - 1, p_degree);
    others.clear();
    for (NodeId j = 0; j < n; ++j) {
      if (j != i) others.push_back(j);
    }
    // Partial Fisher-Yates: the first `degree` slots become the sample.
    for (std::size_t k = 0; k < degree; ++k) {
      std::swap(others[k], others[k + rng.below(others.size() - k)]);
      g.add_edge(std::min(i, others[k]), std::max(i, others[k]));
    }
  }

  return g;
}

void connect_components(Dag& g, Rng& rng) {
  const std::size_t n = g.size();
  for (;;) {
    std::vector<NodeId> comp(n);
    std::iota(comp.begin(), comp.end(), 0);
    bool changed = true;
    while (changed) {
      changed = false;
      for (const Edge& e : g.edges()) {
        const NodeId c = std::min(comp[e.from], comp[e.to]);
        if (comp[e.from] != c || comp[e.to] != c) {
          comp[e.from] = comp[e.to] = c;
          changed = true;
        }
      }
    }
    const auto u = static_cast<NodeId>(rng.below(n));
    std::vector<NodeId> outside;
    for (NodeId v = 0; v < n; ++v) {
      if (comp[v] != comp[u]) outside.push_back(v);
    }
    if (outside.empty()) break;
    const NodeId v = outside[rng.below(outside.size())];
    g.add_edge(std::min(u, v), std::max(u, v));
  }
}

Dag generate_ground_truth(std::size_t n, double p_degree, Rng& rng) {
  Dag g = sample_adjacencies(n, p_degree, rng);
  connect_components(g, rng);
  return g;
}

std::size_t overlap_sample_size(std::size_t n, std::size_t block, double p_overlap) {
  const double want = p_overlap * static_cast<double>(n - block);
  return std::min(n - block, static_cast<std::size_t>(std::floor(want + 0.5 + 1e-9)));
}

std::vector<VarSet> split_overlapping(std::size_t n, std::size_t s, double p_overlap, Rng& rng) {
  if (s == 0 || s > n) throw PreconditionError("subgraph count must lie in [1, n]");
  if (n > kMaxNodes) throw PreconditionError("too many nodes");
  check_probability(p_overlap, "p_overlap");

  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);

  std::vector<VarSet> blocks(s);
  std::size_t pos = 0;
  for (std::size_t b = 0; b < s; ++b) {
    const std::size_t size = n / s + (b < n % s ? 1 : 0);
    for (std::size_t k = 0; k < size; ++k) blocks[b].insert(order[pos++]);
  }

  std::vector<VarSet> subsets;
  for (const VarSet& block : blocks) {
    std::vector<NodeId> others = block.complement(n).members();
    const std::size_t take = overlap_sample_size(n, block.size(), p_overlap);
    VarSet subset = block;
    for (std::size_t k = 0; k < take; ++k) {
      std::swap(others[k], others[k + rng.below(others.size() - k)]);
      subset.insert(others[k]);
    }
    subsets.push_back(subset);
  }
  return subsets;
}

Universe default_universe(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
  return Universe(std::move(names));
}

GeneratedCase make_case(const SimParams& params, Rng& rng) {
  params.validate();
  GeneratedCase c;
  c.ground_truth = generate_ground_truth(params.n_nodes, params.p_degree, rng);
  c.subsets = split_overlapping(params.n_nodes, params.s, params.p_overlap, rng);
  std::vector<InputGraph> inputs;
  for (const VarSet& sub : c.subsets) inputs.push_back(latent_project(c.ground_truth, sub));
  c.instance = Instance(default_universe(params.n_nodes), std::move(inputs));
  return c;
}

GeneratedCase make_case(const SimParams& params, std::size_t rep) {
  Rng rng(params.seed, rep);
  return make_case(params, rng);
}

}  // namespace ionc
