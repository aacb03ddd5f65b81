#pragma once

// Seeded generation of random ground-truth DAGs, overlapping variable
// subsets, and the benchmark instances obtained by projecting one onto the
// other.

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "ionc/graph.hpp"
#include "ionc/solver.hpp"

namespace ionc {

/// Deterministic, platform-independent random source: a mt19937_64 engine
/// seeded per (seed, stream) through splitmix64, with hand-rolled
/// distributions so draws do not depend on the standard library vendor.
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64+splitmix64-substreams/v1";

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  /// Uniform double in [0, 1).
  double uniform();
  bool bernoulli(double p) { return uniform() < p; }
  std::size_t binomial(std::size_t trials, double p);

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

struct SimParams {
  std::size_t n_nodes = 8;
  double p_degree = 0.25;
  double p_overlap = 0.5;
  std::size_t s = 2;
  std::uint64_t seed = 0;
  std::size_t reps = 1;

  /// Throws PreconditionError on out-of-range values.
  void validate() const;
};

struct GeneratedCase {
  Dag ground_truth;
  std::vector<VarSet> subsets;
  Instance instance;
};

/// Each node picks Binomial(n-1, p_degree) distinct partners; every picked
/// pair becomes one edge oriented low index -> high index.
Dag sample_adjacencies(std::size_t n, double p_degree, Rng& rng);

/// Adds edges between uniformly chosen nodes of different components until
/// the underlying undirected graph is connected.
void connect_components(Dag& g, Rng& rng);

Dag generate_ground_truth(std::size_t n, double p_degree, Rng& rng);

/// |block| + round_half_up(p_overlap * (n - |block|)) for each block size.
std::size_t overlap_sample_size(std::size_t n, std::size_t block, double p_overlap);

std::vector<VarSet> split_overlapping(std::size_t n, std::size_t s, double p_overlap, Rng& rng);

GeneratedCase make_case(const SimParams& params, Rng& rng);

/// The case for replicate `rep`, drawn from its own substream of params.seed.
GeneratedCase make_case(const SimParams& params, std::size_t rep);

Universe default_universe(std::size_t n);

}  // namespace ionc
