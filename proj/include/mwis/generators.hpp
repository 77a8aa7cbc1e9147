#pragma once

#include <cstdint>
#include <random>

#include "mwis/graph.hpp"

namespace mwis {

/// Thin deterministic RNG. uniform_int uses plain modulo reduction of
/// mt19937_64 output so that streams are reproducible bit-for-bit across
/// platforms and standard-library versions.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    /// Uniform-ish integer in [lo, hi], deterministic per seed.
    long long uniform_int(long long lo, long long hi);

  private:
    std::mt19937_64 gen_;
};

struct WeightRange {
    long long min = 0; // 0/0 means the generator default [1, n]
    long long max = 0;
};

/// Union of `a` edge-disjoint random spanning forests on n nodes, so the
/// arboricity is at most `a` by construction. Node weights are random
/// integers in the configured range (default [1, n]).
Graph gen_forest_union(int n, int a, std::uint64_t seed, WeightRange weights = {});

/// Random simple digraph where every node has out-degree <= d.
Graph gen_random_dout(int n, int d, std::uint64_t seed, WeightRange weights = {});

/// Consistently oriented cycle 0 -> 1 -> ... -> n-1 -> 0 (out-degree 1).
/// Default weights are 1 so that OPT = floor(n/2) by symmetry.
Graph gen_oriented_ring(int n, std::uint64_t seed = 0, WeightRange weights = {1, 1});

} // namespace mwis
