#pragma once

#include <cstddef>
#include <vector>

#include "treekm/dissimilarity.hpp"

namespace treekm {

/// Undirected weighted edge in canonical orientation u < v.
struct Edge {
    std::size_t u = 0;
    std::size_t v = 0;
    double weight = 0.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct SpanningTree {
    std::size_t n = 0;
    /// Exactly n-1 edges, in acceptance order: ascending (weight, u, v).
    std::vector<Edge> edges;

    double total_weight() const;
};

/// A spanning tree minus its pruned edges, split into components.
struct Forest {
    std::size_t n = 0;
    std::vector<Edge> edges;   ///< retained, ascending (weight, u, v)
    std::vector<Edge> pruned;  ///< removal order: descending weight, ascending (u, v)
    /// Disjoint components covering 0..n-1; each sorted ascending, listed by
    /// smallest member.
    std::vector<std::vector<std::size_t>> components;
};

/// Disjoint-set forest with union by size and path halving.
class DisjointSets {
public:
    explicit DisjointSets(std::size_t n);

    std::size_t find(std::size_t x);
    /// Joins the two sets; returns false when already joined.
    bool unite(std::size_t a, std::size_t b);
    std::size_t set_count() const { return count_; }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
    std::size_t count_;
};

/// Minimum spanning tree of the complete graph weighted by `dm`, built by
/// the edge-sorted greedy algorithm with a union-find acceptance test.
/// Candidate edges are processed in ascending (weight, u, v) order, so ties
/// resolve deterministically and the result is unique for a given matrix.
/// Requires n >= 2 and a symmetric, zero-diagonal, non-negative matrix.
SpanningTree build_mst(const DissimilarityMatrix& dm);

/// Removes the k-1 heaviest edges (descending weight, ties by ascending
/// (u, v)), yielding exactly k components. Requires 1 <= k <= n.
Forest prune_heaviest(const SpanningTree& t, std::size_t k);

/// The forest's components (each sorted, ordered by smallest member).
const std::vector<std::vector<std::size_t>>& components(const Forest& f);

}  // namespace treekm
