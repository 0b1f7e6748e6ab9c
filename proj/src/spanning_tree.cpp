#include "treekm/spanning_tree.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>

#include "treekm/errors.hpp"

namespace treekm {

double SpanningTree::total_weight() const {
    double total = 0.0;
    for (const Edge& e : edges) total += e.weight;
    return total;
}

DisjointSets::DisjointSets(std::size_t n) : parent_(n), size_(n, 1), count_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSets::find(std::size_t x) {
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

bool DisjointSets::unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --count_;
    return true;
}

namespace {

bool edge_order_asc(const Edge& x, const Edge& y) {
    return std::tie(x.weight, x.u, x.v) < std::tie(y.weight, y.u, y.v);
}

// Pruning order: heaviest first, ties by canonical endpoint pair.
bool edge_order_prune(const Edge& x, const Edge& y) {
    if (x.weight != y.weight) return x.weight > y.weight;
    return std::tie(x.u, x.v) < std::tie(y.u, y.v);
}

std::vector<std::vector<std::size_t>> collect_components(std::size_t n, DisjointSets& sets) {
    std::vector<std::vector<std::size_t>> by_root(n);
    for (std::size_t i = 0; i < n; ++i) by_root[sets.find(i)].push_back(i);
    std::vector<std::vector<std::size_t>> out;
    for (auto& group : by_root)
        if (!group.empty()) out.push_back(std::move(group));
    // roots are visited in index order and members pushed ascending, so each
    // component is sorted and components are ordered by smallest member
    return out;
}

}  // namespace

SpanningTree build_mst(const DissimilarityMatrix& dm) {
    const std::size_t n = dm.n;
    if (n < 2) throw std::invalid_argument("minimum spanning tree needs at least 2 nodes");
    if (dm.values.size() != n * n) throw std::invalid_argument("matrix size does not match n*n");
    for (std::size_t a = 0; a < n; ++a) {
        if (dm.at(a, a) != 0.0) throw std::invalid_argument("matrix diagonal must be zero");
        for (std::size_t b = a + 1; b < n; ++b) {
            if (dm.at(a, b) != dm.at(b, a)) throw std::invalid_argument("matrix must be symmetric");
            if (!(dm.at(a, b) >= 0.0)) throw std::invalid_argument("matrix entries must be non-negative");
        }
    }

    std::vector<Edge> candidates;
    candidates.reserve(n * (n - 1) / 2);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) candidates.push_back({u, v, dm.at(u, v)});
    std::sort(candidates.begin(), candidates.end(), edge_order_asc);

    SpanningTree tree;
    tree.n = n;
    tree.edges.reserve(n - 1);
    DisjointSets sets(n);
    for (const Edge& e : candidates) {
        if (sets.unite(e.u, e.v)) {
            tree.edges.push_back(e);
            if (tree.edges.size() == n - 1) break;
        }
    }
    if (tree.edges.size() != n - 1)
        throw InvariantError("spanning tree construction ended with " +
                             std::to_string(tree.edges.size()) + " edges");
    return tree;
}

Forest prune_heaviest(const SpanningTree& t, std::size_t k) {
    const std::size_t n = t.n;
    if (k < 1 || k > n) throw std::invalid_argument("k must be between 1 and the node count");
    if (t.edges.size() + 1 != n) throw std::invalid_argument("input is not a spanning tree");
    {
        DisjointSets audit(n);
        for (const Edge& e : t.edges)
            if (e.u >= n || e.v >= n || !audit.unite(e.u, e.v))
                throw std::invalid_argument("input edges do not form a spanning tree");
    }

    std::vector<Edge> order = t.edges;
    std::sort(order.begin(), order.end(), edge_order_prune);

    Forest f;
    f.n = n;
    f.pruned.assign(order.begin(), order.begin() + (k - 1));

    DisjointSets sets(n);
    for (const Edge& e : t.edges) {
        if (std::find(f.pruned.begin(), f.pruned.end(), e) != f.pruned.end()) continue;
        f.edges.push_back(e);
        sets.unite(e.u, e.v);
    }
    f.components = collect_components(n, sets);
    if (f.components.size() != k)
        throw InvariantError("pruning produced " + std::to_string(f.components.size()) +
                             " components, expected " + std::to_string(k));
    return f;
}

const std::vector<std::vector<std::size_t>>& components(const Forest& f) {
    return f.components;
}

}  // namespace treekm
