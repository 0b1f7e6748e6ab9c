#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "oracles.hpp"
#include "test_support.hpp"
#include "treekm/spanning_tree.hpp"

using namespace treekm;

namespace {

DissimilarityMatrix wrap(const std::vector<std::vector<double>>& w) {
    DissimilarityMatrix dm;
    dm.n = w.size();
    for (const auto& row : w) dm.values.insert(dm.values.end(), row.begin(), row.end());
    return dm;
}

DissimilarityMatrix worked_example_matrix() {
    const Dataset d = testsup::worked_example_dataset();
    return combined_matrix(d, feature_ranges(d, {{2, 8.0}}), {}).matrix;
}

}  // namespace

TEST_CASE("two nodes make a single edge") {
    const auto t = build_mst(wrap({{0, 3}, {3, 0}}));
    REQUIRE(t.edges.size() == 1);
    CHECK(t.edges[0] == Edge{0, 1, 3.0});
}

TEST_CASE("build_mst rejects bad inputs") {
    CHECK_THROWS_AS(build_mst(wrap({{0}})), std::invalid_argument);
    CHECK_THROWS_AS(build_mst(wrap({{0, 1}, {2, 0}})), std::invalid_argument);   // asymmetric
    CHECK_THROWS_AS(build_mst(wrap({{1, 2}, {2, 0}})), std::invalid_argument);   // diagonal
    CHECK_THROWS_AS(build_mst(wrap({{0, -1}, {-1, 0}})), std::invalid_argument); // negative
}

TEST_CASE("worked example tree, pruning and components") {
    const auto t = build_mst(worked_example_matrix());
    REQUIRE(t.edges.size() == 9);

    // acceptance order: ascending (weight, u, v); indices 0-based
    const std::vector<Edge> expected = {
        {1, 6, 3.0 / 24.0}, {3, 4, 3.0 / 24.0}, {0, 2, 4.0 / 24.0},
        {2, 7, 4.0 / 24.0}, {5, 8, 4.0 / 24.0}, {0, 5, 6.0 / 24.0},
        {3, 7, 6.0 / 24.0}, {5, 6, 6.0 / 24.0}, {5, 9, 6.0 / 24.0},
    };
    for (std::size_t i = 0; i < 9; ++i) {
        CAPTURE(i);
        CHECK(t.edges[i].u == expected[i].u);
        CHECK(t.edges[i].v == expected[i].v);
        CHECK(t.edges[i].weight == doctest::Approx(expected[i].weight).epsilon(1e-12));
    }

    const Forest f = prune_heaviest(t, 4);
    REQUIRE(f.pruned.size() == 3);
    CHECK(f.pruned[0].u == 0);  // (1,6) in 1-based numbering
    CHECK(f.pruned[0].v == 5);
    CHECK(f.pruned[1].u == 3);  // (4,8)
    CHECK(f.pruned[1].v == 7);
    CHECK(f.pruned[2].u == 5);  // (6,7)
    CHECK(f.pruned[2].v == 6);

    const std::vector<std::vector<std::size_t>> expected_parts = {
        {0, 2, 7}, {1, 6}, {3, 4}, {5, 8, 9}};
    CHECK(components(f) == expected_parts);
}

TEST_CASE("prune_heaviest edge cases") {
    const auto t = build_mst(worked_example_matrix());
    SUBCASE("k = 1 keeps everything") {
        const Forest f = prune_heaviest(t, 1);
        CHECK(f.pruned.empty());
        CHECK(f.edges.size() == 9);
        REQUIRE(f.components.size() == 1);
        CHECK(f.components[0].size() == 10);
    }
    SUBCASE("k = n removes everything") {
        const Forest f = prune_heaviest(t, 10);
        CHECK(f.edges.empty());
        CHECK(f.pruned.size() == 9);
        CHECK(f.components.size() == 10);
        for (std::size_t i = 0; i < 10; ++i) CHECK(f.components[i] == std::vector<std::size_t>{i});
    }
    SUBCASE("k out of range") {
        CHECK_THROWS_AS(prune_heaviest(t, 0), std::invalid_argument);
        CHECK_THROWS_AS(prune_heaviest(t, 11), std::invalid_argument);
    }
}

TEST_CASE("prune_heaviest rejects non-trees") {
    SpanningTree bogus;
    bogus.n = 3;
    bogus.edges = {{0, 1, 1.0}, {0, 1, 2.0}};  // duplicate pair, not spanning
    CHECK_THROWS_AS(prune_heaviest(bogus, 2), std::invalid_argument);
}

TEST_CASE("tied weights resolve by canonical edge order") {
    // all weights equal: candidates (0,1),(0,2),...,(0,n-1) win in order
    const std::size_t n = 6;
    std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.5));
    for (std::size_t i = 0; i < n; ++i) w[i][i] = 0.0;
    const auto t = build_mst(wrap(w));
    REQUIRE(t.edges.size() == n - 1);
    for (std::size_t i = 0; i < n - 1; ++i) {
        CHECK(t.edges[i].u == 0);
        CHECK(t.edges[i].v == i + 1);
    }
}

TEST_CASE("matches the alternate-algorithm oracle on random matrices") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 60; ++rep) {
        const std::size_t n = 3 + rng() % 14;
        const auto w = oracle::random_symmetric(rng, n, rep % 2 == 0);
        const auto t = build_mst(wrap(w));
        REQUIRE(t.edges.size() == n - 1);

        std::vector<double> ours;
        for (const Edge& e : t.edges) ours.push_back(e.weight);
        std::sort(ours.begin(), ours.end());
        const auto theirs = oracle::prim_weights(w);
        CHECK(ours == theirs);
        CHECK(oracle::total_of(ours) == oracle::total_of(theirs));

        // connected and acyclic
        DisjointSets sets(n);
        for (const Edge& e : t.edges) CHECK(sets.unite(e.u, e.v));
        CHECK(sets.set_count() == 1);
    }
}

TEST_CASE("every pruning level yields the right component count") {
    std::mt19937_64 rng(8);
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t n = 3 + rng() % 10;
        const auto t = build_mst(wrap(oracle::random_symmetric(rng, n, true)));
        for (std::size_t k = 1; k <= n; ++k) {
            const Forest f = prune_heaviest(t, k);
            CHECK(f.components.size() == k);
            CHECK(f.pruned.size() == k - 1);
            std::size_t covered = 0;
            for (const auto& part : f.components) covered += part.size();
            CHECK(covered == n);
        }
    }
}

TEST_CASE("cut property holds for every tree edge") {
    std::mt19937_64 rng(9);
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t n = 4 + rng() % 8;
        // distinct weights so the MST is unique
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        std::set<double> used;
        std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b) {
                double x;
                do { x = uni(rng); } while (!used.insert(x).second);
                w[a][b] = w[b][a] = x;
            }
        const auto t = build_mst(wrap(w));
        for (const Edge& cut : t.edges) {
            // split nodes by the remaining edges
            DisjointSets sets(n);
            for (const Edge& e : t.edges)
                if (!(e == cut)) sets.unite(e.u, e.v);
            double lightest = 2.0;
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = a + 1; b < n; ++b)
                    if (sets.find(a) != sets.find(b)) lightest = std::min(lightest, w[a][b]);
            CHECK(cut.weight == lightest);
        }
    }
}

TEST_CASE("deterministic across repeated runs") {
    std::mt19937_64 rng(10);
    const auto w = oracle::random_symmetric(rng, 12, true);
    const auto t1 = build_mst(wrap(w));
    const auto t2 = build_mst(wrap(w));
    CHECK(t1.edges == t2.edges);
    const Forest f1 = prune_heaviest(t1, 5), f2 = prune_heaviest(t2, 5);
    CHECK(f1.edges == f2.edges);
    CHECK(f1.pruned == f2.pruned);
    CHECK(f1.components == f2.components);
}
