#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "test_support.hpp"
#include "treekm/errors.hpp"
#include "treekm/kmeans.hpp"

using namespace treekm;

namespace {

Centroids make_centroids(std::size_t m, std::vector<double> points) {
    Centroids c;
    c.m = m;
    c.k = points.size() / m;
    c.points = std::move(points);
    return c;
}

Dataset random_dataset(std::mt19937_64& rng, std::size_t n, std::size_t m) {
    std::uniform_real_distribution<double> uni(-10.0, 10.0);
    std::vector<double> values(n * m);
    for (auto& v : values) v = uni(rng);
    return Dataset::from_values(n, m, std::move(values));
}

}  // namespace

TEST_CASE("euclidean basics") {
    const std::vector<double> o{0, 0}, p{3, 4};
    CHECK(euclidean(o, p) == 5.0);
    CHECK(euclidean(p, p) == 0.0);

    const auto& objects = testsup::worked_example_objects();
    CHECK(euclidean(objects[0], objects[1]) == doctest::Approx(std::sqrt(57.0)).epsilon(1e-12));

    const std::vector<double> shorter{1.0};
    CHECK_THROWS_AS(euclidean(o, shorter), std::invalid_argument);
}

TEST_CASE("assign: worked example and tie handling") {
    const Dataset d = testsup::worked_example_dataset();
    // the four component means of the worked example
    const Centroids c = make_centroids(3, {
        3.0, 17.0 / 3.0, 11.0 / 3.0,
        7.5, 1.5, 2.5,
        1.0, 8.5, 1.0,
        20.0 / 3.0, 3.0, 6.0,
    });
    const auto a = assign(d, c);
    CHECK(a == std::vector<std::size_t>{0, 1, 0, 2, 2, 3, 1, 0, 3, 3});
    CHECK(a[8] == 3);  // object 9 lands with the {6,9,10} mean

    SUBCASE("k = 1 sends everything to cluster 0") {
        const auto single = assign(d, make_centroids(3, {0, 0, 0}));
        CHECK(std::all_of(single.begin(), single.end(), [](std::size_t x) { return x == 0; }));
    }
    SUBCASE("equidistant object goes to the lower index") {
        const Dataset mid = Dataset::from_values(1, 1, {5});
        const auto t = assign(mid, make_centroids(1, {4, 6}));
        CHECK(t[0] == 0);
    }
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(assign(d, make_centroids(2, {1, 2})), std::invalid_argument);
    }
}

TEST_CASE("assign matches a brute-force scan") {
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 3 + rng() % 20, m = 1 + rng() % 4, k = 1 + rng() % 5;
        const Dataset d = random_dataset(rng, n, m);
        std::uniform_real_distribution<double> uni(-10.0, 10.0);
        std::vector<double> pts(k * m);
        for (auto& v : pts) v = uni(rng);
        const Centroids c = make_centroids(m, pts);

        const auto got = assign(d, c);
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            std::size_t best_j = 0;
            for (std::size_t j = 0; j < k; ++j) {
                double acc = 0.0;
                for (std::size_t f = 0; f < m; ++f) {
                    const double diff = d.value(i, f) - c.at(j, f);
                    acc += diff * diff;
                }
                if (acc < best) {
                    best = acc;
                    best_j = j;
                }
            }
            CHECK(got[i] == best_j);
        }
    }
}

TEST_CASE("update_centroids: means, singletons and the empty-cluster policy") {
    const Dataset d = testsup::worked_example_dataset();

    SUBCASE("group {2,7} in 1-based numbering") {
        std::vector<std::size_t> a(d.n, 0);
        a[1] = 1;
        a[6] = 1;
        const Centroids c = update_centroids(d, a, 2);
        CHECK(c.at(1, 0) == 7.5);
        CHECK(c.at(1, 1) == 1.5);
        CHECK(c.at(1, 2) == 2.5);
    }
    SUBCASE("every object its own cluster") {
        std::vector<std::size_t> a(d.n);
        std::iota(a.begin(), a.end(), std::size_t{0});
        const Centroids c = update_centroids(d, a, d.n);
        for (std::size_t i = 0; i < d.n; ++i)
            for (std::size_t f = 0; f < d.m; ++f) CHECK(c.at(i, f) == d.value(i, f));
    }
    SUBCASE("empty cluster pulls in the farthest object") {
        // 1-d points: 0,1 in cluster 0; 10,11,30 in cluster 1; cluster 2 empty.
        // 30 is farthest from its mean (17), so it must move to cluster 2.
        const Dataset line = Dataset::from_values(5, 1, {0, 1, 10, 11, 30});
        std::vector<std::size_t> a{0, 0, 1, 1, 1};
        const Centroids c = update_centroids(line, a, 3);
        CHECK(a == std::vector<std::size_t>{0, 0, 1, 1, 2});
        CHECK(c.at(0, 0) == 0.5);
        CHECK(c.at(1, 0) == 10.5);
        CHECK(c.at(2, 0) == 30.0);
    }
    SUBCASE("bad assignment index") {
        std::vector<std::size_t> a(d.n, 5);
        CHECK_THROWS_AS(update_centroids(d, a, 2), std::invalid_argument);
    }
}

TEST_CASE("sse basics and the mean-optimality oracle") {
    SUBCASE("zero when every object sits on its centroid") {
        const Dataset d = Dataset::from_values(2, 2, {1, 2, 3, 4});
        const Centroids c = make_centroids(2, {1, 2, 3, 4});
        CHECK(sse(d, {0, 1}, c) == 0.0);
    }
    SUBCASE("two 1-d points around their mean") {
        const Dataset d = Dataset::from_values(2, 1, {0, 2});
        const Centroids c = make_centroids(1, {1});
        CHECK(sse(d, {0, 0}, c) == 2.0);
    }
    SUBCASE("update never increases the criterion for fixed assignments") {
        std::mt19937_64 rng(32);
        for (int rep = 0; rep < 20; ++rep) {
            const std::size_t n = 4 + rng() % 20, m = 1 + rng() % 3, k = 1 + rng() % 4;
            const Dataset d = random_dataset(rng, n, m);
            std::vector<std::size_t> a(n);
            for (auto& x : a) x = rng() % k;
            std::uniform_real_distribution<double> uni(-10.0, 10.0);
            std::vector<double> pts(k * m);
            for (auto& v : pts) v = uni(rng);
            const double before = sse(d, a, make_centroids(m, pts));
            auto adjusted = a;
            const Centroids updated = update_centroids(d, adjusted, k);
            const double after = sse(d, adjusted, updated);
            CHECK(after <= before + 1e-9);
        }
    }
}

TEST_CASE("lloyd: worked example reaches the expected grouping") {
    const Dataset d = testsup::worked_example_dataset();
    SeedConfig cfg;
    cfg.range_overrides = {{2, 8.0}};
    const ClusteringResult r = lloyd(d, tree_seed(d, 4, cfg));
    CHECK(r.converged);
    CHECK(r.assignments == std::vector<std::size_t>{0, 1, 0, 2, 2, 3, 1, 0, 3, 3});
}

TEST_CASE("lloyd: degenerate and fixed-point cases") {
    const Dataset d = testsup::worked_example_dataset();

    SUBCASE("k = 1 converges immediately to the global mean") {
        const ClusteringResult r = lloyd(d, random_centroids(d, 1, 3));
        CHECK(r.converged);
        CHECK(r.iterations == 1);
        CHECK(r.centroids.at(0, 0) == doctest::Approx(4.6));
        // criterion value equals total squared deviation from the mean
        double expected = 0.0;
        for (std::size_t i = 0; i < d.n; ++i)
            for (std::size_t f = 0; f < d.m; ++f) {
                const double mean = f == 2 ? 3.6 : 4.6;
                expected += (d.value(i, f) - mean) * (d.value(i, f) - mean);
            }
        CHECK(r.sse_trace.back() == doctest::Approx(expected).epsilon(1e-12));
    }
    SUBCASE("fixed-point init converges in one iteration without changes") {
        SeedConfig cfg;
        cfg.range_overrides = {{2, 8.0}};
        const Centroids seed = tree_seed(d, 4, cfg);
        const ClusteringResult first = lloyd(d, seed);
        const ClusteringResult again = lloyd(d, first.centroids);
        CHECK(again.converged);
        CHECK(again.iterations == 1);
        CHECK(again.assignments == first.assignments);
    }
}

TEST_CASE("lloyd: invariants on random data") {
    std::mt19937_64 rng(33);
    for (int rep = 0; rep < 30; ++rep) {
        const std::size_t n = 4 + rng() % 40, m = 1 + rng() % 4;
        const std::size_t k = 1 + rng() % std::min<std::size_t>(n, 6);
        const Dataset d = random_dataset(rng, n, m);
        LloydConfig cfg;
        cfg.max_iterations = rep % 5 == 0 ? 2 : 100;
        const ClusteringResult r = lloyd(d, random_centroids(d, k, rep), cfg);

        CHECK(r.iterations <= cfg.max_iterations);
        CHECK(r.iterations == r.sse_trace.size());
        for (std::size_t t = 1; t < r.sse_trace.size(); ++t)
            CHECK(r.sse_trace[t] <= r.sse_trace[t - 1] + 1e-9);
        for (std::size_t a : r.assignments) CHECK(a < k);

        if (r.converged) {
            // fixed point: one more assign changes nothing, one more update
            // moves nothing
            CHECK(assign(d, r.centroids) == r.assignments);
            auto copy = r.assignments;
            const Centroids again = update_centroids(d, copy, k);
            CHECK(copy == r.assignments);
            for (std::size_t j = 0; j < k; ++j)
                for (std::size_t f = 0; f < m; ++f)
                    CHECK(std::abs(again.at(j, f) - r.centroids.at(j, f)) <= 1e-12);
        }
    }
}

TEST_CASE("lloyd: determinism and configuration errors") {
    const Dataset d = testsup::worked_example_dataset();
    const Centroids init = random_centroids(d, 3, 17);
    const ClusteringResult a = lloyd(d, init), b = lloyd(d, init);
    CHECK(a.assignments == b.assignments);
    CHECK(a.centroids.points == b.centroids.points);
    CHECK(a.sse_trace == b.sse_trace);

    LloydConfig bad;
    bad.max_iterations = 0;
    CHECK_THROWS_AS(lloyd(d, init, bad), std::invalid_argument);

    const Dataset holed = Dataset::from_values(2, 1, {1, 0}, {0, 1});
    CHECK_THROWS_AS(lloyd(holed, make_centroids(1, {1.0}), {}), DataError);
}

TEST_CASE("lloyd: centroid tolerance stops the loop") {
    std::mt19937_64 rng(34);
    const Dataset d = random_dataset(rng, 40, 2);
    LloydConfig cfg;
    cfg.centroid_tolerance = 1e3;  // absurdly loose: stop after the first update
    const ClusteringResult r = lloyd(d, random_centroids(d, 4, 2), cfg);
    CHECK(r.converged);
    CHECK(r.iterations == 1);
}
