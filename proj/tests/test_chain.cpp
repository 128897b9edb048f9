#include <doctest.h>

#include <numeric>

#include "gframelet/chain.hpp"
#include "gframelet/io.hpp"
#include "gframelet/toy.hpp"
#include "support.hpp"

using namespace gframelet;

TEST_CASE("coarse weights of the example partitions")
{
    const Graph g = toy_graph();
    // {a,b}, {c,d,e}, {f}
    const Graph w2 = coarse_graph(g, {0, 0, 1, 1, 1, 2}, 3);
    const double want2[3][3] = {{2, 1, 0}, {1, 6, 1}, {0, 1, 0}};
    for (std::uint32_t p = 0; p < 3; ++p)
        for (std::uint32_t q = 0; q < 3; ++q) CHECK(std::abs(w2.weight(p, q) - want2[p][q] / 12) < 1e-15);

    // {a,b}, {c,d,e,f}
    const Graph w1 = coarse_graph(g, {0, 0, 1, 1, 1, 1}, 2);
    const double want1[2][2] = {{2, 1}, {1, 8}};
    for (std::uint32_t p = 0; p < 2; ++p)
        for (std::uint32_t q = 0; q < 2; ++q) CHECK(std::abs(w1.weight(p, q) - want1[p][q] / 12) < 1e-15);

    const Graph all = coarse_graph(g, Assignment(6, 0), 1);
    CHECK(all.weight(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("example chain with fixed centers")
{
    const Chain c = toy_chain();
    CHECK(c.sizes() == std::vector<std::size_t>{1, 2, 3, 6});
    CHECK(validate_chain(c).empty());
    const Assignment a2 = c.ancestors(2), a1 = c.ancestors(1);
    // level 2: {a,b}, {c,d,e}, {f}
    CHECK(a2[0] == a2[1]);
    CHECK(a2[2] == a2[3]);
    CHECK(a2[2] == a2[4]);
    CHECK(a2[5] != a2[2]);
    CHECK(a2[0] != a2[2]);
    // level 1: {a,b}, {c,d,e,f}
    CHECK(a1[0] == a1[1]);
    CHECK(a1[2] == a1[5]);
    CHECK(a1[0] != a1[2]);
    for (std::uint32_t v = 0; v < 6; ++v) CHECK(c.cluster_size[3][v] == 1);
}

TEST_CASE("empty size list gives a single-level chain")
{
    const Graph g = toy_graph();
    const Chain c = build_chain(g, {}, 1);
    CHECK(c.depth() == 0);
    CHECK(c.sizes() == std::vector<std::size_t>{6});
    CHECK(validate_chain(c).empty());
}

TEST_CASE("chains are reproducible for a fixed seed")
{
    const Graph g = random_connected_graph(200, 4.0, 11);
    const Chain c1 = build_chain(g, {80, 30, 10}, 5);
    const Chain c2 = build_chain(g, {80, 30, 10}, 5);
    CHECK(chain_to_json(c1) == chain_to_json(c2));
    CHECK(c1.id == c2.id);
    CHECK(validate_chain(c1).empty());
    for (std::size_t j = 0; j <= c1.depth(); ++j) {
        const auto& cs = c1.cluster_size[j];
        CHECK(std::accumulate(cs.begin(), cs.end(), std::size_t{0}) == 200);
    }
}

TEST_CASE("invalid size lists are rejected")
{
    const Graph g = toy_graph();
    CHECK_THROWS_AS(build_chain(g, {10}, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_chain(g, {3, 3}, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_chain(g, {6}, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_chain(build_graph(4, {{0, 1, 1}, {2, 3, 1}}), {2}, 1), std::invalid_argument);
}

TEST_CASE("nesting violations are reported")
{
    Chain c = toy_chain();
    c.parent[2][0] = c.parent[2][0] == 0 ? 1 : 0;  // move one level-2 node under a different parent
    CHECK_FALSE(validate_chain(c).empty());
}

TEST_CASE("chain from external partitions")
{
    const Graph g = toy_graph();
    const Chain c = chain_from_assignments(g, {{0, 0, 1, 1, 1, 2}, {0, 1, 1}, {0, 0}});
    CHECK(c.sizes() == std::vector<std::size_t>{1, 2, 3, 6});
    CHECK(validate_chain(c).empty());
    CHECK_THROWS_AS(chain_from_assignments(g, {{0, 0, 2, 2, 2, 2}}), std::invalid_argument);
}

TEST_CASE("Voronoi partitions cover every vertex")
{
    const Graph g = random_connected_graph(300, 4.0, 3);
    const Assignment a = voronoi_partition(g, 40, 9);
    std::vector<int> seen(40, 0);
    for (auto x : a) {
        REQUIRE(x < 40);
        seen[x] = 1;
    }
    CHECK(std::accumulate(seen.begin(), seen.end(), 0) == 40);
}
