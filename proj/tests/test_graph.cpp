#include <doctest.h>

#include <cmath>

#include "gframelet/chain.hpp"
#include "gframelet/graph.hpp"
#include "support.hpp"

using namespace gframelet;

namespace {

Graph six()
{
    return build_graph(6, {{0, 1, 1}, {0, 2, 1}, {2, 3, 1}, {2, 4, 1}, {2, 5, 1}, {3, 4, 1}});
}

}  // namespace

TEST_CASE("six-vertex graph degrees and volume")
{
    const GraphStats s = graph_stats(six());
    CHECK(s.degrees == Vec{2, 1, 4, 2, 2, 1});
    CHECK(s.degrees[2] == 4);
    CHECK(s.volume == 12);
}

TEST_CASE("single vertex and edgeless graphs")
{
    const Graph one = build_graph(1, {});
    CHECK(one.n == 1);
    CHECK(graph_stats(one).volume == 0);

    const Graph empty = build_graph(4, {});
    const GraphStats s = graph_stats(empty);
    CHECK(s.volume == 0);
    for (double d : s.degrees) CHECK(d == 0);
    CHECK(laplacian(empty).isZero(0));
    CHECK_FALSE(is_connected(empty));
}

TEST_CASE("duplicate edges are summed and stored symmetrically")
{
    const Graph g = build_graph(3, {{0, 1, 1}, {1, 0, 1}});
    CHECK(g.weight(0, 1) == 2);
    CHECK(g.weight(1, 0) == 2);
    CHECK(g.weight(0, 2) == 0);
}

TEST_CASE("invalid edges are rejected")
{
    CHECK_THROWS_AS(build_graph(3, {{0, 3, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(build_graph(3, {{0, 1, -1}}), std::invalid_argument);
}

TEST_CASE("shortest-path distances")
{
    const Vec d = graph_distance(six(), 1);
    CHECK(d[5] == 3);  // b-a-c-f
    CHECK(d[1] == 0);

    const Graph two = build_graph(4, {{0, 1, 1}, {2, 3, 1}});
    CHECK(std::isinf(graph_distance(two, 0)[3]));
    CHECK_FALSE(is_connected(two));
    CHECK(is_connected(six()));
}

TEST_CASE("laplacian entries")
{
    const Eigen::MatrixXd L = laplacian(six());
    CHECK(L(0, 0) == 2);
    CHECK(L(0, 1) == -1);
    CHECK((L - L.transpose()).norm() == 0);
    CHECK(L.rowwise().sum().cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("coarse two-node graph spectrum")
{
    // clusters {a,b} and {c,d,e,f}
    const Graph w1 = coarse_graph(six(), {0, 0, 1, 1, 1, 1}, 2);
    const Eigen::MatrixXd L = laplacian(w1);
    CHECK(L(0, 0) == doctest::Approx(1.0 / 12).epsilon(1e-14));
    CHECK(L(0, 1) == doctest::Approx(-1.0 / 12).epsilon(1e-14));

    const EigenPairs ep = sqrt_eigenpairs(w1);
    CHECK(ep.raw[0] == doctest::Approx(0).epsilon(1e-14));
    CHECK(ep.raw[1] == doctest::Approx(1.0 / 6).epsilon(1e-14));
    CHECK(ep.values[1] == doctest::Approx(std::sqrt(1.0 / 6)).epsilon(1e-14));
    const double h = 1 / std::sqrt(2.0);
    CHECK(std::abs(ep.vectors(0, 0) - h) < 1e-14);
    CHECK(std::abs(ep.vectors(1, 0) - h) < 1e-14);
    CHECK(std::abs(std::abs(ep.vectors(0, 1)) - h) < 1e-14);
    CHECK(ep.vectors(0, 1) * ep.vectors(1, 1) < 0);
}

TEST_CASE("eigenpairs are orthonormal with a positive constant first vector")
{
    for (const Graph& g : {six(), random_connected_graph(60, 4.0, 7)}) {
        const EigenPairs ep = sqrt_eigenpairs(g);
        const auto n = static_cast<Eigen::Index>(g.n);
        CHECK((ep.vectors.transpose() * ep.vectors - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(ep.values[0] == 0);
        for (Eigen::Index v = 0; v < n; ++v) CHECK(std::abs(ep.vectors(v, 0) - 1 / std::sqrt(double(n))) < 1e-12);
        for (std::size_t l = 1; l < g.n; ++l) CHECK(ep.values[l] >= ep.values[l - 1]);
    }
}
