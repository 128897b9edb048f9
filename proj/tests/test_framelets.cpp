#include <doctest.h>

#include <cmath>

#include "gframelet/basis.hpp"
#include "gframelet/framelets.hpp"
#include "gframelet/toy.hpp"
#include "support.hpp"

using namespace gframelet;

namespace {

double sign_free_diff(const Vec& a, const Vec& b)
{
    Vec nb = b;
    for (double& x : nb) x = -x;
    return std::min(gtest::max_diff(a, b), gtest::max_diff(a, nb));
}

}  // namespace

TEST_CASE("undecimated system with an all-pass low pass is the delta basis")
{
    const Graph g = random_connected_graph(30, 4.0, 2);
    const EigenPairs ep = sqrt_eigenpairs(g);
    UndecimatedGenerators ug;
    ug.alpha = [](double) { return 1.0; };
    const FrameletSystem fs = build_undecimated_system(ep, ug);
    CHECK(fs.size() == 30);
    CHECK((fs.matrix() - Eigen::MatrixXd::Identity(30, 30)).cwiseAbs().maxCoeff() < 1e-12);
    for (std::uint32_t u : {0u, 7u, 29u}) {
        Vec delta(30, 0.0);
        delta[u] = 1;
        CHECK(gtest::max_diff(synth_undecimated(ep, ug, 0, u, 0), delta) < 1e-12);
    }
}

TEST_CASE("undecimated low pass keeping only the constant vector")
{
    const Graph g = random_connected_graph(30, 4.0, 4);
    const EigenPairs ep = sqrt_eigenpairs(g);
    UndecimatedGenerators ug;
    ug.alpha = [](double x) { return x == 0 ? 1.0 : 0.0; };
    const Vec phi = synth_undecimated(ep, ug, 0, 3, 0);
    for (double x : phi) CHECK(std::abs(x - 1.0 / 30) < 1e-14);
}

TEST_CASE("undecimated Parseval identity")
{
    const Graph g = random_connected_graph(30, 4.0, 5);
    const EigenPairs ep = sqrt_eigenpairs(g);
    const UndecimatedGenerators ug = standard_undecimated(0.5, 2, ep.values.back(), 0);
    const FrameletSystem fs = build_undecimated_system(ep, ug);
    CHECK(fs.size() == 30 * static_cast<std::size_t>(ug.J - ug.J1 + 2));
    for (std::uint64_t s = 0; s < 10; ++s) {
        const Eigen::VectorXd f = gtest::ev(gtest::random_signal(30, s));
        CHECK(std::abs((fs.matrix() * f).squaredNorm() - f.squaredNorm()) < 1e-10 * f.squaredNorm());
    }
}

TEST_CASE("example framelets")
{
    const Chain c = toy_chain();
    const GeneratorSet gs = toy_generators();
    const double h = 1 / std::sqrt(2.0);
    for (const ChainBasis& b : {onbc(c), honbc(c)}) {
        const std::uint32_t a2 = c.ancestors(2)[0], a1 = c.ancestors(1)[0];
        CHECK(sign_free_diff(synth_decimated(b, c, gs, 2, a2, 0), {h, h, 0, 0, 0, 0}) < 1e-12);
        CHECK(sign_free_diff(synth_decimated(b, c, gs, 2, 0, 2), {0.5, -0.5, 0, 0, 0, 0}) < 1e-12);
        const Vec phi1 = synth_decimated(b, c, gs, 1, a1, 0);
        CHECK(std::abs(std::abs(phi1[0]) - (1.0 / 3 + std::sqrt(2.0) / 6)) < 1e-12);
        CHECK(std::abs(phi1[0]) == doctest::Approx(0.56904).epsilon(1e-5));
    }
}

TEST_CASE("example system is tight with 18 elements")
{
    const Chain c = toy_chain();
    const FrameletSystem fs = build_framelet_system(onbc(c), c, toy_generators(), 0);
    CHECK(fs.size() == 18);
    const FrameBounds fb = frame_bounds(fs);
    CHECK(std::abs(fb.lower - 1) < 1e-10);
    CHECK(std::abs(fb.upper - 1) < 1e-10);
    const Eigen::MatrixXd M = dense_analysis_matrix(fs);
    CHECK((M.transpose() * M - Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-12);

    FrameletSystem cut = fs;
    cut.elements.erase(cut.elements.begin());
    cut.rows = fs.rows.bottomRows(17);
    CHECK(frame_bounds(cut).lower < 1 - 1e-3);
}

TEST_CASE("an orthonormal basis is a unit tight frame")
{
    const Chain c = toy_chain();
    FrameletSystem fs;
    fs.rows = onbc(c).dense().transpose();
    for (std::uint32_t v = 0; v < 6; ++v) fs.elements.push_back({3, 0, v});
    const FrameBounds fb = frame_bounds(fs);
    CHECK(fs.size() == 6);
    CHECK(std::abs(fb.lower - 1) < 1e-12);
    CHECK(std::abs(fb.upper - 1) < 1e-12);
}

TEST_CASE("starting at the finest level gives deltas")
{
    const Chain c = toy_chain();
    const GeneratorSet gs = generators_from_filter_bank(preset_filter_bank(2, c.sizes(), {}));
    const FrameletSystem fs = build_framelet_system(honbc(c), c, gs, c.depth());
    CHECK(fs.size() == 6);
    CHECK((fs.matrix() - Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("quadrature rules")
{
    const Chain c = toy_chain();
    for (const ChainBasis& b : {onbc(c), honbc(c)}) {
        CHECK(quadrature_check(b, c, 2, 1) < 1e-15);
        CHECK(quadrature_check(b, c, 3, 6) < 1e-15);
        for (std::size_t j = 0; j <= 3; ++j) CHECK(quadrature_check(b, c, j, c.size(j)) < 1e-10);
    }
    const Chain r = gtest::random_chain(150, {60, 20, 5}, 8);
    for (const ChainBasis& b : {onbc(r), honbc(r)})
        for (std::size_t j = 0; j <= r.depth(); ++j) CHECK(quadrature_check(b, r, j, r.size(j)) < 1e-10);
}

TEST_CASE("random chain with a two-high preset is tight")
{
    const Chain c = gtest::random_chain(40, {16, 6}, 9);
    const GeneratorSet gs = generators_from_filter_bank(preset_filter_bank(2, c.sizes(), {}));
    for (std::size_t J1 = 0; J1 <= c.depth(); ++J1) {
        const FrameletSystem fs = build_framelet_system(honbc(c), c, gs, J1);
        std::size_t want = c.size(J1);
        for (std::size_t j = J1; j < c.depth(); ++j) want += 2 * c.size(j + 1);
        CHECK(fs.size() == want);
        const FrameBounds fb = frame_bounds(fs);
        CHECK(std::abs(fb.lower - 1) < 1e-9);
        CHECK(std::abs(fb.upper - 1) < 1e-9);
    }
}
