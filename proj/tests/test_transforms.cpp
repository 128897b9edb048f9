#include <doctest.h>

#include <cmath>

#include "gframelet/basis.hpp"
#include "gframelet/framelets.hpp"
#include "gframelet/toy.hpp"
#include "gframelet/transforms.hpp"
#include "support.hpp"

using namespace gframelet;

TEST_CASE("fast transform of simple signals on the example chain")
{
    const Chain c = toy_chain();
    const ChainBasis b = onbc(c);
    const Vec one = fast_dft(b, Vec(6, 1.0));
    CHECK(gtest::max_diff(one, {std::sqrt(6.0), 0, 0, 0, 0, 0}) < 1e-14);

    const Vec da = gtest::sorted_abs(fast_dft(b, {1, 0, 0, 0, 0, 0}));
    const Vec want = gtest::sorted_abs({1 / std::sqrt(6.0), 1 / std::sqrt(3.0), 0, 0, 0, 1 / std::sqrt(2.0)});
    CHECK(gtest::max_diff(da, want) < 1e-14);
    const Vec raw = fast_dft(b, {1, 0, 0, 0, 0, 0});
    CHECK(std::abs(raw[1]) == doctest::Approx(1 / std::sqrt(3.0)));
    CHECK(std::abs(raw[5]) == doctest::Approx(1 / std::sqrt(2.0)));

    const Vec e1 = fast_adft(b, {1, 0, 0, 0, 0, 0});
    for (double x : e1) CHECK(x == doctest::Approx(1 / std::sqrt(6.0)));
}

TEST_CASE("fast transforms agree with the dense basis")
{
    const Chain c = gtest::random_chain(500, {200, 80, 30, 8}, 21);
    for (const ChainBasis& b : {honbc(c), onbc(c)}) {
        const Eigen::MatrixXd U = b.dense();
        for (std::uint64_t s = 0; s < 3; ++s) {
            const Vec f = gtest::random_signal(500, s);
            CHECK(gtest::max_diff(U.transpose() * gtest::ev(f), fast_dft(b, f)) < 1e-11);
            CHECK(gtest::max_diff(U * gtest::ev(f), fast_adft(b, f)) < 1e-11);
            CHECK(gtest::max_diff(fast_adft(b, fast_dft(b, f)), f) < 1e-11);
        }
    }
}

TEST_CASE("weighted level transforms")
{
    const Chain c = toy_chain();
    const ChainBasis b = onbc(c);
    // j = 2: c = (sqrt 6, 0, 0) gives sqrt 2 on the node of a
    const Vec v = level_adft(b, c, 2, {std::sqrt(6.0), 0, 0});
    CHECK(v[c.ancestors(2)[0]] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(gtest::max_abs(level_adft(b, c, 2, {0, 0, 0})) == 0);
    CHECK(gtest::max_abs(level_dft(b, c, 2, {0, 0, 0})) == 0);

    // the coarsest block of f = 1 is sqrt 6 times the constant framelet
    const Vec top = level_dft(b, c, 0, {std::sqrt(6.0)});
    CHECK(top[0] == doctest::Approx(std::sqrt(6.0)));

    for (std::size_t j = 0; j <= 3; ++j) {
        const Vec x = gtest::random_signal(c.size(j), j);
        CHECK(gtest::max_diff(level_dft(b, c, j, level_adft(b, c, j, x)), x) < 1e-11);
    }
}

TEST_CASE("one-level steps")
{
    const Chain c = toy_chain();
    const FilterBank toy = derive_filter_bank(toy_generators());
    // e_3 is dropped by the low pass at level 3 and carried by the first high pass
    const LevelSplit s = decompose_level(toy, 3, {0, 0, 0, 1, 0, 0});
    CHECK(s.low == Vec{0, 0, 0});
    CHECK(s.high.size() == 2);
    CHECK(s.high[0][3] == doctest::Approx(1.0));
    CHECK(s.high[1][3] == 0);

    const LevelSplit z = decompose_level(toy, 3, Vec(6, 0.0));
    CHECK(gtest::max_abs(z.low) == 0);
    for (const Vec& h : z.high) CHECK(gtest::max_abs(h) == 0);

    const Vec x = gtest::random_signal(6, 3);
    const LevelSplit t = decompose_level(toy, 3, x);
    CHECK(gtest::max_diff(reconstruct_level(toy, 3, t.low, t.high), x) < 1e-15);

    const FilterBank fb = preset_filter_bank(3, {30, 80, 200}, {});
    for (std::size_t j = 1; j <= 2; ++j) {
        Vec in = gtest::random_signal(fb.level_sizes[j], j);
        const LevelSplit ls = decompose_level(fb, j, in);
        CHECK(ls.low.size() == fb.level_sizes[j - 1]);
        CHECK(gtest::max_diff(reconstruct_level(fb, j, ls.low, ls.high), in) < 1e-12);
    }
}

TEST_CASE("decomposing the constant signal on the example chain")
{
    const Chain c = toy_chain();
    const ChainBasis b = onbc(c);
    const FilterBank fb = derive_filter_bank(toy_generators());
    const Coefficients co = decompose(fb, b, c, Vec(6, 1.0), 2);
    CHECK(co.low.size() == 3);
    CHECK(std::abs(co.low[c.ancestors(2)[0]]) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    for (const auto& lvl : co.high)
        for (const Vec& h : lvl) CHECK(gtest::max_abs(h) < 1e-14);
    CHECK(co.energy() == doctest::Approx(6.0).epsilon(1e-14));

    // matches inner products with explicit framelets
    const FrameletSystem fs = build_framelet_system(b, c, toy_generators(), 2);
    CHECK(gtest::max_diff(fs.matrix() * Eigen::VectorXd::Ones(6), co.flatten()) < 1e-14);
}

TEST_CASE("finest start level returns the signal")
{
    const Chain c = toy_chain();
    const ChainBasis b = honbc(c);
    const FilterBank fb = preset_filter_bank(1, c.sizes(), {});
    const Vec f = gtest::random_signal(6, 1);
    const Coefficients co = decompose(fb, b, c, f, 3);
    CHECK(gtest::max_diff(co.low, f) < 1e-14);
    CHECK(co.count() == 6);
}

TEST_CASE("round trips and Parseval on random chains")
{
    const Chain c = gtest::random_chain(300, {120, 40, 10}, 31);
    const ChainBasis b = honbc(c);
    for (const char* spec : {"preset:1high", "preset:2high", "preset:3high", "generator:r2"}) {
        const FilterBank fb = filter_bank_from_spec(spec, c.sizes());
        double worst = 0.0, energy = 0.0;
        for (std::uint64_t s = 0; s < 100; ++s) {
            const Vec f = gtest::random_signal(300, s);
            const Coefficients co = decompose(fb, b, c, f, s % 4);
            worst = std::max(worst, gtest::max_diff(reconstruct(fb, b, c, co), f));
            double ef = 0.0;
            for (double x : f) ef += x * x;
            energy = std::max(energy, std::abs(co.energy() - ef));
        }
        CHECK(worst <= 1e-9);
        CHECK(energy <= 1e-9);
    }
}

TEST_CASE("zero coefficients and a delta signal")
{
    const Chain c = toy_chain();
    const ChainBasis b = onbc(c);
    const FilterBank fb = derive_filter_bank(toy_generators());
    Coefficients co = decompose(fb, b, c, {0, 0, 1, 0, 0, 0}, 0);
    CHECK(gtest::max_diff(reconstruct(fb, b, c, co), {0, 0, 1, 0, 0, 0}) < 1e-10);
    co.low.assign(co.low.size(), 0.0);
    for (auto& lvl : co.high)
        for (Vec& h : lvl) h.assign(h.size(), 0.0);
    CHECK(gtest::max_abs(reconstruct(fb, b, c, co)) == 0);
}

TEST_CASE("fast decomposition matches explicit framelet inner products")
{
    const Chain c = gtest::random_chain(200, {80, 30, 8}, 41);
    for (const ChainBasis& b : {honbc(c), onbc(c)}) {
        const FilterBank fb = preset_filter_bank(2, c.sizes(), {});
        const FrameletSystem fs = build_framelet_system(b, c, generators_from_filter_bank(fb), 1);
        const Vec f = gtest::random_signal(200, 2);
        CHECK(gtest::max_diff(fs.matrix() * gtest::ev(f), decompose(fb, b, c, f, 1).flatten()) < 1e-9);
    }
}

TEST_CASE("framelet convolution")
{
    const Chain c = gtest::random_chain(50, {20, 6}, 51);
    const ChainBasis b = honbc(c);
    const FilterBank fb = preset_filter_bank(2, c.sizes(), {});
    const Vec f = gtest::random_signal(50, 1), g = gtest::random_signal(50, 2);
    const Eigen::MatrixXd M = dense_analysis_matrix(build_framelet_system(b, c, generators_from_filter_bank(fb), 0));
    const Eigen::VectorXd want = M.transpose() * ((M * gtest::ev(g)).cwiseProduct(M * gtest::ev(f)));
    CHECK(gtest::max_diff(want, framelet_convolve(fb, b, c, g, f)) < 1e-9);
    CHECK(gtest::max_abs(framelet_convolve(fb, b, c, Vec(50, 0.0), f)) == 0);
}

TEST_CASE("mismatched artifacts are refused")
{
    const Chain c = toy_chain();
    const Chain other = gtest::random_chain(6, {3, 1}, 1);
    const ChainBasis b = honbc(c);
    const FilterBank fb = preset_filter_bank(1, c.sizes(), {});
    CHECK_THROWS_AS(decompose(fb, honbc(other), c, Vec(6, 1.0), 0), std::invalid_argument);
    CHECK_THROWS_AS(decompose(preset_filter_bank(1, {2, 6}, {}), b, c, Vec(6, 1.0), 0), std::invalid_argument);
    CHECK_THROWS_AS(decompose(fb, b, c, Vec(5, 1.0), 0), std::invalid_argument);
    CHECK_THROWS_AS(decompose(fb, b, c, Vec(6, 1.0), 4), std::invalid_argument);

    Coefficients co = decompose(fb, b, c, Vec(6, 1.0), 0);
    CHECK_THROWS_AS(reconstruct(preset_filter_bank(2, c.sizes(), {}), b, c, co), std::invalid_argument);
    co.high[1][0].pop_back();
    CHECK_THROWS_AS(reconstruct(fb, b, c, co), std::invalid_argument);
}

TEST_CASE("operation counts grow with the graph")
{
    const Chain c = gtest::random_chain(200, {80, 30, 8}, 61);
    const ChainBasis b = honbc(c);
    OpCounter ops;
    fast_dft(b, gtest::random_signal(200, 1), &ops);
    std::size_t total = 0;
    for (std::size_t s : c.sizes()) total += s;
    CHECK(ops.total() > 0);
    CHECK(ops.total() <= 2 * (4 * 200 + 2 * total));
}
