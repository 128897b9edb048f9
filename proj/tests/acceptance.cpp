// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "gframelet/basis.hpp"
#include "gframelet/bench.hpp"
#include "gframelet/framelets.hpp"
#include "gframelet/toy.hpp"
#include "gframelet/transforms.hpp"
#include "support.hpp"

using namespace gframelet;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, const char* title, bool pass, const std::string& detail)
{
    std::printf("[%s] %d %s: %s\n", pass ? "PASS" : "FAIL", id, title, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

struct Case {
    Chain chain;
    ChainBasis haar;
    ChainBasis lap;
    std::vector<std::string> specs;
};

// 20 random connected graphs with 50..500 vertices and 3..5 levels.
std::vector<Case> make_suite()
{
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<std::size_t> nd(50, 500);
    std::uniform_int_distribution<int> ld(3, 5);
    std::uniform_real_distribution<double> keep(0.3, 0.5);
    std::vector<Case> out;
    for (int g = 0; g < 20; ++g) {
        const std::size_t n = nd(rng);
        const int levels = ld(rng);
        std::vector<std::size_t> sizes;
        std::size_t cur = n;
        for (int l = 1; l < levels; ++l) {
            cur = std::max<std::size_t>(1, std::min(cur - 1, static_cast<std::size_t>(std::llround(cur * keep(rng)))));
            sizes.push_back(cur);
        }
        Case c;
        c.chain = build_chain(random_connected_graph(n, 3.0 + (g % 4), 1000 + g), sizes, 77 + g);
        c.haar = honbc(c.chain);
        c.lap = onbc(c.chain);
        c.specs = {"preset:1high", "preset:2high", "preset:3high", "generator:r" + std::to_string(1 + g % 3)};
        out.push_back(std::move(c));
    }
    return out;
}

void toy()
{
    const ToyReport r = run_toy_demo();
    std::size_t failed = 0;
    for (const ToyCheck& c : r.checks) failed += !c.pass;
    report(1, "worked example (weights, basis, framelet tables, tightness)", r.ok() && r.seconds < 1.0,
           fmt("%.0f checks, %.0f failed, %.4f s", static_cast<double>(r.checks.size()), static_cast<double>(failed),
               r.seconds));
}

void reconstruction(const std::vector<Case>& suite)
{
    const auto t0 = Clock::now();
    double worst = 0.0;
    std::size_t runs = 0;
    for (std::size_t g = 0; g < suite.size(); ++g) {
        const Case& c = suite[g];
        const ChainBasis& b = g % 2 ? c.lap : c.haar;
        for (const std::string& spec : c.specs) {
            const FilterBank fb = filter_bank_from_spec(spec, c.chain.sizes());
            for (std::uint64_t s = 0; s < 100; ++s) {
                const Vec f = gtest::random_signal(c.chain.n(), 1000 * g + s);
                const Coefficients co = decompose(fb, b, c.chain, f, s % (c.chain.depth() + 1));
                worst = std::max(worst, gtest::max_diff(reconstruct(fb, b, c.chain, co), f));
                ++runs;
            }
        }
    }
    const double secs = since(t0);
    report(2, "perfect reconstruction", worst <= 1e-9 && secs < 60,
           fmt("max error %.2e over %.0f round trips, %.1f s", worst, static_cast<double>(runs), secs));
}

void tightness(const std::vector<Case>& suite)
{
    double filt = 0.0, quad = 0.0, bounds = 0.0;
    std::size_t dense = 0;
    for (const Case& c : suite) {
        for (const std::string& spec : c.specs) filt = std::max(filt, check_tightness(filter_bank_from_spec(spec, c.chain.sizes())).worst());
        for (const ChainBasis* b : {&c.haar, &c.lap})
            for (std::size_t j = 0; j <= c.chain.depth(); ++j)
                quad = std::max(quad, quadrature_check(*b, c.chain, j, c.chain.size(j)));
        if (c.chain.n() > 200) continue;
        for (const std::string& spec : c.specs) {
            const GeneratorSet gs = generators_from_filter_bank(filter_bank_from_spec(spec, c.chain.sizes()));
            for (const ChainBasis* b : {&c.haar, &c.lap}) {
                const FrameBounds fb = frame_bounds(build_framelet_system(*b, c.chain, gs, 0));
                bounds = std::max({bounds, std::abs(fb.lower - 1), std::abs(fb.upper - 1)});
                ++dense;
            }
        }
    }
    report(3, "tightness, quadrature and frame bounds", filt <= 1e-12 && quad <= 1e-10 && bounds <= 1e-9 && dense > 0,
           fmt("filter identities %.2e, quadrature %.2e, |bounds - 1| %.2e on %.0f dense systems", filt, quad, bounds,
               static_cast<double>(dense)));
}

void fast_vs_dense(const std::vector<Case>& suite)
{
    double dft = 0.0, dec = 0.0;
    for (std::size_t g = 0; g < suite.size(); ++g) {
        const Case& c = suite[g];
        const Vec f = gtest::random_signal(c.chain.n(), 5000 + g);
        for (const ChainBasis* b : {&c.haar, &c.lap}) {
            const Eigen::MatrixXd U = b->dense();
            dft = std::max(dft, gtest::max_diff(U.transpose() * gtest::ev(f), fast_dft(*b, f)));
            dft = std::max(dft, gtest::max_diff(U * gtest::ev(f), fast_adft(*b, f)));
            if (c.chain.n() > 200) continue;
            for (const std::string& spec : c.specs) {
                const FilterBank fb = filter_bank_from_spec(spec, c.chain.sizes());
                for (std::size_t J1 = 0; J1 <= c.chain.depth(); ++J1) {
                    const FrameletSystem fs = build_framelet_system(*b, c.chain, generators_from_filter_bank(fb), J1);
                    dec = std::max(dec, gtest::max_diff(fs.matrix() * gtest::ev(f), decompose(fb, *b, c.chain, f, J1).flatten()));
                }
            }
        }
    }
    report(4, "fast transforms versus dense oracles", dft <= 1e-11 && dec <= 1e-9,
           fmt("DFT/ADFT %.2e (N <= 500), decomposition %.2e (N <= 200)", dft, dec));
}

void complexity()
{
    const auto t0 = Clock::now();
    BenchOptions o;
    const BenchResult r = run_bench(o);
    BenchOptions pair;
    pair.sizes = {1000, 2000};
    const BenchResult d = run_bench(pair);
    const double ratio = static_cast<double>(d.rows[1].adds + d.rows[1].muls) / static_cast<double>(d.rows[0].adds + d.rows[0].muls);
    bool dft_ok = true;
    for (const BenchRow& row : r.rows) dft_ok = dft_ok && row.dft_ops <= 2 * (4 * row.n + 2 * row.level_total);
    const double slope = r.count_slope.value_or(NAN);
    const double secs = since(t0);
    report(5, "linear complexity (Haar, operation counts)",
           slope >= 0.8 && slope <= 1.3 && ratio >= 1.6 && ratio <= 2.4 && dft_ok && secs < 300,
           fmt("count slope %.3f, doubling ratio %.3f, wall-clock slope %.3f (not gated), %.1f s", slope, ratio,
               r.time_slope.value_or(NAN), secs));
}

void haar(const std::vector<Case>& suite)
{
    std::size_t spoc_max = 0;
    double restricted = 0.0;
    auto scan = [&](const ChainBasis& b, const Chain& c) {
        const BasisReport r = verify_chain_basis(b, c);
        spoc_max = std::max(spoc_max, r.spoc_max);
        for (double x : r.restricted) restricted = std::max(restricted, x);
    };
    for (const Case& c : suite) scan(c.haar, c.chain);
    const Chain t = toy_chain();
    scan(honbc(t), t);
    report(6, "Haar sparsity and restricted orthonormality", spoc_max <= 2 && restricted <= 1e-10,
           fmt("max spoc %.0f, restricted orthonormality %.2e", static_cast<double>(spoc_max), restricted));
}

void undecimated()
{
    const Graph g = random_connected_graph(30, 4.0, 30);
    const EigenPairs ep = sqrt_eigenpairs(g);
    const UndecimatedGenerators ug = standard_undecimated(0.5, 2, ep.values.back(), 0);
    const UndecimatedReport cond = check_undecimated(ug, ep.values);
    const FrameletSystem fs = build_undecimated_system(ep, ug);
    double parseval = 0.0;
    for (std::uint64_t s = 0; s < 50; ++s) {
        const Eigen::VectorXd f = gtest::ev(gtest::random_signal(30, 300 + s));
        parseval = std::max(parseval, std::abs((fs.matrix() * f).squaredNorm() - f.squaredNorm()));
    }
    UndecimatedGenerators one;
    one.alpha = [](double) { return 1.0; };
    const double delta = (build_undecimated_system(ep, one).matrix() - Eigen::MatrixXd::Identity(30, 30)).cwiseAbs().maxCoeff();
    report(7, "undecimated system", parseval <= 1e-10 && delta <= 1e-12 && cond.two_scale <= 1e-12 && cond.normalization <= 1e-12,
           fmt("Parseval %.2e on 50 signals, all-pass low pass vs delta %.2e, generator conditions %.2e/%.2e", parseval,
               delta, cond.two_scale, cond.normalization));
}

void convolution(const std::vector<Case>& suite)
{
    double worst = 0.0;
    std::size_t tried = 0;
    for (std::size_t g = 0; g < suite.size(); ++g) {
        const Case& c = suite[g];
        if (c.chain.n() > 200) continue;
        const FilterBank fb = filter_bank_from_spec(c.specs[g % 4], c.chain.sizes());
        const Eigen::MatrixXd M = dense_analysis_matrix(build_framelet_system(c.haar, c.chain, generators_from_filter_bank(fb), 0));
        const Vec f = gtest::random_signal(c.chain.n(), 7000 + g), w = gtest::random_signal(c.chain.n(), 8000 + g);
        const Eigen::VectorXd want = M.transpose() * ((M * gtest::ev(w)).cwiseProduct(M * gtest::ev(f)));
        worst = std::max(worst, gtest::max_diff(want, framelet_convolve(fb, c.haar, c.chain, w, f)));
        ++tried;
    }
    report(8, "framelet convolution versus dense oracle (network accuracies out of scope)", worst <= 1e-9 && tried > 0,
           fmt("max deviation %.2e on %.0f graphs", worst, static_cast<double>(tried)));
}

}  // namespace

int main()
{
    const auto t0 = Clock::now();
    toy();
    const std::vector<Case> suite = make_suite();
    reconstruction(suite);
    tightness(suite);
    fast_vs_dense(suite);
    complexity();
    haar(suite);
    undecimated();
    convolution(suite);
    std::printf("%d of 8 criteria failed, %.1f s total\n", failures, since(t0));
    return failures == 0 ? 0 : 1;
}
