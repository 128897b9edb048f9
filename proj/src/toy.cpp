#include "gframelet/toy.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "gframelet/framelets.hpp"
#include "gframelet/transforms.hpp"

namespace gframelet {

namespace {

const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s6 = std::sqrt(6.0);

double signed_distance(const Eigen::VectorXd& x, const Eigen::VectorXd& y)
{
    return std::min((x - y).cwiseAbs().maxCoeff(), (x + y).cwiseAbs().maxCoeff());
}

Eigen::VectorXd to_eigen(const Vec& v) { return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())); }

}  // namespace

Graph toy_graph()
{
    return build_graph(6, {{0, 1, 1}, {0, 2, 1}, {2, 3, 1}, {2, 4, 1}, {2, 5, 1}, {3, 4, 1}}, {"a", "b", "c", "d", "e", "f"});
}

Chain toy_chain()
{
    ChainOptions opt;
    opt.centers = {std::vector<std::uint32_t>{0, 2, 5}, std::vector<std::uint32_t>{0, 1}, std::vector<std::uint32_t>{0}};
    return build_chain(toy_graph(), {3, 2, 1}, 0, opt);
}

GeneratorSet toy_generators()
{
    GeneratorSet gs;
    gs.n = 6;
    gs.level_sizes = {1, 2, 3, 6};
    gs.lambda = {0, 1, 2, 3, 4, 5};
    gs.scale = {1, 2, 3, 6};
    gs.label = "toy";
    const double h = 1 / s2;
    gs.alpha = {{1, 0, 0, 0, 0, 0}, {1, h, 0, 0, 0, 0}, {1, 1, h, 0, 0, 0}, {1, 1, 1, 1, 1, 1}};
    gs.beta = {{{0, h, 0, 0, 0, 0}},
               {{0, h, h, 0, 0, 0}},
               {{0, 0, h, 1, h, 0}, {0, 0, 0, 0, h, 1}},
               {}};
    return gs;
}

Eigen::MatrixXd toy_printed_basis()
{
    Eigen::MatrixXd U(6, 6);
    U.col(0) << 1, 1, 1, 1, 1, 1;
    U.col(0) /= s6;
    U.col(1) << 2, 2, -1, -1, -1, -1;
    U.col(1) /= 2 * s3;
    U.col(2) << 0, 0, -1, -1, -1, 3;
    U.col(2) /= 2 * s3;
    U.col(3) << 0, 0, 2, -1, -1, 0;
    U.col(3) /= s6;
    U.col(4) << 0, 0, 0, 1, -1, 0;
    U.col(4) /= s2;
    U.col(5) << 1, -1, 0, 0, 0, 0;
    U.col(5) /= s2;
    return U;
}

Eigen::MatrixXd toy_printed_weights(std::size_t level)
{
    if (level == 1) {
        Eigen::MatrixXd W(2, 2);
        W << 2, 1, 1, 8;
        return W / 12.0;
    }
    if (level == 2) {
        Eigen::MatrixXd W(3, 3);
        W << 2, 1, 0, 1, 6, 1, 0, 1, 0;
        return W / 12.0;
    }
    throw std::out_of_range("toy_printed_weights: only levels 1 and 2 are printed");
}

std::vector<ToyTableRow> toy_printed_tables()
{
    auto same = [](std::string name, std::size_t j, std::uint32_t pass, std::uint32_t v, Vec vals) {
        return ToyTableRow{std::move(name), j, pass, v, vals, vals};
    };
    std::vector<ToyTableRow> t;
    const double X = s3 / 4 + s6 / 24, Y = s3 / 4 - s6 / 8, Z = 0.25 - s2 / 8, W = 0.25 + 3 * s2 / 8;
    t.push_back(same("phi_2[a]", 2, 0, 0, {1 / s2, 1 / s2, 0, 0, 0, 0}));
    t.push_back(same("phi_2[c]", 2, 0, 2, {0, 0, X, X, X, Y}));
    t.push_back(same("phi_2[f]", 2, 0, 5, {0, 0, Z, Z, Z, W}));
    const double p = s2 / 24;
    t.push_back(same("psi1_2[a]", 2, 1, 0, {0, 0, 0, 0, 0, 0}));
    t.push_back(same("psi1_2[b]", 2, 1, 1, {0, 0, 0, 0, 0, 0}));
    t.push_back(same("psi1_2[c]", 2, 1, 2, {0, 0, 2.0 / 3 + p, -1.0 / 3 + p, -1.0 / 3 + p, -s2 / 8}));
    t.push_back(same("psi1_2[d]", 2, 1, 3, {0, 0, -1.0 / 3 + p, 1.0 / 6 + 7 * p, 1.0 / 6 - 5 * p, -s2 / 8}));
    t.push_back(same("psi1_2[e]", 2, 1, 4, {0, 0, -1.0 / 3 + p, 1.0 / 6 - 5 * p, 1.0 / 6 + 7 * p, -s2 / 8}));
    t.push_back(same("psi1_2[f]", 2, 1, 5, {0, 0, -s2 / 8, -s2 / 8, -s2 / 8, 3 * s2 / 8}));
    t.push_back(same("psi2_2[a]", 2, 2, 0, {0.5, -0.5, 0, 0, 0, 0}));
    t.push_back(same("psi2_2[b]", 2, 2, 1, {-0.5, 0.5, 0, 0, 0, 0}));
    t.push_back(same("psi2_2[c]", 2, 2, 2, {0, 0, 0, 0, 0, 0}));
    t.push_back(same("psi2_2[d]", 2, 2, 3, {0, 0, 0, s2 / 4, -s2 / 4, 0}));
    t.push_back(same("psi2_2[e]", 2, 2, 4, {0, 0, 0, -s2 / 4, s2 / 4, 0}));
    t.push_back(same("psi2_2[f]", 2, 2, 5, {0, 0, 0, 0, 0, 0}));

    const double A = 1.0 / 3 + s2 / 6, B = -1.0 / 6 + s2 / 6, C = 1.0 / 3 - s2 / 6, D = 1.0 / 3 + s2 / 12;
    t.push_back(same("phi_1[a]", 1, 0, 0, {A, A, B, B, B, B}));
    t.push_back(same("phi_1[c]", 1, 0, 2, {C, C, D, D, D, D}));
    t.push_back(same("psi1_1[a]", 1, 1, 0, {1.0 / 3, 1.0 / 3, -1.0 / 6, -1.0 / 6, -1.0 / 6, -1.0 / 6}));
    const double q = s6 / 12;
    t.push_back(same("psi1_1[c]", 1, 1, 2, {-q, -q, q, q, q, -q}));
    const double r = s2 / 12;
    t.push_back({"psi1_1[f]", 1, 1, 5, {-r, -s6 / 12, -r, -r, -r, -5 * r}, {-r, -r, -r, -r, -r, 5 * r}});

    const double u = 1 / s6;
    t.push_back({"phi_0[a]", 0, 0, 0, {1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 6}, {u, u, u, u, u, u}});
    t.push_back(same("psi1_0[a]", 0, 1, 0, {1.0 / 3, 1.0 / 3, -1.0 / 6, -1.0 / 6, -1.0 / 6, -1.0 / 6}));
    t.push_back(same("psi1_0[c]", 0, 1, 2, {-s2 / 6, -s2 / 6, s2 / 12, s2 / 12, s2 / 12, s2 / 12}));
    return t;
}

bool ToyReport::ok() const
{
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

ToyReport run_toy_demo()
{
    const auto t0 = std::chrono::steady_clock::now();
    ToyReport rep;
    auto check = [&](std::string name, double dev, double tol, std::string note = {}) {
        rep.checks.push_back({std::move(name), dev, tol, dev <= tol, std::move(note)});
    };

    const Graph g = toy_graph();
    const GraphStats st = graph_stats(g);
    {
        const Vec want{2, 1, 4, 2, 2, 1};
        double dev = std::abs(st.volume - 12);
        for (std::size_t i = 0; i < 6; ++i) dev = std::max(dev, std::abs(st.degrees[i] - want[i]));
        check("degrees (2,1,4,2,2,1), vol 12", dev, 0.0);
    }

    const Chain c = toy_chain();
    check("chain valid", static_cast<double>(validate_chain(c).size()), 0.0);
    check("level sizes 1/2/3/6", c.sizes() == std::vector<std::size_t>{1, 2, 3, 6} ? 0.0 : 1.0, 0.0);
    for (std::size_t j : {1, 2}) {
        const Eigen::MatrixXd W = toy_printed_weights(j);
        double dev = 0.0;
        for (Eigen::Index u = 0; u < W.rows(); ++u)
            for (Eigen::Index v = 0; v < W.cols(); ++v)
                dev = std::max(dev, std::abs(c.levels[j].weight(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v)) - W(u, v)));
        check("w_" + std::to_string(j) + " matches printed matrix", dev, 1e-12);
    }
    {
        const Eigen::MatrixXd L1 = laplacian(c.levels[1]);
        Eigen::MatrixXd want(2, 2);
        want << 1, -1, -1, 1;
        want /= 12.0;
        check("L_1 = (1/12)[[1,-1],[-1,1]]", (L1 - want).cwiseAbs().maxCoeff(), 1e-12);
    }

    const Eigen::MatrixXd P = toy_printed_basis();
    const ChainBasis lap = onbc(c);
    const ChainBasis haar = honbc(c);
    for (const ChainBasis* b : {&lap, &haar}) {
        const Eigen::MatrixXd U = b->dense();
        double dev = 0.0;
        for (Eigen::Index l = 0; l < 6; ++l) dev = std::max(dev, signed_distance(U.col(l), P.col(l)));
        check(to_string(b->kind) + " basis reproduces u_1..u_6 (up to sign)", dev, 1e-10);
    }

    const GeneratorSet gs = toy_generators();
    const TightnessReport tr = check_tightness(gs);
    check("toy generators: UEP, nesting, level-J identities", tr.worst(), 1e-15);

    const auto tables = toy_printed_tables();
    for (const auto& row : tables) {
        const std::size_t k = row.pass == 0 ? row.level : std::min(row.level + 1, c.depth());
        const std::uint32_t node = c.ancestors(k)[row.vertex];
        const Eigen::VectorXd got = to_eigen(synth_decimated(lap, c, gs, row.level, node, row.pass));
        const double dev = signed_distance(got, to_eigen(row.expected));
        std::string note;
        if (row.expected != row.printed) {
            const double off = signed_distance(got, to_eigen(row.printed));
            char buf[160];
            std::snprintf(buf, sizeof buf, "printed table entry differs from recomputation by %.6f", off);
            note = buf;
        }
        check("table row " + row.name, dev, 1e-10, note);
    }

    const FrameletSystem fs = build_framelet_system(lap, c, gs, 0);
    check("framelet count 18", std::abs(static_cast<double>(fs.size()) - 18), 0.0);
    const FrameBounds fbnd = frame_bounds(fs);
    check("frame bounds (1,1)", std::max(std::abs(fbnd.lower - 1), std::abs(fbnd.upper - 1)), 1e-10);
    {
        // Substituting the printed low-pass row breaks the tight-frame identity for f = 1.
        Eigen::MatrixXd M = fs.matrix();
        M.row(0).setConstant(1.0 / 6);
        const Eigen::VectorXd one = Eigen::VectorXd::Ones(6);
        const double energy = (M * one).squaredNorm();
        char buf[160];
        std::snprintf(buf, sizeof buf, "with the printed 1/6 row, |Wf|^2 = %.6f for f = 1 (|f|^2 = 6)", energy);
        rep.checks.push_back({"printed phi_0 row is not tight", std::abs(energy - 6), 0.0, std::abs(energy - 6) > 1e-3, buf});
    }

    const FilterBank fb = derive_filter_bank(gs);
    std::mt19937_64 rng(7);
    std::normal_distribution<double> nd;
    for (std::size_t J1 = 0; J1 <= 3; ++J1) {
        const FrameletSystem sys = build_framelet_system(lap, c, gs, J1);
        double dev = 0.0, rt = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            Vec f(6);
            for (double& x : f) x = nd(rng);
            const Coefficients co = decompose(fb, lap, c, f, J1);
            const Vec flat = co.flatten();
            dev = std::max(dev, (sys.matrix() * to_eigen(f) - to_eigen(flat)).cwiseAbs().maxCoeff());
            const Vec back = reconstruct(fb, lap, c, co);
            rt = std::max(rt, (to_eigen(back) - to_eigen(f)).cwiseAbs().maxCoeff());
        }
        check("fast decomposition = framelet inner products, J1=" + std::to_string(J1), dev, 1e-10);
        check("round trip, J1=" + std::to_string(J1), rt, 1e-10);
    }

    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    check("runtime below 1 s", rep.seconds, 1.0);
    return rep;
}

void print_toy_report(const ToyReport& r, std::ostream& os)
{
    char buf[256];
    for (const auto& c : r.checks) {
        std::snprintf(buf, sizeof buf, "%s  %-55s dev=%.3e tol=%.1e", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.deviation,
                      c.tolerance);
        os << buf;
        if (!c.note.empty()) os << "  (" << c.note << ")";
        os << "\n";
    }
    std::snprintf(buf, sizeof buf, "%s: %zu checks in %.3f s\n", r.ok() ? "toy example OK" : "toy example FAILED",
                  r.checks.size(), r.seconds);
    os << buf;
}

}  // namespace gframelet
