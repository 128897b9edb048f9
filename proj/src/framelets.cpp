#include "gframelet/framelets.hpp"

#include <cmath>
#include <stdexcept>

namespace gframelet {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

VectorXd as_eigen(const Vec& v) { return Eigen::Map<const VectorXd>(v.data(), static_cast<Index>(v.size())); }

Vec as_vec(const VectorXd& v) { return Vec(v.data(), v.data() + v.size()); }

// Row p holds the average of u_l over the members of level-k node p.
MatrixXd cluster_average(const MatrixXd& U, const Chain& c, std::size_t k)
{
    const auto mem = c.members(k);
    MatrixXd A = MatrixXd::Zero(static_cast<Index>(mem.size()), U.cols());
    for (std::size_t p = 0; p < mem.size(); ++p) {
        for (auto v : mem[p]) A.row(static_cast<Index>(p)) += U.row(v);
        A.row(static_cast<Index>(p)) /= static_cast<double>(mem[p].size());
    }
    return A;
}

VectorXd sqrt_weights(const Chain& c, std::size_t k)
{
    VectorXd w(static_cast<Index>(c.size(k)));
    for (std::size_t p = 0; p < c.size(k); ++p) w(static_cast<Index>(p)) = std::sqrt(static_cast<double>(c.cluster_size[k][p]));
    return w;
}

// diag(sqrt w) A diag(h) U^T: one framelet per row.
MatrixXd decimated_block(const MatrixXd& U, const MatrixXd& A, const VectorXd& sw, const Vec& h)
{
    return sw.asDiagonal() * (A * as_eigen(h).asDiagonal()) * U.transpose();
}

const Vec& generator(const GeneratorSet& gs, std::size_t j, std::uint32_t pass)
{
    if (j > gs.depth()) throw std::out_of_range("framelet level out of range");
    if (pass == 0) return gs.alpha[j];
    if (pass > gs.beta[j].size()) throw std::out_of_range("high pass index out of range");
    return gs.beta[j][pass - 1];
}

void check_sizes(const ChainBasis& b, const Chain& c, const GeneratorSet& gs)
{
    if (b.n != c.n() || gs.n != c.n() || gs.level_sizes != c.sizes())
        throw std::invalid_argument("framelets: basis, chain and generators disagree on sizes");
}

}  // namespace

Vec synth_undecimated(const EigenPairs& ep, const UndecimatedGenerators& ug, int j, std::uint32_t u, std::uint32_t pass)
{
    if (pass > ug.beta.size()) throw std::out_of_range("high pass index out of range");
    const auto& fn = pass == 0 ? ug.alpha : ug.beta[pass - 1];
    const double s = std::ldexp(1.0, j);
    const Index N = ep.vectors.rows();
    if (u >= static_cast<std::size_t>(N)) throw std::out_of_range("vertex out of range");
    VectorXd h(N);
    for (Index l = 0; l < N; ++l) h(l) = fn(ep.values[static_cast<std::size_t>(l)] / s);
    VectorXd out = ep.vectors * (h.asDiagonal() * ep.vectors.row(u).transpose());
    return as_vec(out);
}

FrameletSystem build_undecimated_system(const EigenPairs& ep, const UndecimatedGenerators& ug)
{
    FrameletSystem fs;
    fs.kind = SystemKind::undecimated;
    fs.J1 = ug.J1;
    const Index N = ep.vectors.rows();
    const MatrixXd& U = ep.vectors;
    const std::size_t blocks = 1 + static_cast<std::size_t>(ug.J - ug.J1 + 1) * ug.beta.size();
    fs.rows.resize(static_cast<Index>(blocks) * N, N);
    Index r = 0;
    auto add = [&](const std::function<double(double)>& fn, int j, std::uint32_t pass) {
        const double s = std::ldexp(1.0, j);
        VectorXd h(N);
        for (Index l = 0; l < N; ++l) h(l) = fn(ep.values[static_cast<std::size_t>(l)] / s);
        fs.rows.middleRows(r, N) = U * h.asDiagonal() * U.transpose();
        for (Index u = 0; u < N; ++u) fs.elements.push_back({j, pass, static_cast<std::uint32_t>(u)});
        r += N;
    };
    add(ug.alpha, ug.J1, 0);
    for (int j = ug.J1; j <= ug.J; ++j)
        for (std::uint32_t n = 0; n < ug.beta.size(); ++n) add(ug.beta[n], j, n + 1);
    return fs;
}

Vec synth_decimated(const ChainBasis& b, const Chain& c, const GeneratorSet& gs, std::size_t j, std::uint32_t node,
                    std::uint32_t pass)
{
    check_sizes(b, c, gs);
    const Vec& h = generator(gs, j, pass);
    const std::size_t k = pass == 0 ? j : std::min(j + 1, c.depth());
    if (node >= c.size(k)) throw std::out_of_range("node is not on the translation level");
    const MatrixXd U = b.dense();
    const auto mem = c.members(k)[node];
    VectorXd avg = VectorXd::Zero(U.cols());
    for (auto v : mem) avg += U.row(v).transpose();
    avg /= static_cast<double>(mem.size());
    const double sw = std::sqrt(static_cast<double>(c.cluster_size[k][node]));
    VectorXd out = sw * (U * (as_eigen(h).asDiagonal() * avg));
    return as_vec(out);
}

FrameletSystem build_framelet_system(const ChainBasis& b, const Chain& c, const GeneratorSet& gs, std::size_t J1)
{
    check_sizes(b, c, gs);
    const std::size_t J = c.depth();
    if (J1 > J) throw std::invalid_argument("build_framelet_system: J1 out of range");
    const MatrixXd U = b.dense();
    const Index N = U.rows();

    std::vector<MatrixXd> blocks;
    FrameletSystem fs;
    fs.kind = SystemKind::decimated;
    fs.J1 = static_cast<int>(J1);

    blocks.push_back(decimated_block(U, cluster_average(U, c, J1), sqrt_weights(c, J1), gs.alpha[J1]));
    for (std::uint32_t p = 0; p < c.size(J1); ++p) fs.elements.push_back({static_cast<int>(J1), 0, p});
    for (std::size_t j = J1; j <= J; ++j) {
        if (gs.beta[j].empty()) continue;
        const std::size_t k = std::min(j + 1, J);
        const MatrixXd A = cluster_average(U, c, k);
        const VectorXd sw = sqrt_weights(c, k);
        for (std::uint32_t n = 0; n < gs.beta[j].size(); ++n) {
            blocks.push_back(decimated_block(U, A, sw, gs.beta[j][n]));
            for (std::uint32_t p = 0; p < c.size(k); ++p) fs.elements.push_back({static_cast<int>(j), n + 1, p});
        }
    }
    Index M = 0;
    for (const auto& B : blocks) M += B.rows();
    fs.rows.resize(M, N);
    Index r = 0;
    for (const auto& B : blocks) {
        fs.rows.middleRows(r, B.rows()) = B;
        r += B.rows();
    }
    return fs;
}

FrameBounds frame_bounds(const FrameletSystem& fs)
{
    if (fs.rows.rows() == 0) throw std::invalid_argument("frame_bounds: empty system");
    const MatrixXd G = fs.rows.transpose() * fs.rows;
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(G, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("frame_bounds: eigensolver failed");
    return {es.eigenvalues()(0), es.eigenvalues()(es.eigenvalues().size() - 1)};
}

double quadrature_check(const ChainBasis& b, const Chain& c, std::size_t j, std::size_t ell_max)
{
    if (j > c.depth()) throw std::out_of_range("quadrature_check: level out of range");
    if (ell_max > c.size(j)) throw std::invalid_argument("quadrature_check: ell_max exceeds N_j");
    const auto K = static_cast<Index>(c.size(j));
    const auto L = static_cast<Index>(ell_max);
    MatrixXd Y(K, L);
    for (Index l = 0; l < L; ++l) {
        const Vec v = b.level_values(static_cast<std::size_t>(l), j);
        for (Index p = 0; p < K; ++p)
            Y(p, l) = std::sqrt(static_cast<double>(c.cluster_size[j][static_cast<std::size_t>(p)])) * v[static_cast<std::size_t>(p)];
    }
    if (L == 0) return 0.0;
    return (Y.transpose() * Y - MatrixXd::Identity(L, L)).cwiseAbs().maxCoeff();
}

Eigen::MatrixXd dense_analysis_matrix(const FrameletSystem& fs) { return fs.rows; }

}  // namespace gframelet
