#include "gframelet/basis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <stdexcept>

#include "gframelet/hash.hpp"

namespace gframelet {

std::string to_string(BasisKind k) { return k == BasisKind::haar ? "haar" : "laplacian"; }

BasisKind basis_kind_from_string(const std::string& s)
{
    if (s == "haar") return BasisKind::haar;
    if (s == "laplacian") return BasisKind::laplacian;
    throw std::invalid_argument("unknown basis kind '" + s + "' (expected haar or laplacian)");
}

std::size_t spoc(const std::vector<double>& v)
{
    std::set<std::string> seen;
    char buf[40];
    for (double x : v) {
        if (x == 0.0) continue;
        std::snprintf(buf, sizeof buf, "%.11e", x);
        seen.insert(buf);
    }
    return seen.size();
}

double BasisReport::worst() const
{
    double w = gram;
    for (double x : constancy) w = std::max(w, x);
    for (double x : restricted) w = std::max(w, x);
    return w;
}

namespace {

void make_layout(const Chain& c, ChainBasis& b)
{
    const std::size_t J = c.depth();
    b.n = c.n();
    b.level_sizes = c.sizes();
    b.order.assign(J + 1, {});
    b.position.assign(J + 1, {});
    b.block.assign(J + 1, {});
    b.ancestor.assign(J + 1, {});
    b.chain_id = c.id;

    std::vector<Vec> deg(J + 1);
    for (std::size_t j = 0; j <= J; ++j) deg[j] = graph_stats(c.levels[j]).degrees;
    auto by_degree = [&](std::size_t j) {
        return [&, j](std::uint32_t x, std::uint32_t y) {
            if (deg[j][x] != deg[j][y]) return deg[j][x] > deg[j][y];
            return x < y;
        };
    };

    b.order[0].resize(c.size(0));
    std::iota(b.order[0].begin(), b.order[0].end(), 0u);
    std::sort(b.order[0].begin(), b.order[0].end(), by_degree(0));
    for (std::size_t j = 1; j <= J; ++j) {
        std::vector<std::vector<std::uint32_t>> kids(c.size(j - 1));
        for (std::uint32_t q = 0; q < c.size(j); ++q) kids[c.parent[j][q]].push_back(q);
        for (auto& k : kids) std::sort(k.begin(), k.end(), by_degree(j));
        b.block[j].reserve(c.size(j - 1) + 1);
        for (auto p : b.order[j - 1]) {
            b.block[j].push_back(static_cast<std::uint32_t>(b.order[j].size()));
            b.order[j].insert(b.order[j].end(), kids[p].begin(), kids[p].end());
        }
        b.block[j].push_back(static_cast<std::uint32_t>(b.order[j].size()));
    }
    for (std::size_t j = 0; j <= J; ++j) {
        b.position[j].resize(c.size(j));
        for (std::uint32_t i = 0; i < b.order[j].size(); ++i) b.position[j][b.order[j][i]] = i;
        b.ancestor[j] = c.ancestors(j);
    }
}

std::vector<double> level_weights(const Chain& c, const ChainBasis& b, std::size_t j)
{
    std::vector<double> m(c.size(j));
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = static_cast<double>(c.cluster_size[j][b.order[j][i]]);
    return m;
}

void push_vector(ChainBasis& b, std::size_t level, std::vector<Run> runs)
{
    std::vector<double> vals;
    for (const auto& r : runs) vals.push_back(r.value);
    b.spoc.push_back(spoc(vals));
    b.level_of.push_back(static_cast<std::uint32_t>(level));
    b.runs.push_back(std::move(runs));
}

// Runs for a vector given by per-position values on [start, start + len).
std::vector<Run> runs_from_values(std::uint32_t start, const std::vector<double>& v)
{
    std::vector<Run> out;
    for (std::uint32_t t = 0; t < v.size(); ++t) {
        if (v[t] == 0.0) continue;
        if (!out.empty() && out.back().end == start + t && out.back().value == v[t])
            ++out.back().end;
        else
            out.push_back({start + t, start + t + 1, v[t]});
    }
    return out;
}

// Size-weighted Haar vectors over K consecutive positions with cluster sizes m.
void haar_block(ChainBasis& b, std::size_t level, std::uint32_t start, const double* m, std::size_t K)
{
    std::vector<double> suffix(K + 1, 0.0);
    for (std::size_t i = K; i-- > 0;) suffix[i] = suffix[i + 1] + m[i];
    for (std::size_t t = 0; t + 1 < K; ++t) {
        const double M = suffix[t + 1];
        const double alpha = std::sqrt(M / (m[t] * (m[t] + M)));
        const double beta = -alpha * m[t] / M;
        auto s = start + static_cast<std::uint32_t>(t);
        push_vector(b, level, {{s, s + 1, alpha}, {s + 1, start + static_cast<std::uint32_t>(K), beta}});
    }
}

void finish(ChainBasis& b)
{
    b.lambda.resize(b.n);
    for (std::size_t l = 0; l < b.n; ++l) b.lambda[l] = static_cast<double>(l);
    b.id = compute_basis_id(b);
}

}  // namespace

ChainBasis honbc(const Chain& c)
{
    auto bad = validate_chain(c);
    if (!bad.empty()) throw std::invalid_argument("invalid chain: " + bad.front());
    ChainBasis b;
    b.kind = BasisKind::haar;
    make_layout(c, b);

    auto m0 = level_weights(c, b, 0);
    push_vector(b, 0, {{0, static_cast<std::uint32_t>(c.size(0)), 1.0 / std::sqrt(static_cast<double>(b.n))}});
    haar_block(b, 0, 0, m0.data(), m0.size());
    for (std::size_t j = 1; j <= c.depth(); ++j) {
        auto m = level_weights(c, b, j);
        for (std::size_t i = 0; i + 1 < b.block[j].size(); ++i) {
            auto s = b.block[j][i];
            haar_block(b, j, s, m.data() + s, b.block[j][i + 1] - s);
        }
    }
    finish(b);
    return b;
}

namespace {

// Orthonormal completion inside one cluster, in coordinates y = u * sqrt(#).
// Candidates are Laplacian eigenvectors of the level graph restricted to the
// cluster, taken in ascending eigenvalue order.
void local_completion(ChainBasis& b, std::size_t level, std::uint32_t start, const double* m, std::size_t K,
                      const Eigen::MatrixXd& E, bool emit_first)
{
    std::vector<Eigen::VectorXd> Q;
    Eigen::VectorXd q0(static_cast<Eigen::Index>(K));
    for (std::size_t t = 0; t < K; ++t) q0(static_cast<Eigen::Index>(t)) = std::sqrt(m[t]);
    q0.normalize();
    Q.push_back(q0);
    auto emit = [&](const Eigen::VectorXd& y) {
        std::vector<double> u(K);
        for (std::size_t t = 0; t < K; ++t) u[t] = y(static_cast<Eigen::Index>(t)) / std::sqrt(m[t]);
        push_vector(b, level, runs_from_values(start, u));
    };
    if (emit_first) emit(q0);

    for (Eigen::Index col = 0; col < E.cols() && Q.size() < K; ++col) {
        Eigen::VectorXd x(static_cast<Eigen::Index>(K));
        for (std::size_t t = 0; t < K; ++t)
            x(static_cast<Eigen::Index>(t)) = E(b.order[level][start + t], col) * std::sqrt(m[t]);
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& q : Q) x -= q.dot(x) * q;
        double r = x.norm();
        if (r <= 1e-8) continue;
        x /= r;
        Q.push_back(x);
        emit(x);
    }
    if (Q.size() < K)
        throw std::runtime_error("rank deficiency: cannot complete the basis at level " + std::to_string(level));
}

Eigen::MatrixXd level_eigenvectors(const Graph& g, std::vector<double>& values)
{
    if (is_connected(g)) {
        auto ep = sqrt_eigenpairs(g);
        values = ep.raw;
        return ep.vectors;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian(g));
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
    values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + g.n);
    return solver.eigenvectors();
}

}  // namespace

ChainBasis onbc(const Chain& c)
{
    auto bad = validate_chain(c);
    if (!bad.empty()) throw std::invalid_argument("invalid chain: " + bad.front());
    ChainBasis b;
    b.kind = BasisKind::laplacian;
    make_layout(c, b);
    b.level_eigenvalues.assign(c.depth() + 1, {});

    for (std::size_t j = 0; j <= c.depth(); ++j) {
        Eigen::MatrixXd E = level_eigenvectors(c.levels[j], b.level_eigenvalues[j]);
        auto m = level_weights(c, b, j);
        if (j == 0) {
            local_completion(b, 0, 0, m.data(), m.size(), E, true);
            continue;
        }
        for (std::size_t i = 0; i + 1 < b.block[j].size(); ++i) {
            auto s = b.block[j][i];
            local_completion(b, j, s, m.data() + s, b.block[j][i + 1] - s, E, false);
        }
    }
    finish(b);
    return b;
}

double ChainBasis::value(std::size_t l, std::size_t j, std::uint32_t node) const
{
    const std::size_t i = level_of[l];
    if (j < i) throw std::invalid_argument("vector is not constant on clusters of this level");
    // Climb through the ancestor tables: pick any member vertex of the node.
    std::uint32_t anc = node;
    if (j > i) {
        auto it = std::find(ancestor[j].begin(), ancestor[j].end(), node);
        if (it == ancestor[j].end()) throw std::invalid_argument("node out of range");
        anc = ancestor[i][static_cast<std::size_t>(it - ancestor[j].begin())];
    }
    const auto pos = position[i][anc];
    const auto& r = runs[l];
    auto it = std::upper_bound(r.begin(), r.end(), pos, [](std::uint32_t p, const Run& x) { return p < x.start; });
    if (it == r.begin()) return 0.0;
    --it;
    return pos < it->end ? it->value : 0.0;
}

std::vector<double> ChainBasis::level_values(std::size_t l, std::size_t j) const
{
    const std::size_t i = level_of[l];
    if (j < i) throw std::invalid_argument("vector is not constant on clusters of this level");
    std::vector<double> pv(level_sizes[i], 0.0);
    for (const auto& r : runs[l])
        for (auto p = r.start; p < r.end; ++p) pv[p] = r.value;
    std::vector<double> out(level_sizes[j], 0.0);
    for (std::size_t v = 0; v < n; ++v) out[ancestor[j][v]] = pv[position[i][ancestor[i][v]]];
    return out;
}

Eigen::MatrixXd ChainBasis::dense() const
{
    const auto N = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd U = Eigen::MatrixXd::Zero(N, N);
    std::vector<double> pv;
    for (std::size_t l = 0; l < n; ++l) {
        const std::size_t i = level_of[l];
        pv.assign(level_sizes[i], 0.0);
        for (const auto& r : runs[l])
            for (auto p = r.start; p < r.end; ++p) pv[p] = r.value;
        for (std::size_t v = 0; v < n; ++v)
            U(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(l)) = pv[position[i][ancestor[i][v]]];
    }
    return U;
}

BasisReport verify_chain_basis(const ChainBasis& b, const Chain& c)
{
    BasisReport rep;
    const Eigen::MatrixXd U = b.dense();
    const auto N = U.rows();
    rep.gram = (U.transpose() * U - Eigen::MatrixXd::Identity(N, N)).cwiseAbs().maxCoeff();

    for (std::size_t j = 0; j <= c.depth(); ++j) {
        const auto Nj = static_cast<Eigen::Index>(c.size(j));
        const auto mem = c.members(j);
        double dev = 0.0;
        Eigen::MatrixXd Y(Nj, Nj);
        for (Eigen::Index p = 0; p < Nj; ++p) {
            const auto& vs = mem[static_cast<std::size_t>(p)];
            for (Eigen::Index l = 0; l < Nj; ++l) {
                double first = U(vs.front(), l), sum = 0.0;
                for (auto v : vs) {
                    dev = std::max(dev, std::abs(U(v, l) - first));
                    sum += U(v, l);
                }
                Y(p, l) = sum / static_cast<double>(vs.size()) * std::sqrt(static_cast<double>(vs.size()));
            }
        }
        rep.constancy.push_back(dev);
        rep.restricted.push_back((Y.transpose() * Y - Eigen::MatrixXd::Identity(Nj, Nj)).cwiseAbs().maxCoeff());
    }
    for (Eigen::Index l = 0; l < N; ++l) {
        std::vector<double> col(U.col(l).data(), U.col(l).data() + N);
        auto s = spoc(col);
        rep.spoc_sum += s;
        rep.spoc_max = std::max(rep.spoc_max, s);
    }
    return rep;
}

std::string compute_basis_id(const ChainBasis& b)
{
    ContentHash h;
    h.text("basis");
    h.text(to_string(b.kind));
    h.text(b.chain_id);
    h.values(b.level_sizes);
    for (std::size_t l = 0; l < b.runs.size(); ++l) {
        h.value(b.level_of[l]);
        for (const auto& r : b.runs[l]) {
            h.value(r.start);
            h.value(r.end);
            h.value(r.value);
        }
    }
    return h.hex();
}

}  // namespace gframelet
