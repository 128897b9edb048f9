#include "gframelet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <thread>

namespace gframelet {

double Graph::weight(std::uint32_t u, std::uint32_t v) const
{
    auto first = cols.begin() + static_cast<std::ptrdiff_t>(offsets[u]);
    auto last = cols.begin() + static_cast<std::ptrdiff_t>(offsets[u + 1]);
    auto it = std::lower_bound(first, last, v);
    if (it == last || *it != v) return 0.0;
    return vals[static_cast<std::size_t>(it - cols.begin())];
}

std::vector<Edge> Graph::edges() const
{
    std::vector<Edge> out;
    for (std::uint32_t u = 0; u < n; ++u)
        for (std::size_t k = offsets[u]; k < offsets[u + 1]; ++k)
            if (cols[k] >= u) out.push_back({u, cols[k], vals[k]});
    return out;
}

std::string Graph::label(std::uint32_t v) const
{
    if (v < labels.size() && !labels[v].empty()) return labels[v];
    return std::to_string(v);
}

Graph build_graph(std::size_t n, const std::vector<Edge>& edges, std::vector<std::string> labels)
{
    if (!labels.empty() && labels.size() != n)
        throw std::invalid_argument("label count does not match vertex count");
    struct Entry {
        std::uint32_t r, c;
        double w;
    };
    std::vector<Entry> entries;
    entries.reserve(2 * edges.size());
    for (const auto& e : edges) {
        if (e.u >= n || e.v >= n)
            throw std::invalid_argument("vertex id out of range: (" + std::to_string(e.u) + ", " +
                                        std::to_string(e.v) + ") with n = " + std::to_string(n));
        if (!(e.w >= 0.0) || !std::isfinite(e.w))
            throw std::invalid_argument("negative or non-finite weight on (" + std::to_string(e.u) +
                                        ", " + std::to_string(e.v) + ")");
        entries.push_back({e.u, e.v, e.w});
        if (e.u != e.v) entries.push_back({e.v, e.u, e.w});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return a.r != b.r ? a.r < b.r : a.c < b.c;
    });

    Graph g;
    g.n = n;
    g.labels = std::move(labels);
    g.offsets.assign(n + 1, 0);
    for (std::size_t i = 0; i < entries.size();) {
        std::size_t j = i;
        double w = 0.0;
        while (j < entries.size() && entries[j].r == entries[i].r && entries[j].c == entries[i].c)
            w += entries[j++].w;
        if (w > 0.0) {
            g.cols.push_back(entries[i].c);
            g.vals.push_back(w);
            ++g.offsets[entries[i].r + 1];
        }
        i = j;
    }
    std::partial_sum(g.offsets.begin(), g.offsets.end(), g.offsets.begin());
    return g;
}

Graph graph_from_csr(std::size_t n, std::vector<std::size_t> offsets, std::vector<std::uint32_t> cols,
                     std::vector<double> vals, bool check)
{
    if (offsets.size() != n + 1 || offsets.back() != cols.size() || cols.size() != vals.size())
        throw std::invalid_argument("inconsistent CSR arrays");
    Graph g;
    g.n = n;
    g.offsets = std::move(offsets);
    g.cols = std::move(cols);
    g.vals = std::move(vals);
    if (check) {
        for (std::uint32_t u = 0; u < n; ++u)
            for (std::size_t k = g.offsets[u]; k < g.offsets[u + 1]; ++k) {
                if (g.cols[k] >= n) throw std::invalid_argument("CSR column out of range");
                if (k > g.offsets[u] && g.cols[k] <= g.cols[k - 1])
                    throw std::invalid_argument("CSR columns not strictly increasing");
                if (!(g.vals[k] > 0.0)) throw std::invalid_argument("CSR weight not positive");
                if (g.weight(g.cols[k], u) != g.vals[k])
                    throw std::invalid_argument("CSR adjacency not symmetric");
            }
    }
    return g;
}

GraphStats graph_stats(const Graph& g)
{
    GraphStats s;
    s.degrees.assign(g.n, 0.0);
    for (std::uint32_t u = 0; u < g.n; ++u) {
        double d = 0.0;
        for (std::size_t k = g.offsets[u]; k < g.offsets[u + 1]; ++k) d += g.vals[k];
        s.degrees[u] = d;
        s.volume += d;
    }
    return s;
}

bool is_connected(const Graph& g)
{
    if (g.n == 0) return true;
    std::vector<char> seen(g.n, 0);
    std::vector<std::uint32_t> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        auto u = stack.back();
        stack.pop_back();
        for (std::size_t k = g.offsets[u]; k < g.offsets[u + 1]; ++k) {
            auto v = g.cols[k];
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                stack.push_back(v);
            }
        }
    }
    return count == g.n;
}

namespace {

void dijkstra_into(const Graph& g, std::uint32_t source, double* dist)
{
    const double inf = std::numeric_limits<double>::infinity();
    std::fill(dist, dist + g.n, inf);
    using Item = std::pair<double, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    dist[source] = 0.0;
    heap.push({0.0, source});
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u]) continue;
        for (std::size_t k = g.offsets[u]; k < g.offsets[u + 1]; ++k) {
            auto v = g.cols[k];
            double nd = d + g.vals[k];
            if (nd < dist[v]) {
                dist[v] = nd;
                heap.push({nd, v});
            }
        }
    }
}

}  // namespace

Vec graph_distance(const Graph& g, std::uint32_t source)
{
    if (source >= g.n) throw std::invalid_argument("source vertex out of range");
    Vec d(g.n);
    dijkstra_into(g, source, d.data());
    return d;
}

Vec all_pairs_distance(const Graph& g, unsigned threads)
{
    Vec d(g.n * g.n);
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(g.n, 1))));
    auto work = [&](unsigned t) {
        for (std::size_t s = t; s < g.n; s += threads)
            dijkstra_into(g, static_cast<std::uint32_t>(s), d.data() + s * g.n);
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    return d;
}

Eigen::MatrixXd laplacian(const Graph& g)
{
    const auto n = static_cast<Eigen::Index>(g.n);
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    for (std::uint32_t u = 0; u < g.n; ++u)
        for (std::size_t k = g.offsets[u]; k < g.offsets[u + 1]; ++k) {
            L(u, g.cols[k]) -= g.vals[k];
            L(u, u) += g.vals[k];
        }
    return L;
}

EigenPairs sqrt_eigenpairs(const Graph& g)
{
    if (g.n == 0) throw std::invalid_argument("empty graph");
    if (!is_connected(g)) throw std::invalid_argument("graph is disconnected");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian(g));
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");

    const auto n = static_cast<Eigen::Index>(g.n);
    Eigen::MatrixXd V = solver.eigenvectors();
    Vec raw(g.n);
    for (Eigen::Index i = 0; i < n; ++i) raw[i] = std::max(0.0, solver.eigenvalues()(i));

    for (Eigen::Index c = 0; c < n; ++c) {
        for (Eigen::Index r = 0; r < n; ++r) {
            if (std::abs(V(r, c)) > 1e-12) {
                if (V(r, c) < 0) V.col(c) *= -1.0;
                break;
            }
        }
    }

    // Lexicographic tie-break inside clusters of equal eigenvalues.
    std::vector<Eigen::Index> idx(g.n);
    std::iota(idx.begin(), idx.end(), 0);
    const double scale = std::max(1.0, raw.back());
    auto lex_less = [&](Eigen::Index a, Eigen::Index b) {
        for (Eigen::Index r = 0; r < n; ++r) {
            double d = V(r, a) - V(r, b);
            if (std::abs(d) > 1e-10) return d < 0;
        }
        return a < b;
    };
    for (std::size_t i = 0; i < g.n;) {
        std::size_t j = i + 1;
        while (j < g.n && raw[j] - raw[i] <= 1e-9 * scale) ++j;
        if (j - i > 1) std::sort(idx.begin() + static_cast<std::ptrdiff_t>(i),
                                 idx.begin() + static_cast<std::ptrdiff_t>(j), lex_less);
        i = j;
    }

    EigenPairs ep;
    ep.vectors.resize(n, n);
    ep.raw.resize(g.n);
    ep.values.resize(g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
        ep.vectors.col(static_cast<Eigen::Index>(i)) = V.col(idx[i]);
        ep.raw[i] = raw[i];
    }
    // Connected: the null space is exactly the constants.
    ep.raw[0] = 0.0;
    ep.vectors.col(0).setConstant(1.0 / std::sqrt(static_cast<double>(g.n)));
    for (std::size_t i = 0; i < g.n; ++i) ep.values[i] = std::sqrt(ep.raw[i]);
    return ep;
}

}  // namespace gframelet
