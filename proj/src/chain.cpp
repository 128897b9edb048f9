#include "gframelet/chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <stdexcept>
#include <tuple>

#include "gframelet/hash.hpp"

namespace gframelet {

std::vector<std::size_t> Chain::sizes() const
{
    std::vector<std::size_t> s;
    for (const auto& g : levels) s.push_back(g.n);
    return s;
}

Assignment Chain::ancestors(std::size_t j) const
{
    Assignment a(n());
    std::iota(a.begin(), a.end(), 0u);
    for (std::size_t l = depth(); l > j; --l)
        for (auto& x : a) x = parent[l][x];
    return a;
}

std::vector<std::vector<std::uint32_t>> Chain::members(std::size_t j) const
{
    std::vector<std::vector<std::uint32_t>> m(size(j));
    auto a = ancestors(j);
    for (std::uint32_t v = 0; v < a.size(); ++v) m[a[v]].push_back(v);
    return m;
}

namespace {

std::vector<std::uint32_t> random_centers(std::size_t n, std::size_t k, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<std::uint32_t> pool(n);
    std::iota(pool.begin(), pool.end(), 0u);
    for (std::size_t i = 0; i < k; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(pool[i], pool[pick(rng)]);
    }
    pool.resize(k);
    return pool;
}

// Relabel clusters so that cluster ids increase with their smallest member.
std::vector<std::uint32_t> canonical_relabel(Assignment& a, std::size_t k)
{
    std::vector<std::uint32_t> first(k, std::numeric_limits<std::uint32_t>::max());
    for (std::uint32_t v = 0; v < a.size(); ++v) first[a[v]] = std::min(first[a[v]], v);
    std::vector<std::uint32_t> order(k);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](auto x, auto y) { return first[x] < first[y]; });
    std::vector<std::uint32_t> newid(k);
    for (std::uint32_t i = 0; i < k; ++i) newid[order[i]] = i;
    for (auto& x : a) x = newid[x];
    return newid;
}

void check_assignment(const Assignment& a, std::size_t n, std::size_t k)
{
    if (a.size() != n) throw std::invalid_argument("assignment length does not match graph size");
    std::vector<char> used(k, 0);
    for (auto c : a) {
        if (c >= k) throw std::invalid_argument("cluster id out of range");
        used[c] = 1;
    }
    for (std::size_t c = 0; c < k; ++c)
        if (!used[c]) throw std::invalid_argument("empty cluster " + std::to_string(c));
}

}  // namespace

Graph coarse_graph(const Graph& g, const Assignment& assignment, std::size_t k)
{
    check_assignment(assignment, g.n, k);
    const double vol = graph_stats(g).volume;
    std::vector<std::vector<std::uint32_t>> members(k);
    for (std::uint32_t v = 0; v < g.n; ++v) members[assignment[v]].push_back(v);

    // Upper-triangular rows, accumulated with a sparse accumulator.
    std::vector<std::vector<std::pair<std::uint32_t, double>>> upper(k);
    std::vector<double> acc(k, 0.0);
    std::vector<char> touched(k, 0);
    std::vector<std::uint32_t> list;
    for (std::uint32_t p = 0; p < k; ++p) {
        list.clear();
        for (auto u : members[p])
            for (std::size_t e = g.offsets[u]; e < g.offsets[u + 1]; ++e) {
                auto q = assignment[g.cols[e]];
                if (q < p) continue;
                if (!touched[q]) {
                    touched[q] = 1;
                    list.push_back(q);
                }
                acc[q] += g.vals[e];
            }
        std::sort(list.begin(), list.end());
        for (auto q : list) {
            if (acc[q] > 0.0 && vol > 0.0) upper[p].push_back({q, acc[q] / vol});
            acc[q] = 0.0;
            touched[q] = 0;
        }
    }

    std::vector<std::size_t> offsets(k + 1, 0);
    for (std::uint32_t p = 0; p < k; ++p)
        for (auto [q, w] : upper[p]) {
            ++offsets[p + 1];
            if (q != p) ++offsets[q + 1];
        }
    std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
    std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
    std::vector<std::uint32_t> cols(offsets.back());
    std::vector<double> vals(offsets.back());
    for (std::uint32_t p = 0; p < k; ++p)
        for (auto [q, w] : upper[p]) {
            cols[fill[p]] = q;
            vals[fill[p]++] = w;
            if (q != p) {
                cols[fill[q]] = p;
                vals[fill[q]++] = w;
            }
        }
    return graph_from_csr(k, std::move(offsets), std::move(cols), std::move(vals), false);
}

Coarsening coarsen_once(const Graph& g, std::size_t k, std::uint64_t seed, const CoarsenOptions& opt)
{
    const std::size_t n = g.n;
    if (k < 1 || k >= n)
        throw std::invalid_argument("cluster count " + std::to_string(k) + " must lie in [1, " +
                                    std::to_string(n) + ")");
    if (!is_connected(g)) throw std::invalid_argument("graph is disconnected");

    std::vector<std::uint32_t> centers;
    if (opt.centers) {
        centers = *opt.centers;
        if (centers.size() != k) throw std::invalid_argument("center count does not match k");
        auto sorted = centers;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("duplicate centers");
        if (sorted.back() >= n) throw std::invalid_argument("center out of range");
    } else {
        centers = random_centers(n, k, seed);
    }

    const Vec D = all_pairs_distance(g, opt.threads);
    auto dist = [&](std::size_t a, std::size_t b) { return D[a * n + b]; };

    Assignment asg(n, 0);
    int it = 0;
    for (; it < opt.max_iterations; ++it) {
        for (std::size_t v = 0; v < n; ++v) {
            std::uint32_t best = 0;
            for (std::uint32_t c = 1; c < k; ++c)
                if (dist(v, centers[c]) < dist(v, centers[best])) best = c;
            asg[v] = best;
        }
        for (std::uint32_t c = 0; c < k; ++c) asg[centers[c]] = c;

        std::vector<std::vector<std::uint32_t>> cl(k);
        for (std::uint32_t v = 0; v < n; ++v) cl[asg[v]].push_back(v);
        for (std::uint32_t c = 0; c < k; ++c) {
            if (!cl[c].empty()) continue;
            std::size_t big = 0;
            for (std::size_t d = 1; d < k; ++d)
                if (cl[d].size() > cl[big].size()) big = d;
            auto far = std::max_element(cl[big].begin(), cl[big].end(), [&](auto x, auto y) {
                return dist(x, centers[big]) < dist(y, centers[big]);
            });
            std::uint32_t v = *far;
            cl[big].erase(far);
            cl[c].push_back(v);
            asg[v] = c;
            centers[c] = v;
        }

        bool changed = false;
        for (std::uint32_t c = 0; c < k; ++c) {
            std::uint32_t best = cl[c].front();
            double best_sum = std::numeric_limits<double>::infinity();
            for (auto x : cl[c]) {
                double s = 0.0;
                for (auto y : cl[c]) s += dist(x, y);
                if (s < best_sum) {
                    best_sum = s;
                    best = x;
                }
            }
            if (best != centers[c]) {
                centers[c] = best;
                changed = true;
            }
        }
        if (!changed) {
            ++it;
            break;
        }
    }
    // Reassign against the final centers so the partition is consistent with them.
    for (std::size_t v = 0; v < n; ++v) {
        std::uint32_t best = 0;
        for (std::uint32_t c = 1; c < k; ++c)
            if (dist(v, centers[c]) < dist(v, centers[best])) best = c;
        asg[v] = best;
    }
    for (std::uint32_t c = 0; c < k; ++c) asg[centers[c]] = c;

    Coarsening out;
    auto newid = canonical_relabel(asg, k);
    out.centers.assign(k, 0);
    for (std::uint32_t c = 0; c < k; ++c) out.centers[newid[c]] = centers[c];
    out.assignment = std::move(asg);
    out.iterations = it;
    out.coarse = coarse_graph(g, out.assignment, k);
    if (!g.labels.empty())
        for (auto c : out.centers) out.coarse.labels.push_back(g.label(c));
    return out;
}

namespace {

Chain assemble(const Graph& g, std::vector<Graph> coarse, const std::vector<Assignment>& asg)
{
    Chain c;
    const std::size_t L = coarse.size();
    c.levels.reserve(L + 1);
    for (std::size_t i = L; i-- > 0;) c.levels.push_back(std::move(coarse[i]));
    c.levels.push_back(g);
    c.parent.assign(L + 1, {});
    for (std::size_t i = 0; i < L; ++i) c.parent[L - i] = asg[i];
    c.cluster_size.assign(L + 1, {});
    c.cluster_size[L].assign(g.n, 1);
    for (std::size_t j = L; j >= 1; --j) {
        c.cluster_size[j - 1].assign(c.levels[j - 1].n, 0);
        for (std::size_t q = 0; q < c.levels[j].n; ++q)
            c.cluster_size[j - 1][c.parent[j][q]] += c.cluster_size[j][q];
    }
    c.id = compute_chain_id(c);
    return c;
}

}  // namespace

Chain build_chain(const Graph& g, const std::vector<std::size_t>& sizes, std::uint64_t seed,
                  const ChainOptions& opt)
{
    std::size_t prev = g.n;
    for (auto s : sizes) {
        if (s == 0 || s >= prev)
            throw std::invalid_argument("chain sizes must be positive, strictly decreasing and below |V| = " +
                                        std::to_string(g.n));
        prev = s;
    }
    if (!opt.centers.empty() && opt.centers.size() != sizes.size())
        throw std::invalid_argument("center list count does not match level count");
    if (!is_connected(g)) throw std::invalid_argument("graph is disconnected");

    std::mt19937_64 master(seed);
    std::vector<Graph> coarse;
    std::vector<Assignment> asg;
    const Graph* cur = &g;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        CoarsenOptions co;
        co.threads = opt.threads;
        if (!opt.centers.empty()) co.centers = opt.centers[i];
        auto step_seed = master();
        auto r = coarsen_once(*cur, sizes[i], step_seed, co);
        coarse.push_back(std::move(r.coarse));
        asg.push_back(std::move(r.assignment));
        cur = &coarse.back();
    }
    return assemble(g, std::move(coarse), asg);
}

Chain chain_from_assignments(const Graph& g, const std::vector<Assignment>& assignments)
{
    std::vector<Graph> coarse;
    const Graph* cur = &g;
    for (const auto& a : assignments) {
        std::size_t k = a.empty() ? 0 : *std::max_element(a.begin(), a.end()) + 1;
        if (k >= cur->n) throw std::invalid_argument("assignment does not reduce the node count");
        Graph cg = coarse_graph(*cur, a, k);
        if (!cur->labels.empty()) {
            cg.labels.assign(k, "");
            for (std::uint32_t v = cur->n; v-- > 0;) cg.labels[a[v]] = cur->label(v);
        }
        coarse.push_back(std::move(cg));
        cur = &coarse.back();
    }
    return assemble(g, std::move(coarse), assignments);
}

Assignment voronoi_partition(const Graph& g, std::size_t k, std::uint64_t seed)
{
    if (k < 1 || k >= g.n) throw std::invalid_argument("cluster count out of range");
    auto centers = random_centers(g.n, k, seed);
    const double inf = std::numeric_limits<double>::infinity();
    const auto none = std::numeric_limits<std::uint32_t>::max();
    Vec dist(g.n, inf);
    Assignment owner(g.n, none);
    using Item = std::tuple<double, std::uint32_t, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    for (std::uint32_t c = 0; c < k; ++c) {
        dist[centers[c]] = 0.0;
        owner[centers[c]] = c;
        heap.push({0.0, c, centers[c]});
    }
    while (!heap.empty()) {
        auto [d, c, u] = heap.top();
        heap.pop();
        if (d > dist[u] || c != owner[u]) continue;
        for (std::size_t e = g.offsets[u]; e < g.offsets[u + 1]; ++e) {
            auto v = g.cols[e];
            double nd = d + g.vals[e];
            if (nd < dist[v] || (nd == dist[v] && c < owner[v])) {
                dist[v] = nd;
                owner[v] = c;
                heap.push({nd, c, v});
            }
        }
    }
    for (auto o : owner)
        if (o == none) throw std::invalid_argument("graph is disconnected");
    canonical_relabel(owner, k);
    return owner;
}

std::vector<std::string> validate_chain(const Chain& c)
{
    std::vector<std::string> bad;
    if (c.levels.empty()) return {"chain has no levels"};
    const std::size_t J = c.depth();
    const std::size_t N = c.n();
    if (c.parent.size() != J + 1) bad.push_back("parent map count does not match level count");
    if (c.cluster_size.size() != J + 1) bad.push_back("cluster size table count does not match level count");
    if (!bad.empty()) return bad;

    for (std::size_t j = 1; j <= J; ++j)
        if (c.size(j - 1) >= c.size(j))
            bad.push_back("level sizes not strictly increasing at level " + std::to_string(j));
    for (std::size_t v = 0; v < N; ++v)
        if (c.cluster_size[J][v] != 1) {
            bad.push_back("bottom-level weight differs from 1 at vertex " + std::to_string(v));
            break;
        }
    for (std::size_t j = 0; j <= J; ++j) {
        if (c.cluster_size[j].size() != c.size(j)) {
            bad.push_back("cluster size table length mismatch at level " + std::to_string(j));
            continue;
        }
        std::size_t total = 0;
        for (auto s : c.cluster_size[j]) total += s;
        if (total != N) bad.push_back("partition violated at level " + std::to_string(j) + ": sizes sum to " +
                                      std::to_string(total) + " instead of " + std::to_string(N));
    }
    for (std::size_t j = 1; j <= J; ++j) {
        const auto& p = c.parent[j];
        if (p.size() != c.size(j)) {
            bad.push_back("parent map length mismatch at level " + std::to_string(j));
            continue;
        }
        std::vector<std::size_t> sum(c.size(j - 1), 0);
        bool range_ok = true;
        for (std::size_t q = 0; q < p.size(); ++q) {
            if (p[q] >= c.size(j - 1)) {
                range_ok = false;
                break;
            }
            sum[p[q]] += c.cluster_size[j][q];
        }
        if (!range_ok) {
            bad.push_back("parent id out of range at level " + std::to_string(j));
            continue;
        }
        for (std::size_t r = 0; r < sum.size(); ++r) {
            if (sum[r] == 0) bad.push_back("level " + std::to_string(j - 1) + " node " + std::to_string(r) +
                                           " has no children");
            else if (c.cluster_size[j - 1].size() == sum.size() && sum[r] != c.cluster_size[j - 1][r])
                bad.push_back("nesting violated: level " + std::to_string(j - 1) + " node " + std::to_string(r) +
                              " holds " + std::to_string(c.cluster_size[j - 1][r]) + " vertices but its children hold " +
                              std::to_string(sum[r]));
        }
        // Coarse weights must be the normalized aggregation of the finer level.
        bool onto = std::all_of(sum.begin(), sum.end(), [](auto s) { return s > 0; });
        if (onto) {
            Graph expect = coarse_graph(c.levels[j], p, c.size(j - 1));
            const Graph& got = c.levels[j - 1];
            double worst = 0.0;
            for (std::uint32_t u = 0; u < expect.n; ++u) {
                for (std::size_t e = expect.offsets[u]; e < expect.offsets[u + 1]; ++e)
                    worst = std::max(worst, std::abs(expect.vals[e] - got.weight(u, expect.cols[e])));
                for (std::size_t e = got.offsets[u]; e < got.offsets[u + 1]; ++e)
                    worst = std::max(worst, std::abs(got.vals[e] - expect.weight(u, got.cols[e])));
            }
            if (worst > 1e-12)
                bad.push_back("coarse weights at level " + std::to_string(j - 1) +
                              " differ from the aggregated finer weights by " + std::to_string(worst));
        }
    }
    return bad;
}

std::string compute_chain_id(const Chain& c)
{
    ContentHash h;
    h.text("chain");
    for (std::size_t j = 0; j < c.levels.size(); ++j) {
        const auto& g = c.levels[j];
        h.value(g.n);
        h.values(g.offsets);
        h.values(g.cols);
        h.values(g.vals);
        h.values(c.parent[j]);
    }
    return h.hex();
}

}  // namespace gframelet
