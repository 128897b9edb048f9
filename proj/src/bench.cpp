#include "gframelet/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "gframelet/basis.hpp"
#include "gframelet/filters.hpp"
#include "gframelet/transforms.hpp"

namespace gframelet {

namespace {

std::uint64_t splitmix(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

double unit_weight(std::uint64_t seed, std::uint64_t u, std::uint64_t v)
{
    const std::uint64_t h = splitmix(splitmix(seed) ^ (u << 32 | v));
    return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

Graph dense_random_graph(std::size_t n, std::uint64_t seed)
{
    if (n < 2) throw std::invalid_argument("dense_random_graph: need at least 2 vertices");
    std::vector<std::size_t> offsets(n + 1);
    std::vector<std::uint32_t> cols;
    std::vector<double> vals;
    cols.reserve(n * (n - 1));
    vals.reserve(n * (n - 1));
    for (std::uint32_t u = 0; u < n; ++u) {
        offsets[u] = cols.size();
        for (std::uint32_t v = 0; v < n; ++v) {
            if (u == v) continue;
            cols.push_back(v);
            vals.push_back(unit_weight(seed, std::min(u, v), std::max(u, v)));
        }
    }
    offsets[n] = cols.size();
    return graph_from_csr(n, std::move(offsets), std::move(cols), std::move(vals), false);
}

Graph random_connected_graph(std::size_t n, double avg_degree, std::uint64_t seed)
{
    if (n < 2) throw std::invalid_argument("random_connected_graph: need at least 2 vertices");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> w(0.5, 1.5);
    std::vector<Edge> edges;
    for (std::uint32_t v = 1; v < n; ++v) {
        std::uniform_int_distribution<std::uint32_t> pick(0, v - 1);
        edges.push_back({pick(rng), v, w(rng)});
    }
    const double want = avg_degree * static_cast<double>(n) / 2.0 - static_cast<double>(n - 1);
    std::uniform_int_distribution<std::uint32_t> any(0, static_cast<std::uint32_t>(n - 1));
    for (long k = 0; k < static_cast<long>(want); ++k) {
        const auto u = any(rng), v = any(rng);
        if (u != v) edges.push_back({u, v, w(rng)});
    }
    return build_graph(n, edges);
}

std::vector<std::size_t> bench_level_sizes(std::size_t n, double retention)
{
    if (!(retention > 0 && retention < 1)) throw std::invalid_argument("retention must lie in (0,1)");
    const std::size_t levels = n < 1000 ? 4 : (n <= 2500 ? 5 : 6);
    std::vector<std::size_t> out;
    std::size_t cur = n;
    for (std::size_t i = 1; i < levels; ++i) {
        std::size_t next = static_cast<std::size_t>(std::llround(static_cast<double>(cur) * retention));
        next = std::max<std::size_t>(1, std::min(next, cur - 1));
        if (next >= cur) break;
        out.push_back(next);
        cur = next;
        if (cur == 1) break;
    }
    return out;
}

Chain voronoi_chain(const Graph& g, const std::vector<std::size_t>& sizes, std::uint64_t seed)
{
    std::vector<Assignment> asg;
    Graph cur;
    const Graph* src = &g;
    std::mt19937_64 master(seed);
    for (std::size_t k : sizes) {
        asg.push_back(voronoi_partition(*src, k, master()));
        cur = coarse_graph(*src, asg.back(), k);
        src = &cur;
    }
    return chain_from_assignments(g, asg);
}

std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2) return std::nullopt;
    double mx = 0, my = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    if (sxx == 0) return std::nullopt;
    return sxy / sxx;
}

std::string BenchResult::csv() const
{
    std::string out = "n,levels,adds,muls,dft_ops,level_total,seconds\n";
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%zu,%zu,%llu,%llu,%llu,%zu,%.6g\n", r.n, r.levels,
                      static_cast<unsigned long long>(r.adds), static_cast<unsigned long long>(r.muls),
                      static_cast<unsigned long long>(r.dft_ops), r.level_total, r.seconds);
        out += buf;
    }
    return out;
}

BenchResult run_bench(const BenchOptions& opt)
{
    for (std::size_t i = 1; i < opt.sizes.size(); ++i)
        if (opt.sizes[i] <= opt.sizes[i - 1]) throw std::invalid_argument("bench sizes must be ascending");
    BenchResult res;
    std::vector<double> xs, counts, times;
    for (std::size_t n : opt.sizes) {
        BenchRow row;
        row.n = n;
        Chain c;
        {
            const Graph g = dense_random_graph(n, opt.seed + n);
            c = voronoi_chain(g, bench_level_sizes(n, opt.retention), opt.seed);
        }
        row.levels = c.depth() + 1;
        for (std::size_t s : c.sizes()) row.level_total += s;
        const ChainBasis b = honbc(c);
        const FilterBank fb = filter_bank_from_spec(opt.filter, c.sizes());

        std::mt19937_64 rng(opt.seed);
        std::normal_distribution<double> nd;
        Vec f(n);
        for (double& x : f) x = nd(rng);

        OpCounter dft;
        fast_dft(b, f, &dft);
        row.dft_ops = dft.total();

        double best = 1e300;
        for (int r = 0; r < std::max(1, opt.reps); ++r) {
            OpCounter ops;
            const auto t0 = std::chrono::steady_clock::now();
            const Coefficients co = decompose(fb, b, c, f, 0, &ops);
            reconstruct(fb, b, c, co, &ops);
            best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
            row.adds = ops.adds;
            row.muls = ops.muls;
        }
        row.seconds = best;
        xs.push_back(static_cast<double>(n));
        counts.push_back(static_cast<double>(row.adds + row.muls));
        times.push_back(std::max(best, 1e-9));
        res.rows.push_back(row);
    }
    res.count_slope = loglog_slope(xs, counts);
    res.time_slope = loglog_slope(xs, times);
    return res;
}

}  // namespace gframelet
