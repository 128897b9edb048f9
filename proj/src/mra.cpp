#include "gframelet/mra.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>

#include "gframelet/io.hpp"
#include "gframelet/transforms.hpp"

namespace gframelet {

namespace {

std::string block_csv(const Vec& v, const std::vector<std::vector<std::uint32_t>>& members)
{
    std::string out = "node,representative,value\n";
    char buf[96];
    for (std::size_t p = 0; p < v.size(); ++p) {
        std::snprintf(buf, sizeof buf, "%zu,%u,%.17g\n", p, members[p].front(), v[p]);
        out += buf;
    }
    return out;
}

double max_abs(const Vec& v)
{
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

MraResult run_mra(const Graph& g, const Vec& f, const MraOptions& opt, const std::string& out_dir)
{
    if (f.size() != g.n) throw std::invalid_argument("signal length " + std::to_string(f.size()) + " differs from graph size " + std::to_string(g.n));
    ChainOptions co;
    co.threads = opt.threads;
    const Chain c = build_chain(g, opt.sizes, opt.seed, co);
    const ChainBasis b = opt.basis == BasisKind::haar ? honbc(c) : onbc(c);
    const FilterBank fb = filter_bank_from_spec(opt.filter, c.sizes(), opt.preset);
    const Coefficients cf = decompose(fb, b, c, f, 0);

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create '" + out_dir + "': " + ec.message());

    MraResult res;
    res.level_sizes = c.sizes();
    write_file(out_dir + "/low.csv", block_csv(cf.low, c.members(0)));
    res.blocks.push_back({"low", 0, 0, cf.low.size(), max_abs(cf.low)});
    for (std::size_t j = 0; j < cf.high.size(); ++j) {
        const auto mem = c.members(j + 1);
        for (std::size_t n = 0; n < cf.high[j].size(); ++n) {
            const std::string name = "detail_j" + std::to_string(j) + "_n" + std::to_string(n + 1);
            write_file(out_dir + "/" + name + ".csv", block_csv(cf.high[j][n], mem));
            res.blocks.push_back({name, j, static_cast<std::uint32_t>(n + 1), cf.high[j][n].size(), max_abs(cf.high[j][n])});
        }
    }

    std::string clusters = "vertex";
    for (std::size_t j = 0; j <= c.depth(); ++j) clusters += ",level" + std::to_string(j);
    clusters += "\n";
    std::vector<Assignment> anc;
    for (std::size_t j = 0; j <= c.depth(); ++j) anc.push_back(c.ancestors(j));
    for (std::size_t v = 0; v < g.n; ++v) {
        clusters += std::to_string(v);
        for (const auto& a : anc) clusters += "," + std::to_string(a[v]);
        clusters += "\n";
    }
    write_file(out_dir + "/clusters.csv", clusters);

    double ef = 0.0;
    for (double x : f) ef += x * x;
    res.energy_error = std::abs(cf.energy() - ef);
    return res;
}

}  // namespace gframelet
