// gframelet - command line front end for chains, bases, filter banks and transforms
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gframelet/basis.hpp"
#include "gframelet/bench.hpp"
#include "gframelet/chain.hpp"
#include "gframelet/filters.hpp"
#include "gframelet/framelets.hpp"
#include "gframelet/io.hpp"
#include "gframelet/mra.hpp"
#include "gframelet/toy.hpp"
#include "gframelet/transforms.hpp"

using namespace gframelet;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kIo = 2;

struct FilterArgs {
    std::string spec = "preset:1high";
    std::string normalize = "on";
    std::string lowpass = "proportional";
    double zeta_a = 0.25;
    double zeta_b1 = 0.25;
    double zeta_b2 = 0.25;
    int m = 1;

    void add(CLI::App* app)
    {
        app->add_option("--filter", spec, "preset:{1,2,3}high, generator:rK, or a filter-bank .json file")
            ->capture_default_str();
        app->add_option("--normalize-filters", normalize, "Normalize preset filters (on|off)")
            ->check(CLI::IsMember({"on", "off"}))
            ->capture_default_str();
        app->add_option("--lowpass", lowpass, "Preset low-pass band (proportional|table)")
            ->check(CLI::IsMember({"proportional", "table"}))
            ->capture_default_str();
        app->add_option("--zeta-a", zeta_a, "Low-pass transition parameter")->capture_default_str();
        app->add_option("--zeta-b1", zeta_b1, "First high-pass transition parameter")->capture_default_str();
        app->add_option("--zeta-b2", zeta_b2, "Second high-pass transition parameter")->capture_default_str();
        app->add_option("--m", m, "Spline order of the bump functions")->capture_default_str();
    }

    PresetOptions preset() const
    {
        PresetOptions o;
        o.zeta_a = zeta_a;
        o.zeta_b1 = zeta_b1;
        o.zeta_b2 = zeta_b2;
        o.m = m;
        o.normalize = normalize == "on";
        o.lowpass = lowpass == "table" ? LowpassForm::table : LowpassForm::proportional;
        return o;
    }

    FilterBank build(const Chain& c) const
    {
        if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") {
            FilterBank fb = parse_filter_bank_json(read_file(spec));
            if (fb.level_sizes != c.sizes()) throw std::invalid_argument("filter bank level sizes do not match the chain");
            return fb;
        }
        return filter_bank_from_spec(spec, c.sizes(), preset());
    }
};

std::string join_sizes(const std::vector<std::size_t>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

// "0,2,5;0,1;0" -> one center list per coarsening step.
std::vector<std::optional<std::vector<std::uint32_t>>> parse_centers(const std::string& text)
{
    std::vector<std::optional<std::vector<std::uint32_t>>> out;
    std::stringstream steps(text);
    std::string step;
    while (std::getline(steps, step, ';')) {
        std::vector<std::uint32_t> ids;
        std::stringstream items(step);
        std::string item;
        while (std::getline(items, item, ',')) {
            try {
                std::size_t used = 0;
                const long v = std::stol(item, &used);
                if (used != item.size() || v < 0) throw std::invalid_argument(item);
                ids.push_back(static_cast<std::uint32_t>(v));
            } catch (const std::exception&) {
                throw std::invalid_argument("--centers: bad vertex id '" + item + "'");
            }
        }
        out.emplace_back(std::move(ids));
    }
    return out;
}

void emit(const std::string& out, const std::string& text)
{
    if (out.empty() || out == "-")
        std::cout << text;
    else
        write_file(out, text);
}

ChainBasis load_basis(const std::string& path, const Chain& c) { return parse_basis_json(read_file(path), c); }

Chain load_chain(const std::string& path, const std::string& graph_path)
{
    Chain c = parse_chain_json(read_file(path));
    if (!graph_path.empty()) {
        const Graph g = load_graph(graph_path);
        const Graph& h = c.graph();
        if (g.n != h.n || g.offsets != h.offsets || g.cols != h.cols || g.vals != h.vals)
            throw std::invalid_argument("graph '" + graph_path + "' is not the finest level of the chain");
    }
    return c;
}

double max_abs_diff(const Eigen::VectorXd& a, const Vec& b)
{
    double m = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[static_cast<std::size_t>(i)]));
    return m;
}

Eigen::VectorXd as_eigen(const Vec& v) { return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())); }

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Decimated tight framelets on graphs"};
    app.require_subcommand(1);

    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::string out;
    std::vector<std::size_t> sizes;
    std::string graph_path, chain_path, basis_path, signal_path, coef_path, centers;
    std::size_t J1 = 0;
    bool verify = false;
    FilterArgs fa;

    auto* chain_cmd = app.add_subcommand("chain", "Build a coarse-grained chain");
    chain_cmd->add_option("graph", graph_path, "Graph file (TSV edge list or .json)")->required();
    chain_cmd->add_option("--sizes", sizes, "Coarse level sizes, finest first")->delimiter(',')->required();
    chain_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
    chain_cmd->add_option("--centers", centers, "Initial centers per step, e.g. 0,2,5;0,1;0");
    chain_cmd->add_option("--threads", threads, "Worker threads for distances")->capture_default_str();
    chain_cmd->add_option("--out", out, "Output chain file (default stdout)");

    std::string kind = "haar";
    auto* basis_cmd = app.add_subcommand("basis", "Build and verify a chain basis");
    basis_cmd->add_option("chain", chain_path, "Chain file")->required();
    basis_cmd->add_option("--kind", kind, "haar|laplacian")->check(CLI::IsMember({"haar", "laplacian"}))->capture_default_str();
    basis_cmd->add_option("--out", out, "Output basis file (default: no file)");

    auto* filt_cmd = app.add_subcommand("filters", "Build a filter bank for a chain and tabulate it");
    filt_cmd->add_option("chain", chain_path, "Chain file")->required();
    fa.add(filt_cmd);
    std::string csv_path;
    filt_cmd->add_option("--csv", csv_path, "Also write filter samples as CSV");
    filt_cmd->add_option("--out", out, "Output filter-bank file (default stdout)");

    auto* tr_cmd = app.add_subcommand("transform", "Fast framelet decomposition or reconstruction");
    tr_cmd->require_subcommand(1);
    auto* dec_cmd = tr_cmd->add_subcommand("decompose", "Signal -> coefficients");
    auto* rec_cmd = tr_cmd->add_subcommand("reconstruct", "Coefficients -> signal");
    for (auto* sc : {dec_cmd, rec_cmd}) {
        sc->add_option("--graph", graph_path, "Graph file, checked against the chain");
        sc->add_option("--chain", chain_path, "Chain file")->required();
        sc->add_option("--basis", basis_path, "Basis file")->required();
        fa.add(sc);
        sc->add_flag("--verify", verify, "Compare against the dense framelet matrix");
        sc->add_option("--out", out, "Output file (default stdout)");
    }
    dec_cmd->add_option("--signal", signal_path, "Signal CSV")->required();
    dec_cmd->add_option("--J1", J1, "Coarsest decomposition level")->capture_default_str();
    rec_cmd->add_option("--coefficients", coef_path, "Coefficients file")->required();

    double tol = 1e-9;
    std::size_t dense_limit = 500;
    auto* ver_cmd = app.add_subcommand("verify", "Check basis, tightness, quadrature and frame bounds");
    ver_cmd->add_option("--chain", chain_path, "Chain file")->required();
    ver_cmd->add_option("--basis", basis_path, "Basis file (default: Haar basis built from the chain)");
    fa.add(ver_cmd);
    ver_cmd->add_option("--J1", J1, "Coarsest level of the framelet system")->capture_default_str();
    ver_cmd->add_option("--tol", tol, "Pass threshold")->capture_default_str();
    ver_cmd->add_option("--dense-limit", dense_limit, "Largest N for the dense frame-bound check")->capture_default_str();

    BenchOptions bo;
    std::string mode = "counts";
    auto* bench_cmd = app.add_subcommand("bench", "Operation counts and timings versus graph size");
    bench_cmd->add_option("--sizes", bo.sizes, "Graph sizes, ascending")->delimiter(',')->capture_default_str();
    bench_cmd->add_option("--ratio", bo.retention, "Fraction of nodes kept per level")->capture_default_str();
    bench_cmd->add_option("--reps", bo.reps, "Timing repetitions")->capture_default_str();
    bench_cmd->add_option("--seed", bo.seed, "Random seed")->capture_default_str();
    bench_cmd->add_option("--mode", mode, "counts|walltime")->check(CLI::IsMember({"counts", "walltime"}))->capture_default_str();
    bench_cmd->add_option("--filter", bo.filter, "Filter-bank spec")->capture_default_str();
    bench_cmd->add_option("--out", out, "Output CSV (default stdout)");

    auto* toy_cmd = app.add_subcommand("demo-toy", "Rebuild the six-vertex example and compare with the printed tables");

    MraOptions mo;
    std::string mra_basis = "haar";
    auto* mra_cmd = app.add_subcommand("mra", "Dump multiresolution coefficients as CSV");
    mra_cmd->add_option("graph", graph_path, "Graph file")->required();
    mra_cmd->add_option("--signal", signal_path, "Signal CSV")->required();
    mra_cmd->add_option("--sizes", mo.sizes, "Coarse level sizes, finest first")->delimiter(',')->required();
    mra_cmd->add_option("--basis", mra_basis, "haar|laplacian")->check(CLI::IsMember({"haar", "laplacian"}))->capture_default_str();
    mra_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
    mra_cmd->add_option("--threads", threads, "Worker threads for distances")->capture_default_str();
    fa.add(mra_cmd);
    mra_cmd->add_option("--out", out, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInvalid;
    }

    try {
        if (chain_cmd->parsed()) {
            const Graph g = load_graph(graph_path);
            ChainOptions co;
            co.threads = threads;
            if (!centers.empty()) co.centers = parse_centers(centers);
            const Chain c = build_chain(g, sizes, seed, co);
            emit(out, chain_to_json(c));
            std::cerr << "levels: " << join_sizes(c.sizes()) << "\nid: " << c.id << "\n";
            return kOk;
        }

        if (basis_cmd->parsed()) {
            const Chain c = parse_chain_json(read_file(chain_path));
            const ChainBasis b = basis_kind_from_string(kind) == BasisKind::haar ? honbc(c) : onbc(c);
            const BasisReport r = verify_chain_basis(b, c);
            double cons = 0.0, restr = 0.0;
            for (double x : r.constancy) cons = std::max(cons, x);
            for (double x : r.restricted) restr = std::max(restr, x);
            std::printf("kind: %s\ngram: %.3e\nconstancy: %.3e\nrestricted: %.3e\nspoc_max: %zu\nspoc_sum: %zu\n",
                        kind.c_str(), r.gram, cons, restr, r.spoc_max, r.spoc_sum);
            if (!out.empty()) write_file(out, basis_to_json(b));
            return r.worst() > 1e-8 ? kInvalid : kOk;
        }

        if (filt_cmd->parsed()) {
            const Chain c = parse_chain_json(read_file(chain_path));
            const FilterBank fb = fa.build(c);
            if (!csv_path.empty()) {
                std::string csv = "level,filter,lambda,value\n";
                char buf[128];
                for (std::size_t j = 1; j <= fb.depth(); ++j) {
                    for (std::size_t l = 0; l < fb.n; ++l) {
                        std::snprintf(buf, sizeof buf, "%zu,a,%zu,%.17g\n", j, l, fb.a[j][l]);
                        csv += buf;
                    }
                    for (std::size_t k = 0; k < fb.highs(j); ++k)
                        for (std::size_t l = 0; l < fb.n; ++l) {
                            std::snprintf(buf, sizeof buf, "%zu,b%zu,%zu,%.17g\n", j, k + 1, l, fb.b[j][k][l]);
                            csv += buf;
                        }
                }
                write_file(csv_path, csv);
            }
            emit(out, filter_bank_to_json(fb));
            const TightnessReport t = check_tightness(fb);
            std::cerr << "filter: " << fb.label << "\nuep: " << t.uep << "\nnesting: " << t.nesting
                      << "\nlevel_J: " << t.level_j << "\n";
            return kOk;
        }

        if (dec_cmd->parsed() || rec_cmd->parsed()) {
            const Chain c = load_chain(chain_path, graph_path);
            const ChainBasis b = load_basis(basis_path, c);
            const FilterBank fb = fa.build(c);
            const bool dense_check = verify;
            if (dec_cmd->parsed()) {
                const Vec f = parse_signal_csv(read_file(signal_path));
                if (f.size() != c.n())
                    throw std::invalid_argument("signal has " + std::to_string(f.size()) + " values, graph has " + std::to_string(c.n()));
                const Coefficients co = decompose(fb, b, c, f, J1);
                emit(out, coefficients_to_json(co));
                std::fprintf(stderr, "coefficients: %zu\nenergy: %.12g\n", co.count(), co.energy());
                for (std::size_t j = co.J1; j < co.high.size(); ++j)
                    for (std::size_t n = 0; n < co.high[j].size(); ++n) {
                        double m = 0.0;
                        for (double x : co.high[j][n]) m = std::max(m, std::abs(x));
                        std::fprintf(stderr, "detail j=%zu n=%zu max|c|=%.3e\n", j, n + 1, m);
                    }
                if (dense_check) {
                    const FrameletSystem fs = build_framelet_system(b, c, generators_from_filter_bank(fb), J1);
                    const double dev = max_abs_diff(fs.matrix() * as_eigen(f), co.flatten());
                    std::fprintf(stderr, "dense deviation: %.3e\n", dev);
                    if (dev > 1e-9) return kInvalid;
                }
            } else {
                const Coefficients co = parse_coefficients_json(read_file(coef_path));
                const Vec f = reconstruct(fb, b, c, co);
                emit(out, signal_to_csv(f));
                if (dense_check) {
                    const FrameletSystem fs = build_framelet_system(b, c, generators_from_filter_bank(fb), co.J1);
                    const double dev = max_abs_diff(fs.matrix().transpose() * as_eigen(co.flatten()), f);
                    std::fprintf(stderr, "dense deviation: %.3e\n", dev);
                    if (dev > 1e-9) return kInvalid;
                }
            }
            return kOk;
        }

        if (ver_cmd->parsed()) {
            const Chain c = parse_chain_json(read_file(chain_path));
            const ChainBasis b = basis_path.empty() ? honbc(c) : load_basis(basis_path, c);
            const FilterBank fb = fa.build(c);
            bool ok = true;
            auto line = [&](const char* name, double dev, double limit) {
                const bool pass = dev <= limit;
                ok = ok && pass;
                std::printf("%-12s %.3e  %s\n", name, dev, pass ? "ok" : "FAIL");
            };
            const BasisReport br = verify_chain_basis(b, c);
            line("basis", br.worst(), 1e-8);
            const TightnessReport t = check_tightness(fb);
            line("uep", t.uep, tol);
            line("nesting", t.nesting, tol);
            line("level_J", t.level_j, tol);
            double quad = 0.0;
            for (std::size_t j = 0; j <= c.depth(); ++j) quad = std::max(quad, quadrature_check(b, c, j, c.size(j)));
            line("quadrature", quad, tol);
            if (c.n() <= dense_limit) {
                const FrameBounds fbd = frame_bounds(build_framelet_system(b, c, generators_from_filter_bank(fb), J1));
                line("frame_lower", std::abs(fbd.lower - 1.0), tol);
                line("frame_upper", std::abs(fbd.upper - 1.0), tol);
            } else {
                std::printf("%-12s skipped (N > %zu)\n", "frame", dense_limit);
            }
            return ok ? kOk : kInvalid;
        }

        if (bench_cmd->parsed()) {
            bo.mode = mode == "walltime" ? BenchMode::walltime : BenchMode::counts;
            const BenchResult r = run_bench(bo);
            emit(out, r.csv());
            auto fmt = [](const std::optional<double>& s) {
                if (!s) return std::string("n/a");
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.4f", *s);
                return std::string(buf);
            };
            std::cerr << "count slope: " << fmt(r.count_slope) << "\ntime slope: " << fmt(r.time_slope) << "\n";
            return kOk;
        }

        if (toy_cmd->parsed()) {
            const ToyReport r = run_toy_demo();
            print_toy_report(r, std::cout);
            return r.ok() ? kOk : kInvalid;
        }

        if (mra_cmd->parsed()) {
            const Graph g = load_graph(graph_path);
            const Vec f = parse_signal_csv(read_file(signal_path));
            mo.filter = fa.spec;
            mo.preset = fa.preset();
            mo.basis = basis_kind_from_string(mra_basis);
            mo.seed = seed;
            mo.threads = threads;
            const MraResult r = run_mra(g, f, mo, out);
            std::printf("levels: %s\n", join_sizes(r.level_sizes).c_str());
            for (const auto& blk : r.blocks) std::printf("%-16s %8zu  max|c|=%.3e\n", blk.name.c_str(), blk.length, blk.max_abs);
            std::printf("energy error: %.3e\n", r.energy_error);
            return kOk;
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    }
    return kOk;
}
