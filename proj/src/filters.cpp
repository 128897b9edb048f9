#include "gframelet/filters.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gframelet/hash.hpp"

namespace gframelet {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDivFloor = 1e-14;

double binom(int n, int k)
{
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::string join_sizes(const std::vector<std::size_t>& s)
{
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out;
}

void check_sizes(const std::vector<std::size_t>& sizes)
{
    if (sizes.empty()) throw std::invalid_argument("filters: empty level sizes");
    for (std::size_t j = 0; j < sizes.size(); ++j) {
        if (sizes[j] == 0) throw std::invalid_argument("filters: zero level size");
        if (j > 0 && sizes[j] <= sizes[j - 1])
            throw std::invalid_argument("filters: level sizes must increase toward the finest level");
    }
}

}  // namespace

double spline_poly(int m, double x)
{
    if (m < 1) throw std::invalid_argument("spline_poly: m must be >= 1");
    const double p = (1.0 + x) / 2.0;
    const double q = (1.0 - x) / 2.0;
    double s = 0.0, qk = 1.0;
    for (int k = 0; k < m; ++k) {
        s += binom(m - 1 + k, k) * qk;
        qk *= q;
    }
    return std::pow(p, m) * s;
}

double bump_nu(double cL, double cR, double epsL, double epsR, int m, double xi)
{
    if (!(cL < cR) || !(epsL > 0) || !(epsR > 0) || epsL + epsR > (cR - cL) * (1 + 1e-12))
        throw std::invalid_argument("bump_nu: need cL < cR, eps > 0 and epsL + epsR <= cR - cL");
    if (xi <= cL - epsL || xi >= cR + epsR) return 0.0;
    if (xi < cL + epsL) return std::sin(kPi / 2 * spline_poly(m, (xi - cL) / epsL));
    if (xi <= cR - epsR) return 1.0;
    return std::cos(kPi / 2 * spline_poly(m, (xi - cR) / epsR));
}

double alpha_eps(double eps, int m, double xi)
{
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("alpha_eps: eps must lie in (0,1)");
    const double c = (1 + eps) / 2, w = (1 - eps) / 2;
    return bump_nu(-c, c, w, w, m, xi);
}

double GammaPartition::operator()(std::size_t n, int m, double xi) const
{
    if (n < 1 || n > c.size()) throw std::out_of_range("gamma: index out of range");
    if (n == 1) return bump_nu(-c[0], c[0], e[0], e[0], m, xi);
    return bump_nu(c[n - 2], c[n - 1], e[n - 2], e[n - 1], m, xi);
}

void GammaPartition::validate() const
{
    const std::size_t r = c.size();
    if (r == 0 || e.size() != r) throw std::invalid_argument("gamma: need matching, non-empty c and eps");
    for (std::size_t n = 0; n < r; ++n)
        if (!(e[n] > 0)) throw std::invalid_argument("gamma: eps must be positive");
    for (std::size_t n = 0; n + 1 < r; ++n)
        if (!(c[n] < 1)) throw std::invalid_argument("gamma: interior cut points must be < 1");
    if (std::abs(c[r - 1] - (1 + e[r - 1])) > 1e-12) throw std::invalid_argument("gamma: need c_r = 1 + eps_r");
    for (std::size_t n = 1; n < r; ++n) {
        if (!(c[n - 1] < c[n])) throw std::invalid_argument("gamma: cut points must increase");
        if (e[n - 1] + e[n] > c[n] - c[n - 1] + 1e-12)
            throw std::invalid_argument("gamma: transition bands overlap");
    }
}

GammaPartition GammaPartition::uniform(std::size_t r)
{
    if (r == 0) throw std::invalid_argument("gamma: r must be >= 1");
    GammaPartition g;
    const double h = 1.0 / (2.0 * static_cast<double>(r));
    for (std::size_t n = 1; n < r; ++n) {
        g.c.push_back(static_cast<double>(n) / static_cast<double>(r));
        g.e.push_back(h);
    }
    g.c.push_back(1 + h);
    g.e.push_back(h);
    return g;
}

double default_eps(const std::vector<std::size_t>& level_sizes)
{
    double q = 0.0;
    for (std::size_t j = 0; j + 1 < level_sizes.size(); ++j)
        q = std::max(q, static_cast<double>(level_sizes[j]) / static_cast<double>(level_sizes[j + 1]));
    return 0.5 * (1.0 + q);
}

GeneratorSet build_generators(const std::vector<std::size_t>& level_sizes, const std::vector<std::size_t>& highs,
                              const GeneratorOptions& opt)
{
    check_sizes(level_sizes);
    const std::size_t J = level_sizes.size() - 1;
    if (highs.size() != J + 1) throw std::invalid_argument("build_generators: need one high-pass count per level");
    if (!opt.gamma.empty() && opt.gamma.size() != J + 1)
        throw std::invalid_argument("build_generators: need one gamma partition per level");
    if (!(opt.eps > 0 && opt.eps < 1)) throw std::invalid_argument("build_generators: eps must lie in (0,1)");
    if (opt.m < 1) throw std::invalid_argument("build_generators: m must be >= 1");

    GeneratorSet gs;
    gs.n = level_sizes.back();
    gs.level_sizes = level_sizes;
    gs.m = opt.m;
    gs.eps = opt.eps;
    gs.label = "generator";
    const std::size_t N = gs.n;
    gs.lambda.resize(N);
    for (std::size_t l = 0; l < N; ++l) gs.lambda[l] = static_cast<double>(l);

    for (std::size_t j = 0; j <= J; ++j) gs.scale.push_back(static_cast<double>(level_sizes[j]));
    for (std::size_t j = 0; j < J; ++j)
        if (!(gs.scale[j + 1] > gs.scale[j] / opt.eps))
            throw std::invalid_argument("build_generators: scaling condition Lambda_{j+1} > Lambda_j/eps fails at level " +
                                        std::to_string(j) + " (sizes " + join_sizes(level_sizes) + ")");
    const double virt = gs.scale[J] / opt.eps;

    gs.alpha.assign(J + 1, Vec(N));
    for (std::size_t j = 0; j <= J; ++j)
        for (std::size_t l = 0; l < N; ++l) gs.alpha[j][l] = alpha_eps(opt.eps, opt.m, gs.lambda[l] / gs.scale[j]);

    gs.beta.resize(J + 1);
    for (std::size_t j = 0; j <= J; ++j) {
        if (highs[j] < 1) throw std::invalid_argument("build_generators: each level needs at least one high pass");
        const GammaPartition g = opt.gamma.empty() ? GammaPartition::uniform(highs[j]) : opt.gamma[j];
        g.validate();
        if (g.count() != highs[j]) throw std::invalid_argument("build_generators: gamma count differs from r_j");
        const double next = j < J ? gs.scale[j + 1] : virt;
        gs.beta[j].assign(highs[j], Vec(N));
        for (std::size_t l = 0; l < N; ++l) {
            const double xi = gs.lambda[l] / next;
            const double up = alpha_eps(opt.eps, opt.m, xi);
            const double d = std::sqrt(std::max(0.0, up * up - gs.alpha[j][l] * gs.alpha[j][l]));
            if (d == 0.0) continue;
            for (std::size_t n = 0; n < highs[j]; ++n) gs.beta[j][n][l] = d * g(n + 1, opt.m, xi);
        }
    }
    return gs;
}

FilterBank derive_filter_bank(const GeneratorSet& gs)
{
    FilterBank fb;
    fb.n = gs.n;
    fb.level_sizes = gs.level_sizes;
    fb.label = gs.label;
    const std::size_t J = gs.depth();
    fb.a.assign(J + 1, Vec());
    fb.b.assign(J + 1, {});
    fb.support.assign(J + 1, {});
    for (std::size_t j = 1; j <= J; ++j) {
        const Vec& den = gs.alpha[j];
        fb.a[j].assign(gs.n, 0.0);
        fb.b[j].assign(gs.beta[j - 1].size(), Vec(gs.n, 0.0));
        fb.support[j].assign(gs.n, 0);
        for (std::size_t l = 0; l < gs.n; ++l) {
            const double d = den[l];
            if (d == 0.0) continue;
            if (std::abs(d) < kDivFloor)
                throw std::domain_error("derive_filter_bank: generator value below 1e-14 inside support at level " +
                                        std::to_string(j) + ", index " + std::to_string(l));
            fb.support[j][l] = 1;
            fb.a[j][l] = gs.alpha[j - 1][l] / d;
            for (std::size_t n = 0; n < fb.b[j].size(); ++n) fb.b[j][n][l] = gs.beta[j - 1][n][l] / d;
        }
    }
    fb.id = compute_filter_id(fb);
    return fb;
}

GeneratorSet generators_from_filter_bank(const FilterBank& fb)
{
    const std::size_t J = fb.depth();
    GeneratorSet gs;
    gs.n = fb.n;
    gs.level_sizes = fb.level_sizes;
    gs.label = fb.label;
    gs.lambda.resize(fb.n);
    for (std::size_t l = 0; l < fb.n; ++l) gs.lambda[l] = static_cast<double>(l);
    for (std::size_t s : fb.level_sizes) gs.scale.push_back(static_cast<double>(s));
    gs.alpha.assign(J + 1, Vec(fb.n, 0.0));
    gs.beta.assign(J + 1, {});
    gs.alpha[J].assign(fb.n, 1.0);
    for (std::size_t j = J; j >= 1; --j) {
        gs.beta[j - 1].assign(fb.b[j].size(), Vec(fb.n, 0.0));
        for (std::size_t l = 0; l < fb.n; ++l) {
            gs.alpha[j - 1][l] = fb.a[j][l] * gs.alpha[j][l];
            for (std::size_t n = 0; n < fb.b[j].size(); ++n) gs.beta[j - 1][n][l] = fb.b[j][n][l] * gs.alpha[j][l];
        }
    }
    return gs;
}

namespace {

struct Bump {
    double cR, eR, cL, eL;
    double operator()(int m, double x) const { return bump_nu(cL, cR, eL, eR, m, x); }
};

}  // namespace

FilterBank preset_filter_bank(int n_high, const std::vector<std::size_t>& level_sizes, const PresetOptions& opt)
{
    check_sizes(level_sizes);
    if (n_high < 1 || n_high > 3) throw std::invalid_argument("preset: number of high passes must be 1, 2 or 3");
    for (double z : {opt.zeta_a, opt.zeta_b1, opt.zeta_b2})
        if (!(z > 0 && z < 0.5)) throw std::invalid_argument("preset: zeta parameters must lie in (0, 0.5)");
    if (opt.m < 1) throw std::invalid_argument("preset: m must be >= 1");

    FilterBank fb;
    fb.n = level_sizes.back();
    fb.level_sizes = level_sizes;
    fb.label = "preset:" + std::to_string(n_high) + "high";
    const std::size_t J = level_sizes.size() - 1;
    const std::size_t N = fb.n;
    fb.a.assign(J + 1, Vec());
    fb.b.assign(J + 1, {});
    fb.support.assign(J + 1, {});

    for (std::size_t j = 1; j <= J; ++j) {
        const double Nc = static_cast<double>(level_sizes[j - 1]);
        const double Nf = static_cast<double>(level_sizes[j]);
        Bump a{};
        if (opt.lowpass == LowpassForm::proportional)
            a.cR = 0.5 * Nc * (1 + opt.zeta_a);
        else
            a.cR = 0.5 * (1 + Nc) * opt.zeta_a;
        a.eR = Nc - a.cR;
        a.cL = -a.cR;
        a.eL = a.eR;
        if (!(a.eR > 0) || a.cR - a.eR < 0)
            throw std::invalid_argument("preset: low-pass parameters infeasible at level " + std::to_string(j) +
                                        " (c_R=" + std::to_string(a.cR) + ", eps_R=" + std::to_string(a.eR) + ")");

        std::vector<Bump> hs;
        if (n_high == 1) {
            hs.push_back({2 * Nf, Nf / 4, a.cR, a.eR});
        } else if (n_high == 2) {
            Bump b1{};
            b1.cR = 0.5 * (Nf + Nc) + 0.5 * opt.zeta_b1 * (Nf - Nc);
            b1.eR = Nf - b1.cR;
            b1.cL = a.cR;
            b1.eL = a.eR;
            hs.push_back(b1);
            hs.push_back({2 * Nf, 1.0, b1.cR, b1.eR});
        } else {
            const double N1 = Nc + 0.3 * (Nf - Nc);
            const double N2 = Nc + 0.8 * (Nf - Nc);
            Bump b1{}, b2{};
            b1.cR = 0.5 * (N1 + Nc) + 0.5 * opt.zeta_b1 * (N1 - Nc);
            b1.eR = N1 - b1.cR;
            b1.cL = a.cR;
            b1.eL = a.eR;
            b2.cR = 0.5 * (N2 + N1) + 0.5 * opt.zeta_b2 * (N2 - N1);
            b2.eR = N2 - b2.cR;
            b2.cL = b1.cR;
            b2.eL = b1.eR;
            hs.push_back(b1);
            hs.push_back(b2);
            hs.push_back({2 * Nf, 1.0, b2.cR, b2.eR});
        }

        fb.a[j].assign(N, 0.0);
        fb.b[j].assign(hs.size(), Vec(N, 0.0));
        fb.support[j].assign(N, 0);
        for (std::size_t l = 0; l < level_sizes[j]; ++l) {
            const double x = static_cast<double>(l);
            fb.support[j][l] = 1;
            fb.a[j][l] = a(opt.m, x);
            for (std::size_t n = 0; n < hs.size(); ++n) fb.b[j][n][l] = hs[n](opt.m, x);
            if (opt.normalize) {
                double s = fb.a[j][l] * fb.a[j][l];
                for (std::size_t n = 0; n < hs.size(); ++n) s += fb.b[j][n][l] * fb.b[j][n][l];
                if (s > 0) {
                    const double r = 1.0 / std::sqrt(s);
                    fb.a[j][l] *= r;
                    for (std::size_t n = 0; n < hs.size(); ++n) fb.b[j][n][l] *= r;
                }
            }
        }
    }
    fb.id = compute_filter_id(fb);
    return fb;
}

FilterBank filter_bank_from_spec(const std::string& spec, const std::vector<std::size_t>& level_sizes,
                                 const PresetOptions& opt)
{
    const std::string preset = "preset:", gen = "generator:r";
    if (spec.rfind(preset, 0) == 0) {
        const std::string rest = spec.substr(preset.size());
        if (rest == "1high") return preset_filter_bank(1, level_sizes, opt);
        if (rest == "2high") return preset_filter_bank(2, level_sizes, opt);
        if (rest == "3high") return preset_filter_bank(3, level_sizes, opt);
    } else if (spec.rfind(gen, 0) == 0) {
        const std::string rest = spec.substr(gen.size());
        std::size_t used = 0;
        int k = 0;
        try {
            k = std::stoi(rest, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == rest.size() && k >= 1) {
            check_sizes(level_sizes);
            GeneratorOptions go;
            go.eps = default_eps(level_sizes);
            go.m = opt.m;
            GeneratorSet gs = build_generators(level_sizes, std::vector<std::size_t>(level_sizes.size(), static_cast<std::size_t>(k)), go);
            gs.label = spec;
            return derive_filter_bank(gs);
        }
    }
    throw std::invalid_argument("unknown filter spec '" + spec + "' (expected preset:{1,2,3}high or generator:rK)");
}

double TightnessReport::worst() const { return std::max({uep, nesting, level_j}); }

namespace {

void nesting_into(const GeneratorSet& gs, TightnessReport& rep)
{
    const std::size_t J = gs.depth();
    rep.nesting_per_level.assign(J, 0.0);
    for (std::size_t j = 0; j < J; ++j) {
        double dev = 0.0;
        for (std::size_t l = 0; l < gs.n; ++l) {
            double s = gs.alpha[j][l] * gs.alpha[j][l];
            for (const Vec& b : gs.beta[j]) s += b[l] * b[l];
            dev = std::max(dev, std::abs(s - gs.alpha[j + 1][l] * gs.alpha[j + 1][l]));
        }
        rep.nesting_per_level[j] = dev;
        rep.nesting = std::max(rep.nesting, dev);
    }
    double top = 0.0;
    for (std::size_t l = 0; l < gs.n; ++l) {
        double s = gs.alpha[J][l] * gs.alpha[J][l];
        for (const Vec& b : gs.beta[J]) s += b[l] * b[l];
        top = std::max(top, std::abs(s - 1.0));
    }
    rep.level_j = top;
}

void uep_into(const FilterBank& fb, TightnessReport& rep)
{
    const std::size_t J = fb.depth();
    rep.uep_per_level.assign(J + 1, 0.0);
    for (std::size_t j = 1; j <= J; ++j) {
        double dev = 0.0;
        for (std::size_t l = 0; l < fb.n; ++l) {
            if (!fb.support[j][l]) continue;
            double s = fb.a[j][l] * fb.a[j][l];
            for (const Vec& b : fb.b[j]) s += b[l] * b[l];
            dev = std::max(dev, std::abs(s - 1.0));
        }
        rep.uep_per_level[j] = dev;
        rep.uep = std::max(rep.uep, dev);
    }
}

}  // namespace

TightnessReport check_tightness(const FilterBank& fb)
{
    TightnessReport rep;
    uep_into(fb, rep);
    nesting_into(generators_from_filter_bank(fb), rep);
    return rep;
}

TightnessReport check_tightness(const GeneratorSet& gs)
{
    TightnessReport rep;
    nesting_into(gs, rep);
    uep_into(derive_filter_bank(gs), rep);
    return rep;
}

UndecimatedGenerators standard_undecimated(double eps, int m, double lambda_max, int J1)
{
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("undecimated: eps must lie in (0,1)");
    UndecimatedGenerators ug;
    ug.J1 = J1;
    int J = J1;
    while (lambda_max / std::ldexp(1.0, J + 1) > eps) ++J;
    ug.J = J;
    ug.alpha = [eps, m](double x) { return alpha_eps(eps, m, x); };
    ug.beta.push_back([eps, m](double x) {
        const double lo = alpha_eps(eps, m, x / 2), hi = alpha_eps(eps, m, x);
        return std::sqrt(std::max(0.0, lo * lo - hi * hi));
    });
    return ug;
}

UndecimatedReport check_undecimated(const UndecimatedGenerators& ug, const Vec& lambdas)
{
    UndecimatedReport rep;
    for (double lam : lambdas) {
        for (int j = ug.J1; j < ug.J; ++j) {
            const double s = std::ldexp(1.0, j);
            const double up = ug.alpha(lam / (2 * s));
            double rhs = ug.alpha(lam / s) * ug.alpha(lam / s);
            for (const auto& b : ug.beta) rhs += b(lam / s) * b(lam / s);
            rep.two_scale = std::max(rep.two_scale, std::abs(up * up - rhs));
        }
        const double s = std::ldexp(1.0, ug.J);
        double top = ug.alpha(lam / s) * ug.alpha(lam / s);
        for (const auto& b : ug.beta) top += b(lam / s) * b(lam / s);
        rep.normalization = std::max(rep.normalization, std::abs(top - 1.0));
    }
    return rep;
}

std::string compute_filter_id(const FilterBank& fb)
{
    ContentHash h;
    h.text("filterbank");
    h.value(fb.n);
    h.values(fb.level_sizes);
    for (std::size_t j = 1; j < fb.a.size(); ++j) {
        h.values(fb.a[j]);
        for (const Vec& b : fb.b[j]) h.values(b);
    }
    return h.hex();
}

}  // namespace gframelet
