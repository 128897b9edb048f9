#include "gframelet/transforms.hpp"

#include <cmath>
#include <stdexcept>

namespace gframelet {

namespace {

constexpr double kTruncTol = 1e-12;

struct Tally {
    OpCounter* ops;
    void add(std::uint64_t k = 1) const
    {
        if (ops) ops->adds += k;
    }
    void mul(std::uint64_t k = 1) const
    {
        if (ops) ops->muls += k;
    }
};

void check_level(const ChainBasis& b, std::size_t j, std::size_t len, const char* what)
{
    if (j > b.depth()) throw std::out_of_range(std::string(what) + ": level out of range");
    if (len != b.level_sizes[j])
        throw std::invalid_argument(std::string(what) + ": expected length " + std::to_string(b.level_sizes[j]) +
                                    ", got " + std::to_string(len));
}

}  // namespace

Vec chain_dft(const ChainBasis& b, std::size_t j, const Vec& x, OpCounter* ops)
{
    check_level(b, j, x.size(), "chain_dft");
    const Tally t{ops};
    std::vector<Vec> S(j + 1);
    S[j].resize(x.size());
    for (std::size_t p = 0; p < x.size(); ++p) S[j][p] = x[b.order[j][p]];
    for (std::size_t i = j; i >= 1; --i) {
        const auto& blk = b.block[i];
        S[i - 1].resize(b.level_sizes[i - 1]);
        for (std::size_t q = 0; q + 1 < blk.size(); ++q) {
            double s = S[i][blk[q]];
            for (auto p = blk[q] + 1; p < blk[q + 1]; ++p) s += S[i][p];
            t.add(blk[q + 1] - blk[q] - 1);
            S[i - 1][q] = s;
        }
    }
    Vec out(b.level_sizes[j], 0.0);
    Vec P;
    for (std::size_t i = 0; i <= j; ++i) {
        const std::size_t Ni = b.level_sizes[i];
        P.assign(Ni + 1, 0.0);
        for (std::size_t p = 0; p < Ni; ++p) P[p + 1] = P[p] + S[i][p];
        if (Ni > 1) t.add(Ni - 1);
        for (std::size_t l = b.group_begin(i); l < Ni; ++l) {
            double acc = 0.0;
            bool first = true;
            for (const Run& r : b.runs[l]) {
                double seg;
                if (r.end - r.start == 1) {
                    seg = S[i][r.start];
                } else if (r.start == 0) {
                    seg = P[r.end];
                } else {
                    seg = P[r.end] - P[r.start];
                    t.add();
                }
                t.mul();
                if (first) {
                    acc = r.value * seg;
                    first = false;
                } else {
                    acc += r.value * seg;
                    t.add();
                }
            }
            out[l] = acc;
        }
    }
    return out;
}

Vec chain_adft(const ChainBasis& b, std::size_t j, const Vec& c, OpCounter* ops)
{
    check_level(b, j, c.size(), "chain_adft");
    const Tally t{ops};
    std::vector<Vec> T(j + 1);
    for (std::size_t i = 0; i <= j; ++i) {
        const std::size_t Ni = b.level_sizes[i];
        Vec D(Ni + 1, 0.0);
        for (std::size_t l = b.group_begin(i); l < Ni; ++l) {
            for (const Run& r : b.runs[l]) {
                const double v = c[l] * r.value;
                t.mul();
                D[r.start] += v;
                t.add();
                if (r.end < Ni) {
                    D[r.end] -= v;
                    t.add();
                }
            }
        }
        T[i].resize(Ni);
        double run = 0.0;
        for (std::size_t p = 0; p < Ni; ++p) {
            run += D[p];
            T[i][p] = run;
        }
        if (Ni > 1) t.add(Ni - 1);
    }
    for (std::size_t i = 1; i <= j; ++i) {
        const auto& blk = b.block[i];
        for (std::size_t q = 0; q + 1 < blk.size(); ++q) {
            const double up = T[i - 1][q];
            for (auto p = blk[q]; p < blk[q + 1]; ++p) T[i][p] += up;
            t.add(blk[q + 1] - blk[q]);
        }
    }
    Vec x(b.level_sizes[j]);
    for (std::size_t p = 0; p < x.size(); ++p) x[b.order[j][p]] = T[j][p];
    return x;
}

Vec fast_dft(const ChainBasis& b, const Vec& f, OpCounter* ops) { return chain_dft(b, b.depth(), f, ops); }

Vec fast_adft(const ChainBasis& b, const Vec& c, OpCounter* ops) { return chain_adft(b, b.depth(), c, ops); }

Vec level_dft(const ChainBasis& b, const Chain& c, std::size_t j, const Vec& v, OpCounter* ops)
{
    check_level(b, j, v.size(), "level_dft");
    if (j == c.depth()) return chain_dft(b, j, v, ops);
    Vec x(v.size());
    for (std::size_t p = 0; p < v.size(); ++p) x[p] = v[p] * std::sqrt(static_cast<double>(c.cluster_size[j][p]));
    if (ops) ops->muls += v.size();
    return chain_dft(b, j, x, ops);
}

Vec level_adft(const ChainBasis& b, const Chain& c, std::size_t j, const Vec& chat, OpCounter* ops)
{
    Vec x = chain_adft(b, j, chat, ops);
    if (j == c.depth()) return x;
    for (std::size_t p = 0; p < x.size(); ++p) x[p] *= std::sqrt(static_cast<double>(c.cluster_size[j][p]));
    if (ops) ops->muls += x.size();
    return x;
}

LevelSplit decompose_level(const FilterBank& fb, std::size_t j, const Vec& chat, OpCounter* ops)
{
    if (j < 1 || j > fb.depth()) throw std::out_of_range("decompose_level: filter bank has no level " + std::to_string(j));
    const std::size_t Nf = fb.level_sizes[j], Nc = fb.level_sizes[j - 1];
    if (chat.size() != Nf) throw std::invalid_argument("decompose_level: block length differs from N_j");
    const Tally t{ops};
    LevelSplit out;
    out.low.resize(Nc);
    for (std::size_t l = 0; l < Nc; ++l) out.low[l] = chat[l] * fb.a[j][l];
    t.mul(Nc);
    for (std::size_t l = Nc; l < Nf; ++l)
        if (std::abs(chat[l] * fb.a[j][l]) > kTruncTol)
            throw std::logic_error("decompose_level: low pass not supported inside the coarse spectrum at level " +
                                   std::to_string(j) + ", index " + std::to_string(l));
    out.high.resize(fb.b[j].size());
    for (std::size_t n = 0; n < fb.b[j].size(); ++n) {
        out.high[n].resize(Nf);
        for (std::size_t l = 0; l < Nf; ++l) out.high[n][l] = chat[l] * fb.b[j][n][l];
        t.mul(Nf);
    }
    return out;
}

Vec reconstruct_level(const FilterBank& fb, std::size_t j, const Vec& low, const std::vector<Vec>& high, OpCounter* ops)
{
    if (j < 1 || j > fb.depth()) throw std::out_of_range("reconstruct_level: filter bank has no level " + std::to_string(j));
    const std::size_t Nf = fb.level_sizes[j], Nc = fb.level_sizes[j - 1];
    if (low.size() != Nc) throw std::invalid_argument("reconstruct_level: low block length differs from N_{j-1}");
    if (high.size() != fb.b[j].size()) throw std::invalid_argument("reconstruct_level: wrong number of high blocks");
    const Tally t{ops};
    Vec out(Nf, 0.0);
    for (std::size_t l = 0; l < Nc; ++l) out[l] = low[l] * fb.a[j][l];
    t.mul(Nc);
    for (std::size_t n = 0; n < high.size(); ++n) {
        if (high[n].size() != Nf) throw std::invalid_argument("reconstruct_level: high block length differs from N_j");
        for (std::size_t l = 0; l < Nf; ++l) out[l] += high[n][l] * fb.b[j][n][l];
        t.mul(Nf);
        t.add(Nf);
    }
    return out;
}

std::size_t Coefficients::count() const
{
    std::size_t k = low.size();
    for (const auto& lv : high)
        for (const auto& h : lv) k += h.size();
    return k;
}

double Coefficients::energy() const
{
    double e = 0.0;
    for (double x : low) e += x * x;
    for (const auto& lv : high)
        for (const auto& h : lv)
            for (double x : h) e += x * x;
    return e;
}

Vec Coefficients::flatten() const
{
    Vec out = low;
    for (const auto& lv : high)
        for (const auto& h : lv) out.insert(out.end(), h.begin(), h.end());
    return out;
}

void check_provenance(const FilterBank& fb, const ChainBasis& b, const Chain& c)
{
    if (b.chain_id != c.id) throw std::invalid_argument("provenance: basis was built for chain " + b.chain_id + ", not " + c.id);
    if (b.level_sizes != c.sizes()) throw std::invalid_argument("provenance: basis and chain level sizes differ");
    if (fb.level_sizes != c.sizes()) throw std::invalid_argument("provenance: filter bank was built for other level sizes");
}

Coefficients decompose(const FilterBank& fb, const ChainBasis& b, const Chain& c, const Vec& f, std::size_t J1,
                       OpCounter* ops)
{
    check_provenance(fb, b, c);
    const std::size_t J = c.depth();
    if (J1 > J) throw std::invalid_argument("decompose: J1 out of range");
    if (f.size() != c.n()) throw std::invalid_argument("decompose: signal length differs from graph size");
    Coefficients co;
    co.J1 = J1;
    co.chain_id = c.id;
    co.basis_id = b.id;
    co.filter_id = fb.id;
    co.high.resize(J);
    Vec cur = fast_dft(b, f, ops);
    for (std::size_t j = J; j > J1; --j) {
        LevelSplit s = decompose_level(fb, j, cur, ops);
        for (auto& h : s.high) co.high[j - 1].push_back(level_adft(b, c, j, h, ops));
        cur = std::move(s.low);
    }
    co.low = level_adft(b, c, J1, cur, ops);
    return co;
}

Vec reconstruct(const FilterBank& fb, const ChainBasis& b, const Chain& c, const Coefficients& co, OpCounter* ops)
{
    check_provenance(fb, b, c);
    if (co.chain_id != c.id || co.basis_id != b.id || co.filter_id != fb.id)
        throw std::invalid_argument("reconstruct: coefficients were produced with a different chain, basis or filter bank");
    const std::size_t J = c.depth();
    if (co.J1 > J || co.high.size() != J) throw std::invalid_argument("reconstruct: malformed coefficients");
    if (co.low.size() != c.size(co.J1)) throw std::invalid_argument("reconstruct: low block length differs from N_J1");
    Vec cur = level_dft(b, c, co.J1, co.low, ops);
    for (std::size_t j = co.J1 + 1; j <= J; ++j) {
        std::vector<Vec> hh;
        for (const Vec& h : co.high[j - 1]) {
            if (h.size() != c.size(j)) throw std::invalid_argument("reconstruct: high block length mismatch");
            hh.push_back(level_dft(b, c, j, h, ops));
        }
        cur = reconstruct_level(fb, j, cur, hh, ops);
    }
    return fast_adft(b, cur, ops);
}

Vec framelet_convolve(const FilterBank& fb, const ChainBasis& b, const Chain& c, const Vec& g, const Vec& f, std::size_t J1)
{
    if (g.size() != f.size()) throw std::invalid_argument("framelet_convolve: size mismatch");
    Coefficients cg = decompose(fb, b, c, g, J1);
    Coefficients cf = decompose(fb, b, c, f, J1);
    for (std::size_t p = 0; p < cf.low.size(); ++p) cf.low[p] *= cg.low[p];
    for (std::size_t j = 0; j < cf.high.size(); ++j)
        for (std::size_t n = 0; n < cf.high[j].size(); ++n)
            for (std::size_t p = 0; p < cf.high[j][n].size(); ++p) cf.high[j][n][p] *= cg.high[j][n][p];
    return reconstruct(fb, b, c, cf);
}

}  // namespace gframelet
