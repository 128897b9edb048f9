// transforms.hpp - fast chain DFT/ADFT and multi-level framelet transforms
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gframelet/basis.hpp"
#include "gframelet/chain.hpp"
#include "gframelet/filters.hpp"

namespace gframelet {

// Multiplications and additions on signal data only.
struct OpCounter {
    std::uint64_t adds = 0;
    std::uint64_t muls = 0;
    std::uint64_t total() const { return adds + muls; }
};

// x holds one value per level-j node (indexed by node id). Returns
// sum_p x(p) u_l([p]) for l < N_j.
Vec chain_dft(const ChainBasis& b, std::size_t j, const Vec& x, OpCounter* ops = nullptr);
// Inverse direction: sum_{l < N_j} c_l u_l([p]) for every level-j node p.
Vec chain_adft(const ChainBasis& b, std::size_t j, const Vec& c, OpCounter* ops = nullptr);

Vec fast_dft(const ChainBasis& b, const Vec& f, OpCounter* ops = nullptr);
Vec fast_adft(const ChainBasis& b, const Vec& c, OpCounter* ops = nullptr);

// Weighted transforms on V_j with weights w_{j,[p]} = #[p].
Vec level_dft(const ChainBasis& b, const Chain& c, std::size_t j, const Vec& v, OpCounter* ops = nullptr);
Vec level_adft(const ChainBasis& b, const Chain& c, std::size_t j, const Vec& chat, OpCounter* ops = nullptr);

struct LevelSplit {
    Vec low;                // length N_{j-1}
    std::vector<Vec> high;  // r_{j-1} blocks of length N_j
};

LevelSplit decompose_level(const FilterBank& fb, std::size_t j, const Vec& chat, OpCounter* ops = nullptr);
Vec reconstruct_level(const FilterBank& fb, std::size_t j, const Vec& low, const std::vector<Vec>& high,
                      OpCounter* ops = nullptr);

// low lives on V_{J1}; high[j][n] on V_{j+1} for j = J1..J-1 (entries below
// J1 are empty).
struct Coefficients {
    std::size_t J1 = 0;
    Vec low;
    std::vector<std::vector<Vec>> high;
    std::string chain_id;
    std::string basis_id;
    std::string filter_id;

    std::size_t count() const;
    double energy() const;
    // Blocks flattened in framelet-system order.
    Vec flatten() const;
};

Coefficients decompose(const FilterBank& fb, const ChainBasis& b, const Chain& c, const Vec& f, std::size_t J1,
                       OpCounter* ops = nullptr);
Vec reconstruct(const FilterBank& fb, const ChainBasis& b, const Chain& c, const Coefficients& co,
                OpCounter* ops = nullptr);

// V(Wg . Wf), blockwise product of the coefficient blocks.
Vec framelet_convolve(const FilterBank& fb, const ChainBasis& b, const Chain& c, const Vec& g, const Vec& f,
                      std::size_t J1 = 0);

// Throws std::invalid_argument when the three artifacts do not belong together.
void check_provenance(const FilterBank& fb, const ChainBasis& b, const Chain& c);

}  // namespace gframelet
