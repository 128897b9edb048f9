// framelets.hpp - explicit framelet synthesis, frame bounds, quadrature checks
#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "gframelet/basis.hpp"
#include "gframelet/chain.hpp"
#include "gframelet/filters.hpp"
#include "gframelet/graph.hpp"

namespace gframelet {

enum class SystemKind { decimated, undecimated };

struct FrameletElement {
    int level = 0;            // j
    std::uint32_t pass = 0;   // 0 = low pass, n >= 1 = high pass n
    std::uint32_t node = 0;   // node of V_j (low) or V_{j+1} (high); a vertex when undecimated
};

// Rows of `rows` are the framelets, in the order of `elements`: the low-pass
// block first, then for each level j = J1, J1+1, ... and pass n the high-pass
// block over the nodes of the translation level. This is also the order of
// the blocks in Coefficients.
struct FrameletSystem {
    SystemKind kind = SystemKind::decimated;
    int J1 = 0;
    std::vector<FrameletElement> elements;
    Eigen::MatrixXd rows;

    std::size_t size() const { return elements.size(); }
    const Eigen::MatrixXd& matrix() const { return rows; }
};

// phi_{j,u} (pass 0) or psi_{j,u}^(n) with generator values at lambda / 2^j.
Vec synth_undecimated(const EigenPairs& ep, const UndecimatedGenerators& ug, int j, std::uint32_t u, std::uint32_t pass);

FrameletSystem build_undecimated_system(const EigenPairs& ep, const UndecimatedGenerators& ug);

// phi_{j,[p]} for [p] in V_j (pass 0), psi_{j,[u]}^(n) for [u] in V_{j+1} (pass n),
// with V_{J+1} := V_J. Weights are the cluster sizes.
Vec synth_decimated(const ChainBasis& b, const Chain& c, const GeneratorSet& gs, std::size_t j, std::uint32_t node,
                    std::uint32_t pass);

FrameletSystem build_framelet_system(const ChainBasis& b, const Chain& c, const GeneratorSet& gs, std::size_t J1);

struct FrameBounds {
    double lower = 0.0;
    double upper = 0.0;
};

FrameBounds frame_bounds(const FrameletSystem& fs);

// max |sum_p w_p u_l([p]) u_l'([p]) - delta| over l, l' < ell_max.
double quadrature_check(const ChainBasis& b, const Chain& c, std::size_t j, std::size_t ell_max);

Eigen::MatrixXd dense_analysis_matrix(const FrameletSystem& fs);

}  // namespace gframelet
