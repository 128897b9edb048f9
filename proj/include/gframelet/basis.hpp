// basis.hpp - orthonormal bases adapted to a coarse-grained chain
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gframelet/chain.hpp"

namespace gframelet {

enum class BasisKind { haar, laplacian };

std::string to_string(BasisKind k);
BasisKind basis_kind_from_string(const std::string& s);

// Constant value over a contiguous range [start, end) of level positions.
struct Run {
    std::uint32_t start = 0;
    std::uint32_t end = 0;
    double value = 0.0;
};

// Level positions: at level j the nodes are laid out so that the children of
// every level-(j-1) node are contiguous (degree descending, ties by id) and the
// blocks follow the level-(j-1) layout. Vector l of group j is a list of runs
// over level-j positions holding its cluster values u_l([p]).
struct ChainBasis {
    BasisKind kind = BasisKind::haar;
    std::size_t n = 0;
    std::vector<std::size_t> level_sizes;                // N_j
    std::vector<std::vector<std::uint32_t>> order;       // position -> node
    std::vector<std::vector<std::uint32_t>> position;    // node -> position
    std::vector<std::vector<std::uint32_t>> block;       // j >= 1: child block starts, size N_{j-1}+1
    std::vector<std::vector<std::uint32_t>> ancestor;    // original vertex -> level-j node
    std::vector<std::uint32_t> level_of;                 // group of each vector
    std::vector<std::vector<Run>> runs;
    std::vector<double> lambda;                          // l - 1
    std::vector<std::size_t> spoc;
    std::vector<std::vector<double>> level_eigenvalues;  // laplacian kind only
    std::string chain_id;
    std::string id;

    std::size_t depth() const { return level_sizes.size() - 1; }
    // First index of group j (N_{j-1}, or 0 for the coarsest group).
    std::size_t group_begin(std::size_t j) const { return j == 0 ? 0 : level_sizes[j - 1]; }
    // u_l([p]) for a node p of level j >= level_of[l].
    double value(std::size_t l, std::size_t j, std::uint32_t node) const;
    // Values of u_l on level-j nodes (j >= level_of[l]), indexed by node id.
    std::vector<double> level_values(std::size_t l, std::size_t j) const;
    // N x N matrix with u_l in column l.
    Eigen::MatrixXd dense() const;
};

ChainBasis honbc(const Chain& c);
ChainBasis onbc(const Chain& c);

// Distinct nonzero values after rounding to 12 significant digits.
std::size_t spoc(const std::vector<double>& v);

struct BasisReport {
    double gram = 0.0;                 // max |U^T U - I|
    std::vector<double> constancy;     // per level
    std::vector<double> restricted;    // per level
    std::size_t spoc_sum = 0;
    std::size_t spoc_max = 0;
    double worst() const;
};

BasisReport verify_chain_basis(const ChainBasis& b, const Chain& c);

std::string compute_basis_id(const ChainBasis& b);

}  // namespace gframelet
