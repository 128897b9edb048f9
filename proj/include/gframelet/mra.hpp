// mra.hpp - multiresolution coefficient dumps for external plotting
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gframelet/basis.hpp"
#include "gframelet/chain.hpp"
#include "gframelet/filters.hpp"
#include "gframelet/graph.hpp"

namespace gframelet {

struct MraOptions {
    std::vector<std::size_t> sizes;  // N_{J-1}, ..., N_{J0}
    std::string filter = "preset:2high";
    PresetOptions preset;
    BasisKind basis = BasisKind::haar;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

struct MraBlock {
    std::string name;  // "low" or "detail_j<j>_n<n>"
    std::size_t level = 0;
    std::uint32_t pass = 0;
    std::size_t length = 0;
    double max_abs = 0.0;
};

struct MraResult {
    std::vector<std::size_t> level_sizes;
    std::vector<MraBlock> blocks;
    double energy_error = 0.0;  // | |coefficients|^2 - |f|^2 |
};

// Writes <out_dir>/<block>.csv (node,representative,value) for every block and
// <out_dir>/clusters.csv (vertex and its node at each level). The
// representative of a node is its smallest original vertex.
MraResult run_mra(const Graph& g, const Vec& f, const MraOptions& opt, const std::string& out_dir);

}  // namespace gframelet
