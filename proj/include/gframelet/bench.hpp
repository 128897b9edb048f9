// bench.hpp - random graph generators and the scaling benchmark
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gframelet/chain.hpp"
#include "gframelet/graph.hpp"

namespace gframelet {

// Complete graph with symmetric uniform(0,1) weights and zero diagonal. The
// weight of {u,v} is a pure function of (seed, min, max).
Graph dense_random_graph(std::size_t n, std::uint64_t seed);

// Random spanning tree plus extra random edges, weights in [0.5, 1.5).
Graph random_connected_graph(std::size_t n, double avg_degree, std::uint64_t seed);

// Coarse sizes (N_{J-1}, ..., N_{J0}) retaining `retention` of the nodes per
// level; 4 levels below 1000 nodes, 5 up to 2500, 6 above.
std::vector<std::size_t> bench_level_sizes(std::size_t n, double retention = 0.4);

// Chain from seeded graph Voronoi partitions (no all-pairs distances).
Chain voronoi_chain(const Graph& g, const std::vector<std::size_t>& sizes, std::uint64_t seed);

enum class BenchMode { counts, walltime };

struct BenchOptions {
    std::vector<std::size_t> sizes{500, 1000, 2000, 4000, 8000};
    double retention = 0.4;
    int reps = 1;
    std::uint64_t seed = 1;
    BenchMode mode = BenchMode::counts;
    std::string filter = "preset:1high";
};

struct BenchRow {
    std::size_t n = 0;
    std::size_t levels = 0;
    std::uint64_t adds = 0;
    std::uint64_t muls = 0;
    std::uint64_t dft_ops = 0;  // fast_dft alone
    std::size_t level_total = 0;  // sum of N_j
    double seconds = 0.0;       // decompose + reconstruct, best of reps
};

struct BenchResult {
    std::vector<BenchRow> rows;
    std::optional<double> count_slope;
    std::optional<double> time_slope;
    std::string csv() const;
};

// Least-squares slope of log(y) against log(x); empty for fewer than 2 points.
std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

BenchResult run_bench(const BenchOptions& opt);

}  // namespace gframelet
