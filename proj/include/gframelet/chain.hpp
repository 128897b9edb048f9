// chain.hpp - coarse-grained chains built by k-medoid clustering
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gframelet/graph.hpp"

namespace gframelet {

using Assignment = std::vector<std::uint32_t>;

// levels[0] is the coarsest graph G_{J0}, levels.back() the input graph G_J.
// parent[j] maps nodes of level j to nodes of level j-1 (parent[0] is empty).
struct Chain {
    std::vector<Graph> levels;
    std::vector<Assignment> parent;
    std::vector<std::vector<std::size_t>> cluster_size;
    std::string id;

    std::size_t depth() const { return levels.size() - 1; }  // J with J0 = 0
    std::size_t size(std::size_t j) const { return levels[j].n; }
    std::size_t n() const { return levels.back().n; }
    std::vector<std::size_t> sizes() const;
    const Graph& graph() const { return levels.back(); }
    // Level-j node containing each original vertex.
    Assignment ancestors(std::size_t j) const;
    // Original vertices of each level-j node, ascending.
    std::vector<std::vector<std::uint32_t>> members(std::size_t j) const;
};

struct Coarsening {
    Graph coarse;
    Assignment assignment;               // vertex -> cluster
    std::vector<std::uint32_t> centers;  // medoid of each cluster
    int iterations = 0;
};

// w_c(P,Q) = sum over ordered pairs (u in P, v in Q) of w(u,v) / vol(g).
Graph coarse_graph(const Graph& g, const Assignment& assignment, std::size_t k);

struct CoarsenOptions {
    std::optional<std::vector<std::uint32_t>> centers;
    unsigned threads = 1;
    int max_iterations = 100;
};

Coarsening coarsen_once(const Graph& g, std::size_t k, std::uint64_t seed,
                        const CoarsenOptions& opt = {});

struct ChainOptions {
    // Initial centers per coarsening step, in the order of `sizes`.
    std::vector<std::optional<std::vector<std::uint32_t>>> centers;
    unsigned threads = 1;
};

// sizes = (N_{J-1}, ..., N_{J0}), strictly decreasing and below |V|.
Chain build_chain(const Graph& g, const std::vector<std::size_t>& sizes, std::uint64_t seed,
                  const ChainOptions& opt = {});

// Chain from externally computed partitions, finest first. Cluster ids must be
// 0..k-1 and every cluster non-empty.
Chain chain_from_assignments(const Graph& g, const std::vector<Assignment>& assignments);

// Graph Voronoi partition around k seeded random centers (one assignment
// pass of the k-medoid loop, no recentering). Linear-ish in |E|.
Assignment voronoi_partition(const Graph& g, std::size_t k, std::uint64_t seed);

std::vector<std::string> validate_chain(const Chain& c);

std::string compute_chain_id(const Chain& c);

}  // namespace gframelet
