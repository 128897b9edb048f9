// graph.hpp - weighted undirected graphs, distances, Laplacian and eigenpairs
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

namespace gframelet {

using Vec = std::vector<double>;

struct Edge {
    std::uint32_t u = 0;
    std::uint32_t v = 0;
    double w = 1.0;
};

// Symmetric CSR adjacency. A self-loop is stored once in its row; every other
// pair appears in both rows. Column indices are sorted within each row.
struct Graph {
    std::size_t n = 0;
    std::vector<std::size_t> offsets{0};
    std::vector<std::uint32_t> cols;
    std::vector<double> vals;
    std::vector<std::string> labels;

    std::size_t size() const { return n; }
    double weight(std::uint32_t u, std::uint32_t v) const;
    std::size_t row_begin(std::uint32_t u) const { return offsets[u]; }
    std::size_t row_end(std::uint32_t u) const { return offsets[u + 1]; }
    // Undirected edge list with u <= v.
    std::vector<Edge> edges() const;
    std::string label(std::uint32_t v) const;
};

// Sums duplicates, drops zero weights. Throws std::invalid_argument on
// out-of-range ids or negative weights.
Graph build_graph(std::size_t n, const std::vector<Edge>& edges,
                  std::vector<std::string> labels = {});

// Adopts CSR arrays directly (used for large generated graphs). When check is
// set the arrays are validated for sortedness and symmetry.
Graph graph_from_csr(std::size_t n, std::vector<std::size_t> offsets,
                     std::vector<std::uint32_t> cols, std::vector<double> vals,
                     bool check = true);

struct GraphStats {
    Vec degrees;
    double volume = 0.0;
};

GraphStats graph_stats(const Graph& g);

bool is_connected(const Graph& g);

// Dijkstra with edge weights as lengths; unreachable vertices get +inf.
Vec graph_distance(const Graph& g, std::uint32_t source);

// Row-major n*n distance matrix. Sources are split across threads.
Vec all_pairs_distance(const Graph& g, unsigned threads = 1);

Eigen::MatrixXd laplacian(const Graph& g);

struct EigenPairs {
    Eigen::MatrixXd vectors;  // columns u_l
    Vec values;               // sqrt of Laplacian eigenvalues
    Vec raw;                  // Laplacian eigenvalues after clamping
};

EigenPairs sqrt_eigenpairs(const Graph& g);

}  // namespace gframelet
