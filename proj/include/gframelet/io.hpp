// io.hpp - graph, artifact, signal and dense-block file formats
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gframelet/basis.hpp"
#include "gframelet/chain.hpp"
#include "gframelet/filters.hpp"
#include "gframelet/graph.hpp"
#include "gframelet/transforms.hpp"

namespace gframelet {

// Unreadable files and malformed contents. Validation problems with
// well-formed inputs are std::invalid_argument instead.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kFormatVersion = 1;

// TSV: "u<TAB>v<TAB>w" per line, 0-based ids, '#' comments. A "# nodes: N"
// comment fixes the vertex count (otherwise max id + 1).
Graph parse_graph_tsv(const std::string& text);
std::string graph_to_tsv(const Graph& g);

// {"format":"graph","version":1,"n":..,"edges":[[u,v,w],..],"labels":[..]}
Graph parse_graph_json(const std::string& text);
std::string graph_to_json(const Graph& g);

std::string chain_to_json(const Chain& c);
Chain parse_chain_json(const std::string& text);

std::string basis_to_json(const ChainBasis& b);
ChainBasis parse_basis_json(const std::string& text, const Chain& c);

std::string filter_bank_to_json(const FilterBank& fb);
FilterBank parse_filter_bank_json(const std::string& text);

std::string coefficients_to_json(const Coefficients& co);
Coefficients parse_coefficients_json(const std::string& text);

// One value per line; blank lines and '#' comments are skipped.
Vec parse_signal_csv(const std::string& text);
std::string signal_to_csv(const Vec& v);

// 16-byte header (8-byte magic "GFRMBLK1", uint32 rows, uint32 cols) then
// row-major little-endian float64.
std::string block_to_bytes(const Eigen::MatrixXd& m);
Eigen::MatrixXd parse_block_bytes(const std::string& bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

// Dispatches on extension: ".json" is structured text, anything else TSV.
Graph load_graph(const std::string& path);
void save_graph(const std::string& path, const Graph& g);

}  // namespace gframelet
