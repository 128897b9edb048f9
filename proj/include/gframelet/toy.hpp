// toy.hpp - the six-vertex worked example and its golden tables
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gframelet/basis.hpp"
#include "gframelet/chain.hpp"
#include "gframelet/filters.hpp"

namespace gframelet {

// Vertices a..f = 0..5, unit weights on ab, ac, cd, ce, cf, de.
Graph toy_graph();

// Levels 6/3/2/1 with initial centers {a,c,f}, {[a],[c]}, {[a]}.
Chain toy_chain();

// Generators on the grid lambda = 0..5 with alpha_3 = 1 and r = (1, 1, 2, 0).
GeneratorSet toy_generators();

// Columns u_1..u_6 as printed.
Eigen::MatrixXd toy_printed_basis();

// Printed coarse weight matrices for level 1 and level 2 (already divided by 12).
Eigen::MatrixXd toy_printed_weights(std::size_t level);

struct ToyTableRow {
    std::string name;
    std::size_t level = 0;
    std::uint32_t pass = 0;  // 0 = low pass
    std::uint32_t vertex = 0;  // a representative vertex of the translation node
    Vec printed;
    Vec expected;  // differs from printed only where the table has a misprint
};

std::vector<ToyTableRow> toy_printed_tables();

struct ToyCheck {
    std::string name;
    double deviation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;
};

struct ToyReport {
    std::vector<ToyCheck> checks;
    double seconds = 0.0;
    bool ok() const;
};

ToyReport run_toy_demo();
void print_toy_report(const ToyReport& r, std::ostream& os);

}  // namespace gframelet
