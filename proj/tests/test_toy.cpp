#include <doctest.h>

#include <cmath>
#include <sstream>

#include "gframelet/toy.hpp"

using namespace gframelet;

TEST_CASE("golden example run passes every check")
{
    const ToyReport r = run_toy_demo();
    for (const ToyCheck& c : r.checks) {
        INFO(c.name << " deviation " << c.deviation << " " << c.note);
        CHECK(c.pass);
    }
    CHECK(r.ok());
    CHECK(r.seconds < 1.0);
    std::ostringstream os;
    print_toy_report(r, os);
    CHECK(os.str().find("FAIL") == std::string::npos);
}

TEST_CASE("printed coarse weights")
{
    const Eigen::MatrixXd w1 = toy_printed_weights(1);
    CHECK(w1(0, 0) == doctest::Approx(2.0 / 12));
    CHECK(w1(1, 1) == doctest::Approx(8.0 / 12));
    CHECK(toy_printed_weights(2)(1, 1) == doctest::Approx(6.0 / 12));
}

TEST_CASE("table misprints: the coarsest low-pass row and two high-pass entries")
{
    std::size_t differing = 0;
    for (const ToyTableRow& row : toy_printed_tables()) {
        if (row.name.rfind("phi_0", 0) == 0) {
            for (std::size_t v = 0; v < row.printed.size(); ++v) {
                CHECK(row.printed[v] == doctest::Approx(1.0 / 6));
                CHECK(row.expected[v] == doctest::Approx(1 / std::sqrt(6.0)));
            }
            continue;
        }
        for (std::size_t v = 0; v < row.printed.size(); ++v)
            if (std::abs(row.printed[v] - row.expected[v]) > 1e-12) ++differing;
    }
    CHECK(differing == 2);
}
