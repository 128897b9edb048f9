// Shared fixtures for the unit tests.
#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "gframelet/bench.hpp"
#include "gframelet/chain.hpp"
#include "gframelet/graph.hpp"

namespace gtest {

using gframelet::Vec;

inline gframelet::Chain random_chain(std::size_t n, const std::vector<std::size_t>& sizes, std::uint64_t seed)
{
    return gframelet::build_chain(gframelet::random_connected_graph(n, 4.0, seed), sizes, seed);
}

inline Vec random_signal(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    Vec f(n);
    for (double& x : f) x = nd(rng);
    return f;
}

inline Eigen::VectorXd ev(const Vec& v) { return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())); }

inline double max_diff(const Vec& a, const Vec& b)
{
    if (a.size() != b.size()) return INFINITY;
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double max_diff(const Eigen::VectorXd& a, const Vec& b) { return max_diff(Vec(a.data(), a.data() + a.size()), b); }

inline double max_abs(const Vec& v)
{
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// Values of v sorted by magnitude, signs dropped.
inline Vec sorted_abs(Vec v)
{
    for (double& x : v) x = std::abs(x);
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace gtest
