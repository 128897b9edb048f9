// filters.hpp - bump-function generators, chain filter banks, tightness checks
#pragma once

#include <functional>
#include <string>
#include <vector>

namespace gframelet {

using Vec = std::vector<double>;

// P_m(x) = ((1+x)/2)^m * sum_{k<m} C(m-1+k, k) ((1-x)/2)^k
double spline_poly(int m, double x);

// Smooth bump: 0 outside [cL-eL, cR+eR], 1 on [cL+eL, cR-eR].
double bump_nu(double cL, double cR, double epsL, double epsR, int m, double xi);

// alpha_eps = nu on [-(1+eps)/2, (1+eps)/2] with both transition widths (1-eps)/2.
double alpha_eps(double eps, int m, double xi);

// Partition of unity gamma^(1..r) on [0, 1].
struct GammaPartition {
    Vec c;  // c_1 < ... < c_{r-1} < 1 < c_r = 1 + e_r
    Vec e;
    std::size_t count() const { return c.size(); }
    double operator()(std::size_t n, int m, double xi) const;  // n is 1-based
    void validate() const;
    static GammaPartition uniform(std::size_t r);
};

// Sampled generators on the grid lambda_l = l - 1, l = 1..N. Level j uses
// scale[j]; beta[j] holds the r_j high passes living on level j+1 (level J's
// high passes live on V_J itself).
struct GeneratorSet {
    std::size_t n = 0;
    Vec lambda;
    std::vector<std::size_t> level_sizes;
    Vec scale;
    std::vector<Vec> alpha;
    std::vector<std::vector<Vec>> beta;
    int m = 1;
    double eps = 0.0;
    std::string label;

    std::size_t depth() const { return alpha.size() - 1; }
};

// Level j = 1..J links level j-1 to level j; a[0] and b[0] are unused.
struct FilterBank {
    std::size_t n = 0;
    std::vector<std::size_t> level_sizes;
    std::vector<Vec> a;
    std::vector<std::vector<Vec>> b;
    std::vector<std::vector<char>> support;  // sigma_alpha^(j) as a mask over the grid
    std::string label;
    std::string id;

    std::size_t depth() const { return level_sizes.empty() ? 0 : level_sizes.size() - 1; }
    std::size_t highs(std::size_t j) const { return b[j].size(); }
};

struct GeneratorOptions {
    double eps = 0.5;
    int m = 1;
    std::vector<GammaPartition> gamma;  // per level; empty means uniform
};

// level_sizes = (N_0, ..., N_J), highs = r_j per level (each >= 1).
GeneratorSet build_generators(const std::vector<std::size_t>& level_sizes, const std::vector<std::size_t>& highs,
                              const GeneratorOptions& opt);

// Smallest admissible eps for Lambda_j = N_j is max N_j / N_{j+1}; this picks
// the midpoint between that bound and 1.
double default_eps(const std::vector<std::size_t>& level_sizes);

FilterBank derive_filter_bank(const GeneratorSet& gs);

// Generators realized by the fast transform for a bank: alpha_J = 1 and
// alpha_{j-1} = a_j alpha_j, beta_{j-1} = b_j alpha_j.
GeneratorSet generators_from_filter_bank(const FilterBank& fb);

enum class LowpassForm { proportional, table };

struct PresetOptions {
    double zeta_a = 0.25;
    double zeta_b1 = 0.25;
    double zeta_b2 = 0.25;
    int m = 1;
    bool normalize = true;
    LowpassForm lowpass = LowpassForm::proportional;
};

FilterBank preset_filter_bank(int n_high, const std::vector<std::size_t>& level_sizes, const PresetOptions& opt);

// "preset:1high", "preset:2high", "preset:3high" or "generator:rK". Generator
// banks use K high passes at every level, m from opt and default_eps.
FilterBank filter_bank_from_spec(const std::string& spec, const std::vector<std::size_t>& level_sizes,
                                 const PresetOptions& opt = {});

struct TightnessReport {
    double uep = 0.0;
    double nesting = 0.0;
    double level_j = 0.0;
    Vec uep_per_level;
    Vec nesting_per_level;
    double worst() const;
};

TightnessReport check_tightness(const FilterBank& fb);
TightnessReport check_tightness(const GeneratorSet& gs);

// Stationary generators for the undecimated system at scales 2^j, j = J1..J.
struct UndecimatedGenerators {
    std::function<double(double)> alpha;
    std::vector<std::function<double(double)>> beta;
    int J1 = 0;
    int J = 0;
};

// alpha = alpha_eps, beta = sqrt(alpha(x/2)^2 - alpha(x)^2), with J the
// smallest level for which lambda_max / 2^(J+1) <= eps.
UndecimatedGenerators standard_undecimated(double eps, int m, double lambda_max, int J1);

struct UndecimatedReport {
    double two_scale = 0.0;      // |alpha(l/2^(j+1))|^2 - |alpha(l/2^j)|^2 - sum |beta(l/2^j)|^2
    double normalization = 0.0;  // |alpha(l/2^J)|^2 + sum |beta(l/2^J)|^2 - 1
};

UndecimatedReport check_undecimated(const UndecimatedGenerators& ug, const Vec& lambdas);

std::string compute_filter_id(const FilterBank& fb);

}  // namespace gframelet
