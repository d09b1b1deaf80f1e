#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wft/fronttrack.hpp"

namespace wft {

struct ExampleInstance {
    std::string name;
    FluxModel flux;
    PiecewiseConstantFn datum;
    // Continuous (piecewise affine) instances are given by their nodes.
    std::vector<double> sample_x, sample_u;
    std::map<std::string, std::vector<double>> params;
    std::map<std::string, double> reference;
    std::vector<std::string> notes;
};

// Boxes a_n chi[x_n, x_n + L_n] under f = u^{p+1} with a_n = (n log^2(1+n))^{-1/p}.
ExampleInstance build_sharpness(int p, int N);
// 2 sum_{n <= N} a_n^q, summed directly from the closed form of a_n.
double sharpness_reference(int p, int N, double q);

// Middle-third redistribution with alpha = 2^{(p-1)/p} - 1.
ExampleInstance build_cantor(double p, int n_levels);
// Values of the limit function at the endpoints of the level-n intervals, left to right.
std::vector<double> cantor_boundary_values(const ExampleInstance& inst);

// Flux that vanishes outside [L, 2L] and carries L/a bumps of height h on cells of width a.
FluxModel kinetic_block_flux(double L, double a, double h);
// The block with datum 3L chi[0, A], A = h / L.
ExampleInstance kinetic_block(double L, double a, double h);
// Levels L_n = 2^-n, a_n = 8^-n, h_n = a_n^n, at most box_cap boxes per level.
ExampleInstance build_kinetic(int N, int box_cap = 4);

struct KineticSeriesRow {
    int n = 0;
    // Base-2 exponents of N_n, a_n^{n-1}, L_n and of their product.
    std::int64_t log2_N = 0, log2_a_pow = 0, log2_L = 0, log2_term = 0;
    // Base-2 exponent of N_n a_n^n / L_n (support series).
    std::int64_t log2_support = 0;
};
std::vector<KineticSeriesRow> kinetic_series_table(int N);

struct NonPolyLevel {
    int n = 0;
    double a = 0.0, a_prev = 0.0, b = 0.0, eps = 0.0;
    double A_star = 0.0, B_star = 0.0; // positive conjugates of -a_{n-1} and -2a_n
    double alpha_n = 0.0, beta_n = 0.0;
    double d = 0.0, dt1 = 0.0, dt2 = 0.0, N = 0.0;
};

struct NonPolyParams {
    std::vector<NonPolyLevel> levels;
    double eps_prime = 0.0;
    int attempts = 0;
};

struct ConditionCheck {
    std::string name;
    int level = 0;
    bool ok = false;
    double lhs = 0.0, rhs = 0.0;
};

NonPolyParams search_nonpoly_parameters(int K);
std::vector<ConditionCheck> validate_nonpoly(const NonPolyParams& params);
// f on [-1, 1] with f'' = sum g_n, f'(-1) = 0, f(0) = 0.
FluxModel nonpoly_flux(const NonPolyParams& params);
ExampleInstance build_nonpoly(int K, int box_cap = 4);

// Level-n block in normalized variables v = 1 + w / a_{n-1}, x' = (x - f'(a_{n-1}) t) / d_n.
struct NonPolyBlock {
    int n = 0;
    FluxModel flux;
    PiecewiseConstantFn datum;   // 2 chi(0, 1)
    double d = 0.0, dt1 = 0.0, dt2 = 0.0;
    double scale = 0.0;          // a_n / a_{n-1}
};
NonPolyBlock nonpoly_block(const NonPolyParams& params, int n);

struct BlockMeasurement {
    double measured_norm = 0.0, bound_norm = 0.0; // normalized units
    double measured = 0.0, bound = 0.0;           // original units (times d_n)
    bool pass = false;
    double dv = 0.0;
    std::size_t events = 0;
};
// Integral over t in (1, 2) of the variation of f' o u inside the strip 0 < x' < 3.
BlockMeasurement measure_nonpoly_block(const NonPolyBlock& block, double dv = 0.0);

} // namespace wft
