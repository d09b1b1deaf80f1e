#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wft/lagrangian.hpp"

namespace wft {

struct BoundReport {
    std::string name;
    double measured = 0.0;
    double bound = 0.0;
    double tolerance = 0.0;
    double slack = 0.0;   // measured / bound
    bool pass = false;    // measured <= bound * (1 + tolerance)
    std::map<std::string, double> metadata;
    std::string scenario;
};

BoundReport make_report(std::string name, double measured, double bound, double tolerance,
                        std::map<std::string, double> metadata = {});

// Moves t off logged event times by more than 1e-9.
double generic_time(const SimState& sim, double t);

// Gap check on pairs of equal-valued labels alive at T. Up to 64 labels are sampled.
std::vector<BoundReport> length_estimate_report(const SimState& sim, const std::vector<CharPath>& paths, double T,
                                                double value_tol = 0.0, double tol = 0.05);

// N(u(T), h) over both signs versus 4|u0|(|conv supp u0| + |f'| T) / (T d(h)).
BoundReport undulation_count_bound_check(const SimState& sim, double T, double h);

struct RegularityMeasures {
    double psi_tv = 0.0;        // Psi_eps-total variation of u(T)
    double velocity_tv = 0.0;   // TV(f' o u(T))
    double fractional = 0.0;    // sup sum |increments|^p
};

// Convex envelope of the nonlinearity modulus over [-|u0|, |u0|].
ConvexGauge flux_gauge(const SimState& sim, double grid_step = 0.0);

RegularityMeasures measure_regularity(const SimState& sim, double T, const ConvexGauge& phi, double eps, double p);

struct RegularityConstants {
    double psi = 0.0, velocity = 0.0, fractional = 0.0;
};

// Calibration: 1.2 * max of measured * t / (1 + t).
double calibrate_constant(const std::vector<std::pair<double, double>>& measured_at_t, double margin = 1.2);

std::vector<BoundReport> regularity_bounds_report(const SimState& sim, double T, double eps, double p,
                                                  const RegularityConstants& C,
                                                  const std::optional<ConvexGauge>& phi = std::nullopt);

// Discrete one-sided Lipschitz quantity of v = f' o u(T): the largest
// (v_j - v_i - step) / (left end of piece j - right end of piece i) over pieces i < j
// with v_j - v_i > step. A rise of more than step across a single front gives +inf.
// step is the velocity jump of one grid cell; a discrete fan then measures 1/T exactly.
double oleinik_measure(const PiecewiseConstantFn& v, double step = 0.0);
BoundReport oleinik_check(const SimState& sim, double T);

// (b - a)^l <= C |f'(b) - f'(a)| on a grid of n points and on its refinement.
BoundReport inverse_holder_check(const FluxModel& m, int l, double a, double b, int n = 256);

// Chord constant c-tilde: min over 0 < |w - ws| <= 2 delta of
// min(|f'(w) - f'(w*)|, |f'(w) - f'(ws)|) / |w - ws|^p.
double chord_constant(const FluxModel& m, double ws, int p, double delta);

std::vector<BoundReport> small_jump_chord_check(const SimState& sim, double T, std::size_t s, double delta_prime);
// Same on a given trace u with velocity f' o u; used for constructed traces.
std::vector<BoundReport> small_jump_chord_check(const FluxModel& m, const PiecewiseConstantFn& u, double ws, int p,
                                                double delta_prime);

struct SbvReport {
    std::vector<double> times, F;
    std::vector<std::pair<double, double>> drops; // (time, lost label mass)
    std::vector<double> jump_mass;                // sum over fronts of |jump of f' o u| per sampled time
    bool monotone = true;
};

SbvReport sbv_diagnostic(const SimState& sim, const std::vector<CharPath>& paths, const std::vector<double>& times);

std::string reports_jsonl(const std::vector<BoundReport>& reports);
std::string reports_csv(const std::vector<BoundReport>& reports);

} // namespace wft
