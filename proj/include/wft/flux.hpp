#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "wft/gauge.hpp"
#include "wft/poly.hpp"

namespace wft {

enum class FluxKind { Burgers, Power, Recipe, User };

// One polynomial piece on [lo, hi]; the polynomial is in the local variable
// w - origin. Expanding about 0 keeps small states accurate; origin defaults to lo.
struct FluxPiece {
    double lo = 0.0;
    double hi = 0.0;
    Poly poly;
    double origin = std::numeric_limits<double>::quiet_NaN();
};

class FluxModel {
public:
    FluxModel() = default;
    FluxModel(std::vector<FluxPiece> pieces, FluxKind kind, std::string label);

    static FluxModel burgers(double lo = -10.0, double hi = 10.0);
    // f(u) = u^exponent.
    static FluxModel power(int exponent, double lo = -4.0, double hi = 4.0);
    // Builds f from f'' given per interval [knots[i], knots[i+1]] (local variable),
    // pinning f'(wp) = fp and f(w0) = f0.
    static FluxModel from_second_derivative(const std::vector<double>& knots, const std::vector<Poly>& fpp,
                                            double wp, double fp, double w0, double f0, FluxKind kind,
                                            std::string label);

    double lo() const { return pieces_.front().lo; }
    double hi() const { return pieces_.back().hi; }
    const std::vector<FluxPiece>& pieces() const { return pieces_; }
    FluxKind kind() const { return kind_; }
    const std::string& label() const { return label_; }
    int max_degree() const;

    // Index of the piece containing w (the right piece at an interior knot).
    std::size_t piece_index(double w) const;
    // Derivative of any order at w; throws OutOfRange outside [lo, hi].
    double eval(double w, int order = 0) const;
    double f(double w) const { return eval(w, 0); }
    double df(double w) const { return eval(w, 1); }
    double d2f(double w) const { return eval(w, 2); }

    // Largest mismatch of f and f' across interior knots.
    double knot_mismatch() const;

    // Extrema helpers on [a, b].
    std::pair<double, double> df_range(double a, double b) const;
    double max_abs_df(double a, double b) const;
    double max_abs_d2f(double a, double b) const;
    // Points in [a, b] where f' = lambda, plus piece boundaries and a, b.
    std::vector<double> critical_points(double a, double b, double lambda) const;

private:
    std::vector<FluxPiece> pieces_;
    FluxKind kind_ = FluxKind::User;
    std::string label_;
};

double evaluate(const FluxModel& m, double w, int order);

struct Inflection {
    double w = 0.0;
    int p = 0;                 // degeneracy; meaningful when !non_polynomial
    bool non_polynomial = false;
    bool sign_change = true;   // f'' changes sign across w
};

struct InflectionSet {
    std::vector<Inflection> points;
    // Intervals where f'' vanishes identically (affine stretches of f).
    std::vector<std::pair<double, double>> flat_intervals;
    bool degenerate_flux() const { return !flat_intervals.empty(); }
    // Worst degeneracy; 1 when no inflection exists, -1 when some point is
    // not of polynomial type.
    int overall_degeneracy() const;
};

InflectionSet detect_inflections(const FluxModel& m, double tol = 1e-10);

// min over lambda of osc_{[w1,w2]} (f - lambda id).
double nonlinearity_gap(const FluxModel& m, double w1, double w2);
// Same with the optimal lambda reported.
double nonlinearity_gap(const FluxModel& m, double w1, double w2, double* lambda_opt);

// min over a in [lo, hi - h] of nonlinearity_gap(a, a + h).
double nonlinearity_modulus(const FluxModel& m, double h, double lo, double hi);

ConvexGauge modulus_convex_envelope(const FluxModel& m, double lo, double hi, double grid_step);

// Conjugate of w with respect to the inflection at ws.
double conjugate_point(const FluxModel& m, double ws, double w);
double conjugate_point(const FluxModel& m, const InflectionSet& set, std::size_t s, double w);

// Root in (-1, 0) of p r^{p+1} - (p+1) r^p + 1.
double degenerate_ratio(int p);
double degenerate_polynomial(int p, double rho);

enum class EnvelopeSide { LowerConvex, UpperConcave };

struct EnvelopeSegment {
    double from = 0.0;
    double to = 0.0;
    bool chord = false; // false: the envelope coincides with f
};

std::vector<EnvelopeSegment> envelope(const FluxModel& m, double a, double b, EnvelopeSide side);
// Value of a computed envelope at w.
double envelope_value(const FluxModel& m, const std::vector<EnvelopeSegment>& env, double w);

} // namespace wft
