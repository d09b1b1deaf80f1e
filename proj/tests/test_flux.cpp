#include <cmath>
#include <random>

#include "doctest.h"
#include "wft/error.hpp"
#include "wft/flux.hpp"

using namespace wft;

namespace {

// Brute-force oracle for min over lambda of osc(f - lambda id) on [w1, w2].
double gap_oracle(const FluxModel& m, double w1, double w2) {
    auto [dmin, dmax] = m.df_range(w1, w2);
    double best = 1e300;
    for (int k = 0; k <= 4000; ++k) {
        double lam = dmin + (dmax - dmin) * k / 4000.0;
        double lo = 1e300, hi = -1e300;
        for (int i = 0; i <= 2000; ++i) {
            double w = w1 + (w2 - w1) * i / 2000.0;
            double g = m.f(w) - lam * w;
            lo = std::min(lo, g);
            hi = std::max(hi, g);
        }
        best = std::min(best, hi - lo);
    }
    return best;
}

FluxModel affine() { return FluxModel({{-2.0, 2.0, Poly({1.0, -3.0})}}, FluxKind::User, "affine"); }

// f = 0 on [-1, 0], f = s^2 on [0, 1].
FluxModel flat_then_quadratic() {
    return FluxModel({{-1.0, 0.0, Poly({0.0})}, {0.0, 1.0, Poly({0.0, 0.0, 1.0})}}, FluxKind::User, "flat");
}

} // namespace

TEST_CASE("evaluate derivatives") {
    CHECK(evaluate(FluxModel::burgers(), 1.0, 1) == doctest::Approx(1.0));
    CHECK(evaluate(FluxModel::power(3), 0.0, 2) == 0.0);
    CHECK(evaluate(FluxModel::power(3), 0.5, 0) == doctest::Approx(0.125));
    CHECK_THROWS_AS(FluxModel::power(3, -1, 1).f(2.0), OutOfRange);
}

TEST_CASE("inflection detection") {
    InflectionSet cubic = detect_inflections(FluxModel::power(3));
    REQUIRE(cubic.points.size() == 1);
    CHECK(cubic.points[0].w == doctest::Approx(0.0));
    CHECK(cubic.points[0].p == 2);
    for (int p : {2, 4, 6}) {
        InflectionSet s = detect_inflections(FluxModel::power(p + 1, -2, 2));
        REQUIRE(s.points.size() == 1);
        CHECK(s.points[0].p == p);
        CHECK(s.overall_degeneracy() == p);
    }
    InflectionSet none = detect_inflections(FluxModel::burgers());
    CHECK(none.points.empty());
    CHECK(none.overall_degeneracy() == 1);
    CHECK(detect_inflections(flat_then_quadratic()).degenerate_flux());
}

TEST_CASE("nonlinearity gap") {
    FluxModel sq = FluxModel::power(2);
    CHECK(nonlinearity_gap(sq, 0, 1) == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(nonlinearity_gap(sq, 0, 1) == doctest::Approx(gap_oracle(sq, 0, 1)).epsilon(1e-6));
    FluxModel cu = FluxModel::power(3);
    double lam = 0.0;
    CHECK(nonlinearity_gap(cu, -1, 1, &lam) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(lam == doctest::Approx(0.75).epsilon(1e-8));
    CHECK(nonlinearity_gap(cu, -1, 1) == doctest::Approx(gap_oracle(cu, -1, 1)).epsilon(1e-6));
    CHECK(nonlinearity_gap(affine(), -1.5, 0.7) == doctest::Approx(0.0));
}

TEST_CASE("nonlinearity modulus") {
    FluxModel b = FluxModel::burgers();
    for (double h : {0.1, 0.25, 0.5, 1.0}) CHECK(nonlinearity_modulus(b, h, 0, 1) == doctest::Approx(h * h / 8));
    CHECK(nonlinearity_modulus(FluxModel::power(2), 1.0, 0, 1) == doctest::Approx(0.25));
    CHECK(nonlinearity_modulus(flat_then_quadratic(), 0.5, -1, 1) == doctest::Approx(0.0));
}

TEST_CASE("modulus convex envelope") {
    ConvexGauge g = modulus_convex_envelope(FluxModel::burgers(), 0, 1, 1.0 / 16);
    for (std::size_t i = 0; i < g.xs().size(); ++i)
        CHECK(g.ys()[i] == doctest::Approx(g.xs()[i] * g.xs()[i] / 8).epsilon(1e-9));
    // Between nodes the chord of h^2/8 over a cell of width 1/16 exceeds h^2/8 by at most 1/2048.
    for (double h = 0.0; h <= 1.0; h += 0.01) CHECK(std::abs(g(h) - h * h / 8) <= 1.0 / 2048 + 1e-12);

    // Concave kink: the hull lies below every sample and touches the vertices.
    std::vector<std::pair<double, double>> pts = {{1.0, 1.0}, {2.0, 1.2}, {3.0, 3.0}};
    ConvexGauge k = ConvexGauge::from_samples(pts);
    for (auto [x, y] : pts) CHECK(k(x) <= y + 1e-15);
    CHECK(k(2.0) == doctest::Approx(1.2));
    CHECK(k(3.0) == doctest::Approx(3.0));
    CHECK(k(1.0) == doctest::Approx(0.6));

    ConvexGauge one = ConvexGauge::from_samples({{2.0, 3.0}});
    CHECK(one(1.0) == doctest::Approx(1.5));
    CHECK(one(4.0) == doctest::Approx(6.0));
}

TEST_CASE("psi_eps") {
    Gauge sq = power_gauge(2);
    Gauge psi = psi_eps(sq, 1.0);
    for (double x : {0.5, 1.0, 2.0, 3.0}) CHECK(psi(x) == doctest::Approx(x * x * x / 4));
    CHECK(psi(0.0) == 0.0);
    CHECK(psi_eps(power_gauge(1), 1.0)(3.0) == doctest::Approx(4.5));
    ConvexGauge g = ConvexGauge::from_function(sq, 4.0, 400);
    ConvexGauge pg = psi_eps(g, 1.0);
    CHECK(pg(2.0) == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("conjugate points") {
    FluxModel cu = FluxModel::power(3);
    CHECK(conjugate_point(cu, 0.0, 0.1) == doctest::Approx(-0.05).epsilon(1e-10));
    CHECK(conjugate_point(cu, 0.0, -1.0) == doctest::Approx(0.5).epsilon(1e-10));
    FluxModel p5 = FluxModel::power(5, -2, 2);
    double rho = degenerate_ratio(4);
    double w = 1e-3;
    CHECK(conjugate_point(p5, 0.0, w) / w == doctest::Approx(rho).epsilon(1e-6));
}

TEST_CASE("degenerate ratio") {
    CHECK(degenerate_ratio(2) == doctest::Approx(-0.5).epsilon(1e-12));
    double r4 = degenerate_ratio(4);
    CHECK(r4 == doctest::Approx(-0.6058).epsilon(1e-3));
    for (int p : {2, 4, 6, 8}) CHECK(std::abs(degenerate_polynomial(p, degenerate_ratio(p))) < 1e-12);
}

TEST_CASE("envelopes") {
    auto conv = envelope(FluxModel::burgers(), 0, 1, EnvelopeSide::LowerConvex);
    REQUIRE(conv.size() == 1);
    CHECK_FALSE(conv[0].chord);

    FluxModel cu = FluxModel::power(3);
    auto lo = envelope(cu, -1, 1, EnvelopeSide::LowerConvex);
    REQUIRE(lo.size() == 2);
    CHECK(lo[0].chord);
    CHECK(lo[0].from == doctest::Approx(-1.0));
    CHECK(lo[0].to == doctest::Approx(0.5).epsilon(1e-10));
    CHECK_FALSE(lo[1].chord);
    CHECK(lo[1].to == doctest::Approx(1.0));

    auto up = envelope(cu, -1, 1, EnvelopeSide::UpperConcave);
    REQUIRE(up.size() == 2);
    CHECK_FALSE(up[0].chord);
    CHECK(up[0].to == doctest::Approx(-0.5).epsilon(1e-10));
    CHECK(up[1].chord);

    // The lower envelope has nondecreasing slope and lies below f.
    double prev = -1e300;
    for (int i = 0; i <= 200; ++i) {
        double w = -1 + 2.0 * i / 200;
        CHECK(envelope_value(cu, lo, w) <= cu.f(w) + 1e-12);
        if (i > 0) {
            double s = (envelope_value(cu, lo, w) - envelope_value(cu, lo, w - 0.01)) / 0.01;
            CHECK(s >= prev - 1e-9);
            prev = s;
        }
    }
}
