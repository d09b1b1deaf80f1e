#include <cmath>

#include "doctest.h"
#include "wft/error.hpp"
#include "wft/examples.hpp"
#include "wft/kinetic.hpp"

using namespace wft;

TEST_CASE("sharpness instance") {
    ExampleInstance e = build_sharpness(2, 3);
    double a1 = 1.0 / std::log(2.0);
    CHECK(e.params["a"][0] == doctest::Approx(a1));
    CHECK(e.params["L"][0] == doctest::Approx(3 * a1 * a1));
    double ref = 0.0;
    for (int n = 1; n <= 3; ++n) ref += 2.0 / (n * std::pow(std::log(1.0 + n), 2));
    CHECK(sharpness_reference(2, 3, 2.0) == doctest::Approx(ref));

    ExampleInstance one = build_sharpness(2, 1);
    REQUIRE(one.datum.pieces() == 1);
    SimState s = simulate(one.flux, one.datum, 1e-2, 1.0);
    CHECK(trace(s, TraceKind::Solution).max_value() == doctest::Approx(one.params["a"][0]));
}

TEST_CASE("Cantor instance") {
    const double alpha = std::sqrt(2.0) - 1.0;
    ExampleInstance c1 = build_cantor(2.0, 1);
    REQUIRE(c1.sample_u.size() == 4);
    CHECK(c1.sample_u[1] == doctest::Approx((1 + alpha) / 2));
    CHECK(c1.sample_u[2] == doctest::Approx((1 - alpha) / 2));
    CHECK(c1.sample_u[3] == 1.0);
    for (int n = 1; n <= 6; ++n) {
        ExampleInstance c = build_cantor(2.0, n);
        CHECK(gauge_tv_samples(c.sample_u, power_gauge(2), VariationSign::Positive) == doctest::Approx(1.0));
        std::vector<double> b = cantor_boundary_values(c);
        double neg = 0.0;
        for (std::size_t i = 1; i < b.size(); ++i) neg += std::pow(std::max(b[i - 1] - b[i], 0.0), 2);
        CHECK(neg == doctest::Approx(n * alpha * alpha));
    }
    CHECK_THROWS_AS(build_cantor(2.0, 40), DepthTooLarge);
}

TEST_CASE("kinetic series") {
    for (const auto& row : kinetic_series_table(6)) {
        CHECK(row.log2_term == 0);
        CHECK(row.log2_N + row.log2_a_pow + row.log2_L == 0);
    }
    ExampleInstance k = build_kinetic(2);
    CHECK(k.flux.lo() <= -1.0);
    CHECK(k.flux.hi() >= 2.0);
}

TEST_CASE("non-polynomial construction") {
    NonPolyParams P = search_nonpoly_parameters(3);
    REQUIRE(P.levels.size() == 3);
    for (const auto& c : validate_nonpoly(P)) CHECK_MESSAGE(c.ok, c.name << " level " << c.level);
    for (const auto& L : P.levels) {
        CHECK(L.a < L.B_star);
        CHECK(L.B_star < L.A_star);
        CHECK(L.A_star < 2 * L.a);
    }
    FluxModel f = nonpoly_flux(P);
    for (int j = 2; j <= 8; ++j) CHECK(std::abs(f.eval(0.0, j)) < 1e-10);
    InflectionSet inf = detect_inflections(f);
    REQUIRE(inf.points.size() == 1);
    CHECK(inf.points[0].non_polynomial);
    CHECK_THROWS_AS(search_nonpoly_parameters(9), DepthTooLarge);

    BlockMeasurement m = measure_nonpoly_block(nonpoly_block(P, 1));
    CHECK(m.pass);
    CHECK(m.measured_norm >= m.bound_norm);
}
