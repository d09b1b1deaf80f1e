#include "doctest.h"
#include "wft/riemann.hpp"

using namespace wft;

TEST_CASE("Rankine-Hugoniot speeds") {
    CHECK(rh_speed(FluxModel::burgers(), 1, 0) == doctest::Approx(0.5));
    CHECK(rh_speed(FluxModel::power(3), 1, -1) == doctest::Approx(1.0));
    double a = 0.7;
    CHECK(rh_speed(FluxModel::power(3), a, 0) == doctest::Approx(a * a));
}

TEST_CASE("Burgers fans") {
    FluxModel b = FluxModel::burgers();
    WaveFan s = solve_riemann(b, 1, 0);
    REQUIRE(s.waves.size() == 1);
    CHECK(s.waves[0].kind == WaveKind::Shock);
    CHECK(s.waves[0].speed_lo == doctest::Approx(0.5));
    WaveFan r = solve_riemann(b, 0, 1);
    REQUIRE(r.waves.size() == 1);
    CHECK(r.waves[0].kind == WaveKind::Rarefaction);
    CHECK(r.waves[0].speed_lo == doctest::Approx(0.0));
    CHECK(r.waves[0].speed_hi == doctest::Approx(1.0));
    CHECK(solve_riemann(b, 0.3, 0.3).empty());
}

TEST_CASE("cubic composite wave") {
    FluxModel cu = FluxModel::power(3);
    WaveFan f = solve_riemann(cu, -1, 1);
    REQUIRE(f.waves.size() == 2);
    CHECK(f.waves[0].is_discontinuity());
    CHECK(f.waves[0].ul == doctest::Approx(-1));
    CHECK(f.waves[0].ur == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(f.waves[0].speed_lo == doctest::Approx(0.75).epsilon(1e-10));
    CHECK(f.waves[1].kind == WaveKind::Rarefaction);
    CHECK(f.waves[1].speed_lo == doctest::Approx(0.75).epsilon(1e-10));
    CHECK(f.waves[1].speed_hi == doctest::Approx(3.0));
}

TEST_CASE("admissibility") {
    CHECK(is_admissible_jump(FluxModel::burgers(), 1, 0));
    CHECK_FALSE(is_admissible_jump(FluxModel::burgers(), 0, 1));
    CHECK_FALSE(is_admissible_jump(FluxModel::power(3), -1, 1));
    CHECK(is_admissible_jump(FluxModel::power(3), -1, 0.5));
}
