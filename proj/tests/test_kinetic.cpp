#include <cmath>

#include "doctest.h"
#include "wft/examples.hpp"
#include "wft/kinetic.hpp"

using namespace wft;

TEST_CASE("Burgers shock dissipation") {
    FluxModel b = FluxModel::burgers();
    CHECK(dissipation_rate(b, 1, 0, 0.5, 0.5) == doctest::Approx(-0.125));
    CHECK(dissipation_rate(b, 1, 0, 0.5, -0.5) == 0.0);
    CHECK(dissipation_rate(b, 1, 0, 0.5, 1.5) == 0.0);
    CHECK(dw_mu_mass(b, 1, 0, 0.5) == doctest::Approx(0.25));
    CHECK(dw_mu_mass(b, 0.3, 0.3, 0.3) == 0.0);
}

TEST_CASE("dissipation over a run") {
    // Grid spacing 1/4 puts k = 1/2 on a node, so the polygonal rate is exact.
    SimState s = simulate(FluxModel::burgers(), PiecewiseConstantFn({-1, 0}, {1}), 0.25, 1.0);
    CHECK(total_dissipation(s, 0.5, 0.0, 1.0) == doctest::Approx(-0.125));
    for (const Front& f : s.fronts)
        if (std::abs(f.il - f.ir) == 1) CHECK(dissipation_rate(s, f, 0.5) == doctest::Approx(0.0));
    auto recs = dissipation_records(s, {0.25, 0.5});
    CHECK(recs.size() == s.fronts.size());
    CHECK(dissipation_csv(recs).rfind("front,t0,t1,k,rate,dw_mu_mass\n", 0) == 0);
}

TEST_CASE("kinetic block") {
    double L = 0.25, a = 1.0 / 64, h = 1.0 / 64;
    ExampleInstance blk = kinetic_block(L, a, h);
    CHECK(dw_mu_mass(blk.flux, 0, 3 * L, 0) == doctest::Approx(2 * h * L / a).epsilon(1e-9));
    for (double k = 0.0; k <= 3 * L; k += L / 16)
        CHECK(dissipation_rate(blk.flux, 0, 3 * L, 0, k) == doctest::Approx(blk.flux.f(3 * L) - blk.flux.f(k)));

    SimState s = simulate(blk.flux, blk.datum, 1.0 / 256, 1.0);
    int standing = -1;
    for (const Front& f : s.fronts)
        if (f.t0 == 0.0 && f.x0 == 0.0 && f.speed == 0.0 && f.alive()) standing = f.id;
    REQUIRE(standing >= 0);
    const Front& f = s.fronts[static_cast<std::size_t>(standing)];
    CHECK(s.pf.node(f.il) == 0.0);
    CHECK(s.pf.node(f.ir) == doctest::Approx(3 * L));
    PiecewiseConstantFn u = trace(s, TraceKind::Solution);
    CHECK(u(-1e-9) == 0.0);
    CHECK(u(1e-9) == doctest::Approx(3 * L));
    double k = 1.5 * L;
    CHECK(dissipation_rate(s, f, k) == doctest::Approx(-s.pf.f(k)));
}
