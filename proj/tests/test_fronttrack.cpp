#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "wft/error.hpp"
#include "wft/fronttrack.hpp"

using namespace wft;

namespace {

std::vector<int> fronts_near(const SimState& s, double t, double x) {
    std::vector<int> out;
    for (int id : fronts_at(s, t))
        if (std::abs(s.fronts[static_cast<std::size_t>(id)].position(t) - x) < 1e-9) out.push_back(id);
    return out;
}

} // namespace

TEST_CASE("polygonal grid") {
    PolygonalFlux pf = polygonalize(FluxModel::burgers(), {0.0, 1.0}, 0.5);
    for (double w : {0.0, 0.5, 1.0}) CHECK(pf.find(w) >= 0);
    for (std::size_t i = 0; i < pf.size(); ++i) CHECK(pf.values()[i] == 0.5 * pf.nodes()[i] * pf.nodes()[i]);
    CHECK(pf.node(0) <= 0.0);
    CHECK(pf.nodes().back() >= 1.0);

    PolygonalFlux cu = polygonalize(FluxModel::power(3), {-0.37, 0.81}, 0.1);
    CHECK(cu.find(0.0) >= 0);
    CHECK(cu.find(-0.37) >= 0);
    CHECK(cu.find(0.81) >= 0);
    CHECK_THROWS_AS(polygonalize(FluxModel::burgers(), {1.0}, 1e-9), GridTooFine);
}

TEST_CASE("initial fronts") {
    FluxModel b = FluxModel::burgers();
    SimState dam = simulate(b, PiecewiseConstantFn({-1, 0}, {1}), 0.25, 0.0);
    auto at0 = fronts_near(dam, 0.0, 0.0);
    REQUIRE(at0.size() == 1);
    CHECK(dam.fronts[static_cast<std::size_t>(at0[0])].speed == doctest::Approx(0.5));

    SimState rar = simulate(b, PiecewiseConstantFn({0, 1}, {1}), 0.25, 0.0);
    auto fan = fronts_near(rar, 0.0, 0.0);
    REQUIRE(fan.size() == 4);
    std::vector<double> speeds;
    for (int id : fan) speeds.push_back(rar.fronts[static_cast<std::size_t>(id)].speed);
    std::sort(speeds.begin(), speeds.end());
    std::vector<double> chords = {0.125, 0.375, 0.625, 0.875};
    for (std::size_t i = 0; i < 4; ++i) CHECK(speeds[i] == doctest::Approx(chords[i]));

    SimState none = simulate(b, PiecewiseConstantFn(), 0.25, 1.0);
    CHECK(none.fronts.empty());
    CHECK(none.live_count() == 0);
}

TEST_CASE("shock merging") {
    SimState s = simulate(FluxModel::burgers(), PiecewiseConstantFn({-2, -1, 0}, {1, 0.5}), 0.25, 3.0);
    std::vector<double> ev = s.event_times();
    REQUIRE_FALSE(ev.empty());
    CHECK(ev.front() == doctest::Approx(2.0));
    auto merged = fronts_near(s, 3.0, 1.0);
    REQUIRE(merged.size() == 1);
    const Front& f = s.fronts[static_cast<std::size_t>(merged[0])];
    CHECK(f.speed == doctest::Approx(0.5));
    CHECK(s.pf.node(f.il) == 1.0);
    CHECK(s.pf.node(f.ir) == 0.0);
}

TEST_CASE("single power block keeps its height") {
    // f = u^3 and u0 = chi[0, 3]: the plateau survives while t < L / (p a^p) = 1.5.
    SimState s = simulate(FluxModel::power(3), PiecewiseConstantFn({0, 3}, {1}), 1.0 / 64, 1.0);
    PiecewiseConstantFn u = trace(s, TraceKind::Solution);
    CHECK(u.max_value() == 1.0);
    CHECK(u.breakpoints().front() >= 0.0);
    CHECK(u.breakpoints().back() <= 3.0 + 1.0 + 1e-12);
}

TEST_CASE("advance and trace") {
    SimState s = simulate(FluxModel::burgers(), PiecewiseConstantFn({-1, 0}, {1}), 0.25, 1.0);
    std::size_t n = s.log.size();
    advance_to(s, 1.0);
    CHECK(s.log.size() == n);
    CHECK(s.time == 1.0);
    PiecewiseConstantFn u = trace(s, TraceKind::Solution);
    CHECK(u(0.49) == 1.0);
    CHECK(u(0.51) == 0.0);
    CHECK(u.integral() == doctest::Approx(1.0));
    PiecewiseConstantFn v = trace(s, TraceKind::VelocityExact);
    CHECK(v(0.4) == doctest::Approx(1.0));
    CHECK_THROWS_AS(trace_at(s, 2.0, TraceKind::Solution), HistoryGap);
    CHECK(trace_at(s, 0.0, TraceKind::Solution).values() == std::vector<double>{1.0});
}

TEST_CASE("polygonal velocity in a fan") {
    double dv = 1.0 / 32;
    SimState s = simulate(FluxModel::power(3), PiecewiseConstantFn({0, 4}, {1}), dv, 0.2);
    PiecewiseConstantFn v = trace(s, TraceKind::VelocityPolygonal);
    double bound = dv * FluxModel::power(3).max_abs_d2f(0, 1) + 1e-12;
    // Adjacent values within the fan at x ~ 0.
    const auto& vals = v.values();
    const auto& xs = v.breakpoints();
    for (std::size_t i = 1; i < vals.size(); ++i)
        if (xs[i] > 0.0 && xs[i] < 0.5) CHECK(std::abs(vals[i] - vals[i - 1]) <= bound);
}

TEST_CASE("resource caps and determinism") {
    PiecewiseConstantFn u({-2, -1, 0, 1, 2}, {0.5, -0.5, 0.75, -0.25});
    SimConfig cfg;
    cfg.event_cap = 3;
    CHECK_THROWS_AS(simulate(FluxModel::power(3), u, 0.05, 2.0, cfg), EventStorm);
    SimState a = simulate(FluxModel::power(3), u, 0.05, 1.0);
    SimState b = simulate(FluxModel::power(3), u, 0.05, 1.0);
    CHECK(event_log_csv(a) == event_log_csv(b));
    CHECK(event_log_csv(a).rfind("time,position,incoming,outgoing\n", 0) == 0);
    CHECK(trace(a, TraceKind::Solution).integral() == doctest::Approx(u.integral()).epsilon(1e-12));
}
