#include <cmath>

#include "doctest.h"
#include "wft/analysis.hpp"
#include "wft/error.hpp"

using namespace wft;

namespace {

PiecewiseConstantFn oscillation() {
    return PiecewiseConstantFn({-2, -1.5, -1, -0.5, 0, 0.5, 1, 1.5, 2},
                               {0.5, -0.5, 0.75, -0.25, 0.5, -0.75, 0.25, -0.5});
}

bool all_pass(const std::vector<BoundReport>& r) {
    for (const auto& x : r)
        if (!x.pass) return false;
    return !r.empty();
}

} // namespace

TEST_CASE("report arithmetic") {
    BoundReport r = make_report("x", 1.0, 2.0, 0.1);
    CHECK(r.slack == 0.5);
    CHECK(r.pass);
    CHECK_FALSE(make_report("x", 2.3, 2.0, 0.1).pass);
    CHECK(make_report("x", 2.2, 2.0, 0.1).pass);
    CHECK(calibrate_constant({{1.0, 1.0}, {2.0, 3.0}}) == doctest::Approx(1.2 * 1.5));
    std::string csv = reports_csv({r});
    CHECK(csv.rfind("scenario,name,measured,bound,tolerance,slack,pass\n", 0) == 0);
    CHECK(reports_jsonl({r, r}).find('\n') != std::string::npos);
}

TEST_CASE("length estimate") {
    FluxModel b = FluxModel::burgers();
    SimState box = simulate(b, PiecewiseConstantFn({0, 1}, {1}), 1.0 / 64, 0.5);
    auto paths = track_characteristics(box);
    auto reps = length_estimate_report(box, paths, 0.5);
    CHECK(all_pass(reps));
    for (const auto& r : reps) CHECK(r.measured == 0.0);

    SimState cu = simulate(FluxModel::power(3), oscillation(), 1e-2, 1.0);
    auto cpaths = track_characteristics(cu);
    for (double T : {0.25, 0.5, 1.0}) CHECK(all_pass(length_estimate_report(cu, cpaths, T)));
}

TEST_CASE("undulation count") {
    SimState cu = simulate(FluxModel::power(3), oscillation(), 1e-2, 1.0);
    for (double h : {0.1, 0.2, 0.4}) CHECK(undulation_count_bound_check(cu, 1.0, h).pass);
    BoundReport big = undulation_count_bound_check(cu, 1.0, 2.0);
    CHECK(big.measured == 0.0);
    CHECK(big.pass);
}

TEST_CASE("regularity reports") {
    SimState zero = simulate(FluxModel::power(3), PiecewiseConstantFn(), 1e-2, 1.0);
    ConvexGauge phi = ConvexGauge::from_function(power_gauge(3), 2.0, 64);
    auto reps = regularity_bounds_report(zero, 1.0, 0.5, 2.0, {1.0, 1.0, 1.0}, phi);
    REQUIRE(reps.size() == 3);
    for (const auto& r : reps) CHECK(r.measured == 0.0);
    CHECK_THROWS_AS(regularity_bounds_report(zero, 1.0, 0.5, 2.0, {1.0, 1.0, 1.0}), MissingGauge);

    SimState cu = simulate(FluxModel::power(3), oscillation(), 1e-2, 2.0);
    RegularityMeasures m1 = measure_regularity(cu, 0.5, flux_gauge(cu), 0.5, 2.0);
    CHECK(m1.velocity_tv > 0.0);
    CHECK(m1.fractional > 0.0);
}

TEST_CASE("Oleinik estimate") {
    FluxModel b = FluxModel::burgers();
    CHECK(oleinik_measure(PiecewiseConstantFn({0, 1, 2}, {1, 0.5})) == 0.0);
    SimState fan = simulate(b, PiecewiseConstantFn({0, 10}, {1}), 1.0 / 64, 2.0);
    for (double T : {0.5, 1.0, 2.0}) {
        BoundReport r = oleinik_check(fan, T);
        CHECK(r.pass);
        CHECK(r.measured > 0.9 / T);
    }
    SimState cu = simulate(FluxModel::power(3), oscillation(), 1e-2, 1.0);
    CHECK_THROWS_AS(oleinik_check(cu, 1.0), NotConvex);
}

TEST_CASE("inverse Holder constant") {
    BoundReport c = inverse_holder_check(FluxModel::power(3), 2, 0.0, 1.0);
    CHECK(c.measured == doctest::Approx(1.0 / 3));
    CHECK(c.pass);
    BoundReport bad = inverse_holder_check(FluxModel::power(3), 1, 0.0, 1.0);
    CHECK_FALSE(bad.pass);
    BoundReport lin = inverse_holder_check(FluxModel::burgers(), 1, -1.0, 1.0);
    CHECK(lin.measured == doctest::Approx(1.0));
    CHECK_THROWS_AS(inverse_holder_check(FluxModel::power(3), 2, -1.0, 1.0), NotMonotone);
}

TEST_CASE("small jump chord inequality") {
    FluxModel cu = FluxModel::power(3);
    SimState s = simulate(cu, oscillation(), 1e-2, 1.0);
    CHECK(all_pass(small_jump_chord_check(s, 1.0, 0, 1.0)));
    // A non-admissible jump from -0.2 to 0.2 leaves f' o u constant.
    PiecewiseConstantFn bad({0, 1, 2}, {-0.2, 0.2});
    auto reps = small_jump_chord_check(cu, bad, 0.0, 2, 0.5);
    bool violated = false;
    for (const auto& r : reps) violated = violated || !r.pass;
    CHECK(violated);
    CHECK_THROWS_AS(small_jump_chord_check(cu, PiecewiseConstantFn({0, 1}, {0.3}), 0.0, 2, 0.5), NoStraddlingPairs);
}

TEST_CASE("SBV diagnostic") {
    SimState box = simulate(FluxModel::burgers(), PiecewiseConstantFn({0, 1}, {1}), 1.0 / 16, 4.0);
    auto paths = track_characteristics(box);
    std::vector<double> times;
    for (int i = 0; i <= 16; ++i) times.push_back(0.25 * i);
    SbvReport r = sbv_diagnostic(box, paths, times);
    CHECK(r.monotone);
    CHECK(r.F.front() == doctest::Approx(1.0));
    CHECK(r.F.back() < r.F.front());
    CHECK(r.drops.size() <= box.event_times().size());
    SbvReport early = sbv_diagnostic(box, paths, {0.0, 0.5, 1.0});
    CHECK(early.F[0] == early.F[2]);
}
