#include <cmath>

#include "doctest.h"
#include "wft/error.hpp"
#include "wft/lagrangian.hpp"

using namespace wft;

TEST_CASE("free paths ahead of a fan") {
    // Box under Burgers: labels in (0, 0.5) move at speed ~1 and reach the shock only at t = 2(1 - y).
    SimState s = simulate(FluxModel::burgers(), PiecewiseConstantFn({0, 1}, {1}), 1.0 / 64, 0.5);
    auto paths = track_characteristics(s, {{0.1, 0.1}, {0.2, 0.1}, {0.3, 0.1}}, 0.5);
    for (const auto& p : paths) {
        CHECK(p.status == PathStatus::Free);
        CHECK(std::isinf(p.T));
    }
    CHECK(survival_measure(paths, 0.0) == doctest::Approx(0.3));
    CHECK(survival_measure(paths, 0.5) == doctest::Approx(0.3));
}

TEST_CASE("dam break paths ride the shock") {
    SimState s = simulate(FluxModel::burgers(), PiecewiseConstantFn({-1, 0}, {1}), 0.25, 1.0);
    auto paths = track_characteristics(s, {{-0.4, 0.1}, {-0.1, 0.1}, {-0.9, 0.1}}, 1.0);
    CHECK(paths[0].status == PathStatus::Riding);
    CHECK(paths[1].status == PathStatus::Riding);
    CHECK(paths[0].position(1.0) == doctest::Approx(0.5));
    CHECK(std::isinf(paths[0].T));
    // y = -0.9 meets the shock at t = 1.8.
    CHECK(paths[2].status == PathStatus::Free);
    CHECK(paths[2].position(1.0) == doctest::Approx(-0.9 + s.pf.node_speed(s.pf.find(1.0))));
}

TEST_CASE("values swallowed at a merge die at the merge time") {
    SimState s = simulate(FluxModel::burgers(), PiecewiseConstantFn({-2, -1, 0}, {1, 0.5}), 0.25, 4.5);
    auto paths = track_characteristics(s, {{-1.5, 0.1}, {-0.5, 0.1}}, 4.5);
    // The fan head (value 1) meets the merged shock; after that 1 lies outside the shock's value range.
    double t_merge = -1.0;
    for (const Event& e : s.log)
        if (!e.initial && e.t > 3.0 && e.in_ids.size() >= 2) t_merge = e.t;
    REQUIRE(t_merge > 0.0);
    CHECK(paths[0].T == doctest::Approx(t_merge));
    CHECK(paths[0].status == PathStatus::Dead);
    CHECK(std::isinf(paths[1].T));
}

TEST_CASE("survival decays for a box") {
    SimState s = simulate(FluxModel::burgers(), PiecewiseConstantFn({0, 1}, {1}), 1.0 / 16, 4.0);
    auto paths = track_characteristics(s);
    double prev = survival_measure(paths, 0.0);
    CHECK(prev == doctest::Approx(1.0));
    bool dropped = false;
    for (double t = 0.25; t <= 4.0; t += 0.25) {
        double F = survival_measure(paths, t);
        CHECK(F <= prev + 1e-15);
        dropped = dropped || F < prev;
        prev = F;
    }
    CHECK(dropped);
}

TEST_CASE("label grid and export") {
    PiecewiseConstantFn u({0, 1, 3}, {1, -1});
    auto g = default_y_grid(u, 16);
    double total = 0.0;
    for (auto [y, w] : g) total += w;
    CHECK(total == doctest::Approx(3.0));
    SimState s = simulate(FluxModel::power(3), u, 0.1, 0.5);
    CHECK_THROWS_AS(track_characteristics(s, g, 1.0), HistoryGap);
    CHECK_THROWS_AS(track_characteristics(s, {{1.0, 0.1}}), InvalidArgument);
    std::string csv = paths_csv(track_characteristics(s, g));
    CHECK(csv.rfind("y,w,T,polyline\n", 0) == 0);
}
