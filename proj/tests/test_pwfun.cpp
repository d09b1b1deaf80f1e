#include <random>

#include "doctest.h"
#include "wft/error.hpp"
#include "wft/pwfun.hpp"

using namespace wft;

namespace {

PiecewiseConstantFn steps(std::vector<double> v) {
    std::vector<double> x;
    for (std::size_t i = 0; i <= v.size(); ++i) x.push_back(static_cast<double>(i));
    return PiecewiseConstantFn(x, v);
}

// Exhaustive sup over subsequences, including the far-field zeros at both ends.
double brute_gauge(const std::vector<double>& s, const Gauge& phi) {
    const std::size_t n = s.size();
    double best = 0.0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        double sum = 0.0, last = 0.0;
        bool any = false;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t{1} << i)) {
                if (any) sum += phi(std::abs(s[i] - last));
                last = s[i];
                any = true;
            }
        best = std::max(best, sum);
    }
    return best;
}

} // namespace

TEST_CASE("total variation") {
    CHECK(total_variation(steps({0, 1, 2, 1, 3, 0})) == 8.0);
    CHECK(total_variation(PiecewiseConstantFn()) == 0.0);
    CHECK(total_variation(PiecewiseConstantFn({0, 2}, {1.5})) == 3.0);
}

TEST_CASE("construction and text round trip") {
    CHECK_THROWS_AS(PiecewiseConstantFn({0, 1}, {1, 2}), InvalidArgument);
    CHECK_THROWS_AS(PiecewiseConstantFn({1, 0}, {1}), InvalidArgument);
    PiecewiseConstantFn u({-1, 0.1, 2}, {0.3, -2});
    CHECK(PiecewiseConstantFn::from_text(u.to_text()).values() == u.values());
    CHECK(PiecewiseConstantFn::from_csv(u.to_csv()).breakpoints() == u.breakpoints());
    CHECK(u(-0.5) == 0.3);
    CHECK(u(0.1) == -2);
    CHECK(u(5) == 0);
    CHECK(u.integral() == doctest::Approx(0.3 * 1.1 - 2 * 1.9));
}

TEST_CASE("undulation decomposition") {
    UndulationTree t = decompose_undulations(steps({0, 1, 2, 1, 3, 0}));
    std::vector<double> h = t.heights();
    std::sort(h.begin(), h.end());
    REQUIRE(h.size() == 2);
    CHECK(h[0] == 1.0);
    CHECK(h[1] == 3.0);
    UndulationTree bump = decompose_undulations(steps({1, 2, 4, 2}));
    REQUIRE(bump.nodes.size() == 1);
    CHECK(bump.nodes[0].height == 4.0);
    CHECK(decompose_undulations(PiecewiseConstantFn()).nodes.empty());

    CHECK(count_undulations_above(t, 2.0) == 1);
    CHECK(count_undulations_above(t, 0.5) == 2);
    CHECK(count_undulations_above(t, 3.0) == 0);
}

TEST_CASE("gauge variation") {
    std::mt19937_64 gen(7);
    std::uniform_int_distribution<int> val(-4, 4);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> v(8);
        for (double& x : v) x = val(gen);
        PiecewiseConstantFn u = steps(v);
        CHECK(gauge_tv(u, power_gauge(1)) == doctest::Approx(total_variation(u)));
        std::vector<double> s = {0};
        s.insert(s.end(), v.begin(), v.end());
        s.push_back(0);
        CHECK(gauge_tv(u, power_gauge(2)) == doctest::Approx(brute_gauge(s, power_gauge(2))));
    }
    CHECK(gauge_tv(steps({1}), power_gauge(2)) == 2.0);
    CHECK(gauge_tv_samples({0, 1, 0}, power_gauge(2)) == 2.0);
    CHECK(gauge_tv_samples({0, 1, 2, 3}, power_gauge(2), VariationSign::Negative) == 0.0);
    CHECK(gauge_tv_samples({0, 1, 2, 3}, power_gauge(2), VariationSign::Positive) == 9.0);
}

TEST_CASE("majorization") {
    CHECK(majorization_bound({3, 1}, {2, 2}, power_gauge(2)));
    CHECK(majorization_bound({2, 2}, {2, 2}, power_gauge(2)));
    CHECK_FALSE(majorization_bound({2, 2}, {3, 1}, power_gauge(2)));
}
