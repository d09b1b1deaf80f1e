#include <random>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "wft/error.hpp"
#include "wft/scenario.hpp"

using namespace wft;

namespace {

std::string bundled(const std::string& name) { return std::string(WFT_SOURCE_DIR) + "/scenarios/" + name + ".scn"; }

int parse_error_line(const std::string& text) {
    try {
        parse_scenario(text);
    } catch (const ParseError& e) {
        std::string w = e.what();
        auto p = w.find("line ");
        return p == std::string::npos ? -1 : std::stoi(w.substr(p + 5));
    }
    return 0;
}

} // namespace

TEST_CASE("bundled dam break") {
    RunResult r = run_scenario(load_scenario(bundled("burgers_dambreak")));
    CHECK(r.exit_code == 0);
    bool found = false;
    for (const auto& rep : r.reports)
        if (rep.name == "front_position") {
            found = true;
            CHECK(rep.measured <= 1e-12);
        }
    CHECK(found);
    for (const char* f : {"solution.csv", "events.csv", "paths.csv", "reports.jsonl", "reports.csv", "summary.json"})
        CHECK(r.files.count(f) == 1);
}

TEST_CASE("bundled cubic oscillation") {
    RunResult r = run_scenario(load_scenario(bundled("cubic_oscillation")));
    CHECK(r.exit_code == 0);
    std::size_t n = 0;
    for (const auto& rep : r.reports)
        if (rep.name == "length_estimate") {
            ++n;
            CHECK(rep.pass);
        }
    CHECK(n > 0);
    RunResult again = run_scenario(load_scenario(bundled("cubic_oscillation")));
    CHECK(again.files == r.files);
}

TEST_CASE("parse errors carry line numbers") {
    CHECK(parse_error_line("[flux]\nkind = power\nexponent = three\n") == 3);
    CHECK(parse_error_line("[flux]\nkind = table\npiece = 0 1 0 x\n") == 3);
    CHECK(parse_error_line("# c\n[flux]\nkind burgers\n") == 3);
    CHECK(parse_error_line("[fluxx]\n") == 1);
    CHECK(parse_error_line("[flux]\nkind = burgers\n[analysis]\ncheck = nothing T=1\n") == 4);
    CHECK(parse_error_line("[flux]\nkind = burgers\nkind = power\n") == 3);
    CHECK_THROWS_AS(run_scenario(parse_scenario("[flux]\nkind = wobbly\n")), ParseError);
    CHECK_THROWS_AS(run_scenario(parse_scenario("[flux]\nkind = table\npiece = 0 1 0 0 1\npiece = 2 3 2 0 1\n")),
                    ParseError);
}

TEST_CASE("random datum generator") {
    PiecewiseConstantFn a = random_datum(42, 10, -1, 1, -1, 1, 8, false);
    PiecewiseConstantFn b = random_datum(42, 10, -1, 1, -1, 1, 8, false);
    CHECK(a.values() == b.values());
    CHECK(a.breakpoints().size() == 11);
    std::mt19937_64 gen(42);
    for (std::size_t k = 0; k < 10; ++k) CHECK(a.values()[k] == -1.0 + 2.0 * static_cast<double>(gen() % 9) / 8);
    PiecewiseConstantFn alt = random_datum(42, 10, -1, 1, -1, 1, 8, true);
    CHECK(alt.values()[1] == -a.values()[1]);
    CHECK(alt.values()[2] == a.values()[2]);

    Scenario sc = parse_scenario("[flux]\nkind = burgers\n[datum]\nkind = random\nseed = 3\npieces = 4\n");
    CHECK(scenario_datum(sc).values() == random_datum(3, 4, -1, 1, -1, 1, 8, false).values());
    CHECK(scenario_datum(sc, 9, true).values() == random_datum(9, 4, -1, 1, -1, 1, 8, false).values());
}

TEST_CASE("example scenarios round trip") {
    Scenario sc = parse_scenario(example_scenario("sharpness", 5, 2.0), "sharpness");
    ExampleInstance e = build_sharpness(2, 5);
    FluxModel f = scenario_flux(sc);
    for (double w = -1.0; w <= 3.0; w += 0.125) CHECK(f.f(w) == e.flux.f(w));
    CHECK(scenario_datum(sc).values() == e.datum.values());
    CHECK(sc.get("reference", "tv_qp") != "");
    RunResult r = run_scenario(sc, {}, false);
    CHECK(r.exit_code == 0);

    Scenario cantor = parse_scenario(example_scenario("cantor", 2, 2.0));
    CHECK_THROWS_AS(run_scenario(cantor), InvalidArgument);
    CHECK_THROWS_AS(example_scenario("nothing", 1, 2.0), InvalidArgument);
}

TEST_CASE("overrides and gating") {
    Scenario sc = parse_scenario(
        "[flux]\nkind = burgers\n[datum]\nkind = steps\nbreakpoints = -1 0\nvalues = 1\n[run]\ndv = 0.25\n"
        "[analysis]\ncheck = front_position t=1 x=0.75 tol=1e-12 gate=0\ncheck = front_position t=1 x=0.5\n");
    RunResult r = run_scenario(sc);
    CHECK(r.exit_code == 0);
    CHECK_FALSE(r.reports[0].pass);
    RunResult h = run_scenario(sc, {std::nullopt, 2.0, std::nullopt});
    CHECK(h.exit_code == 0);
    CHECK(nlohmann::json::parse(h.files["summary.json"])["stats"]["horizon"] == 2.0);
    CHECK_THROWS_AS(run_scenario(sc, {std::nullopt, 0.5, std::nullopt}), HistoryGap);

    Scenario gated = parse_scenario(
        "[flux]\nkind = burgers\n[datum]\nkind = steps\nbreakpoints = -1 0\nvalues = 1\n[run]\ndv = 0.25\n"
        "[analysis]\ncheck = front_position t=1 x=0.75\n");
    RunResult g = run_scenario(gated);
    CHECK(g.exit_code == 1);
    auto j = nlohmann::json::parse(g.files["summary.json"]);
    CHECK(j["failures"][0] == "front_position");
    CHECK(j["pass"] == false);
}
