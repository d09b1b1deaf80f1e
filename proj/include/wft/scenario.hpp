#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wft/analysis.hpp"
#include "wft/examples.hpp"

namespace wft {

// One "check = name key=value ..." line of the [analysis] section.
struct CheckSpec {
    std::string name;
    std::map<std::string, std::string> args;
    int line = 0;
    bool gated() const;
    double number(const std::string& key, double fallback) const;
    std::vector<double> list(const std::string& key, std::vector<double> fallback) const;
};

// Flat key/value sections: [flux], [datum], [run], [analysis].
struct Scenario {
    std::string name;
    std::map<std::string, std::map<std::string, std::string>> sections;
    std::map<std::string, std::map<std::string, int>> lines; // source line of each key
    std::vector<std::string> flux_pieces;                    // "piece = lo hi origin c0 c1 ..."; polynomial in w - origin
    std::vector<CheckSpec> checks;

    std::string get(const std::string& section, const std::string& key, const std::string& fallback = "") const;
    double number(const std::string& section, const std::string& key, double fallback) const;
};

Scenario parse_scenario(const std::string& text, const std::string& name = "scenario");
// Reads a file, or a bundled scenario by name when no such file exists.
Scenario load_scenario(const std::string& path_or_name);
std::string bundled_scenario_dir();

FluxModel scenario_flux(const Scenario& sc);
// Documented generator: mt19937_64(seed); piece k has width (hi - lo)/pieces and value
// vmin + (vmax - vmin) * (r mod (levels + 1)) / levels, sign flipped on odd k when alternate = 1.
PiecewiseConstantFn random_datum(std::uint64_t seed, int pieces, double lo, double hi, double vmin, double vmax,
                                 int levels, bool alternate);
PiecewiseConstantFn scenario_datum(const Scenario& sc, std::uint64_t seed_override = 0, bool use_override = false);

struct RunOverrides {
    std::optional<double> dv, horizon;
    std::optional<std::uint64_t> seed;
};

struct RunResult {
    int exit_code = 0;
    std::vector<BoundReport> reports;
    std::vector<std::string> failures;
    std::vector<std::string> warnings;
    std::map<std::string, std::string> files; // artifact name -> contents
    std::map<std::string, double> stats;      // events, fronts, masses
};

// Runs init, advance, trace, track and checks; nothing is written to disk.
RunResult run_scenario(const Scenario& sc, const RunOverrides& ov = {}, bool with_checks = true);
// Writes the artifacts of a run into dir (created if missing).
void write_artifacts(const RunResult& r, const std::string& dir);

// Scenario text for an example instance (flux recipe, datum, references).
std::string example_scenario(const std::string& example, int depth, double p);

std::string summary_json(const std::string& scenario, const RunResult& r);

} // namespace wft
