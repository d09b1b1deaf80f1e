// wft: scenario runner for the wave-front tracking library.
//   solve    run the scenario and write solution, events and paths
//   analyze  solve, then run the [analysis] checks; exit 1 on a failed gated check
//   riemann  print the wave fan of a single Riemann problem
//   example  print a constructed instance as a scenario file
//   sweep    analyze several scenarios independently and aggregate the summaries
//
// Exit codes: 0 ok, 1 CheckFailure, 2 ParseError or bad usage, 3 ResourceCap, 4 other errors.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wft/error.hpp"
#include "wft/riemann.hpp"
#include "wft/scenario.hpp"

namespace {

struct Common {
    std::vector<std::string> scenarios;
    std::string out;
    std::optional<double> dv, horizon;
    std::optional<std::uint64_t> seed;
    std::string format = "json";
};

wft::RunOverrides overrides(const Common& c) { return {c.dv, c.horizon, c.seed}; }

void print_result(const std::string& name, const wft::RunResult& r, const std::string& format) {
    if (format == "csv") std::cout << r.files.at("reports.csv");
    else std::cout << wft::summary_json(name, r);
}

int classify(const std::exception& e) {
    if (dynamic_cast<const wft::ParseError*>(&e)) return 2;
    if (dynamic_cast<const wft::GridTooFine*>(&e) || dynamic_cast<const wft::EventStorm*>(&e)) return 3;
    return 4;
}

std::string describe(const std::exception& e) {
    std::string w = e.what();
    if (classify(e) == 3) return "ResourceCap: " + w;
    return w;
}

int run_one(const Common& c, bool checks) {
    if (c.scenarios.size() != 1) {
        std::cerr << "exactly one --scenario is required\n";
        return 2;
    }
    wft::Scenario sc = wft::load_scenario(c.scenarios.front());
    wft::RunResult r = wft::run_scenario(sc, overrides(c), checks);
    if (!c.out.empty()) wft::write_artifacts(r, c.out);
    print_result(sc.name, r, c.format);
    if (r.exit_code != 0) {
        std::string names;
        for (const auto& f : r.failures) names += (names.empty() ? "" : ", ") + f;
        std::cerr << wft::CheckFailure("failing reports: " + names).what() << "\n";
    }
    return r.exit_code;
}

int run_sweep(const Common& c, unsigned workers) {
    namespace fs = std::filesystem;
    std::vector<std::string> items;
    for (const std::string& s : c.scenarios) {
        if (fs::is_directory(s)) {
            std::vector<std::string> found;
            for (const auto& e : fs::directory_iterator(s))
                if (e.path().extension() == ".scn") found.push_back(e.path().string());
            std::sort(found.begin(), found.end());
            items.insert(items.end(), found.begin(), found.end());
        } else {
            items.push_back(s);
        }
    }
    if (items.empty()) {
        std::cerr << "sweep needs at least one --scenario\n";
        return 2;
    }
    std::vector<std::string> names(items.size()), summaries(items.size()), errors(items.size());
    std::vector<int> codes(items.size(), 0);
    std::size_t next = 0;
    std::mutex mu;
    auto worker = [&] {
        for (;;) {
            std::size_t i;
            {
                std::lock_guard<std::mutex> lock(mu);
                if (next >= items.size()) return;
                i = next++;
            }
            try {
                wft::Scenario sc = wft::load_scenario(items[i]);
                names[i] = sc.name;
                wft::RunResult r = wft::run_scenario(sc, overrides(c), true);
                if (!c.out.empty()) wft::write_artifacts(r, (fs::path(c.out) / sc.name).string());
                summaries[i] = r.files.at("summary.json");
                codes[i] = r.exit_code;
            } catch (const std::exception& e) {
                if (names[i].empty()) names[i] = fs::path(items[i]).stem().string();
                errors[i] = describe(e);
                codes[i] = classify(e);
            }
        }
    };
    unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(items.size())));
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < n; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    nlohmann::ordered_json agg;
    agg["scenarios"] = nlohmann::ordered_json::object();
    int worst = 0;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (!errors[i].empty()) agg["scenarios"][names[i]] = {{"scenario", names[i]}, {"exit_code", codes[i]},
                                                              {"error", errors[i]}};
        else agg["scenarios"][names[i]] = nlohmann::ordered_json::parse(summaries[i]);
        worst = std::max(worst, codes[i]);
    }
    agg["exit_code"] = worst;
    std::string text = agg.dump(2) + "\n";
    if (!c.out.empty()) {
        fs::create_directories(c.out);
        std::ofstream(fs::path(c.out) / "sweep_summary.json", std::ios::binary) << text;
    }
    std::cout << text;
    return worst;
}

wft::FluxModel flux_from_name(const std::string& spec) {
    if (spec == "burgers") return wft::FluxModel::burgers();
    if (spec.rfind("power:", 0) == 0) return wft::FluxModel::power(std::stoi(spec.substr(6)));
    if (spec == "cubic") return wft::FluxModel::power(3);
    throw wft::InvalidArgument("flux must be burgers, cubic or power:<n>");
}

int run_riemann(const std::string& flux, double ul, double ur, const std::string& format) {
    wft::FluxModel m = flux_from_name(flux);
    wft::WaveFan fan = wft::solve_riemann(m, ul, ur);
    if (format == "csv") {
        std::cout << std::setprecision(17) << "kind,ul,ur,speed_lo,speed_hi\n";
        for (const auto& w : fan.waves)
            std::cout << wft::to_string(w.kind) << ',' << w.ul << ',' << w.ur << ',' << w.speed_lo << ','
                      << w.speed_hi << '\n';
        return 0;
    }
    nlohmann::ordered_json j;
    j["flux"] = m.label();
    j["ul"] = ul;
    j["ur"] = ur;
    j["waves"] = nlohmann::ordered_json::array();
    for (const auto& w : fan.waves)
        j["waves"].push_back({{"kind", wft::to_string(w.kind)}, {"ul", w.ul}, {"ur", w.ur},
                              {"speed_lo", w.speed_lo}, {"speed_hi", w.speed_hi}});
    std::cout << j.dump(2) << "\n";
    return 0;
}

void add_common(CLI::App* sub, Common& c, bool many) {
    if (many) sub->add_option("--scenario", c.scenarios, "Scenario file, bundled name or directory (repeatable)");
    else sub->add_option("--scenario", c.scenarios, "Scenario file or bundled name")->required();
    sub->add_option("--out", c.out, "Output directory for artifacts");
    sub->add_option("--dv", c.dv, "Value grid spacing override");
    sub->add_option("--horizon", c.horizon, "Final time override");
    sub->add_option("--seed", c.seed, "Seed override for random data");
    sub->add_option("--format", c.format, "Stdout format")->check(CLI::IsMember({"csv", "json"}));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wave-front tracking for scalar conservation laws"};
    app.require_subcommand(1);
    Common common;

    auto* solve = app.add_subcommand("solve", "Run a scenario and write its artifacts");
    add_common(solve, common, false);
    auto* analyze = app.add_subcommand("analyze", "Run a scenario and its analysis checks");
    add_common(analyze, common, false);
    auto* sweep = app.add_subcommand("sweep", "Analyze several scenarios independently");
    add_common(sweep, common, true);
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    sweep->add_option("--jobs", workers, "Worker threads");

    auto* riemann = app.add_subcommand("riemann", "Print the Riemann fan between two states");
    std::string flux = "burgers", format = "json";
    double ul = 1.0, ur = 0.0;
    riemann->add_option("--flux", flux, "burgers, cubic or power:<n>");
    riemann->add_option("--ul", ul, "Left state")->required();
    riemann->add_option("--ur", ur, "Right state")->required();
    riemann->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));

    auto* example = app.add_subcommand("example", "Print a constructed instance as a scenario file");
    std::string ex_name;
    int depth = 3;
    double p = 2.0;
    std::string ex_out;
    example->add_option("name", ex_name, "sharpness, cantor, kinetic, kinetic_block or nonpoly")->required();
    example->add_option("--depth", depth, "Truncation N, level count or depth K");
    example->add_option("--p", p, "Degeneracy exponent");
    example->add_option("--out", ex_out, "Write the scenario to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*solve) return run_one(common, false);
        if (*analyze) return run_one(common, true);
        if (*sweep) return run_sweep(common, workers);
        if (*riemann) return run_riemann(flux, ul, ur, format);
        if (*example) {
            std::string text = wft::example_scenario(ex_name, depth, p);
            if (ex_out.empty()) std::cout << text;
            else std::ofstream(ex_out, std::ios::binary) << text;
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << describe(e) << "\n";
        return classify(e);
    }
    return 0;
}
