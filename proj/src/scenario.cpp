#include "wft/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"
#include "wft/error.hpp"
#include "wft/kinetic.hpp"

#ifndef WFT_SCENARIO_DIR
#define WFT_SCENARIO_DIR "scenarios"
#endif

namespace wft {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const std::set<std::string> kSections = {"flux", "datum", "run", "analysis", "params", "reference"};
const std::set<std::string> kChecks = {"front_position", "mass",       "length_estimate", "oleinik",
                                       "undulation",     "regularity", "chord",           "sbv",
                                       "dissipation"};

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_number(const std::string& text, int line, const std::string& what) {
    std::string t = trim(text);
    if (t == "inf") return kInf;
    if (t == "-inf") return -kInf;
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || std::isnan(v))
        throw ParseError("line " + std::to_string(line) + ": '" + t + "' is not a number (" + what + ")");
    return v;
}

std::vector<double> parse_list(const std::string& text, int line, const std::string& what) {
    std::string t = text;
    std::replace(t.begin(), t.end(), ',', ' ');
    std::istringstream is(t);
    std::vector<double> out;
    std::string tok;
    while (is >> tok) out.push_back(parse_number(tok, line, what));
    return out;
}

std::string join(const std::vector<double>& v, const char* sep = " ") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + fmt(v[i]);
    return s;
}

int line_of(const Scenario& sc, const std::string& section, const std::string& key) {
    auto s = sc.lines.find(section);
    if (s == sc.lines.end()) return 0;
    auto k = s->second.find(key);
    return k == s->second.end() ? 0 : k->second;
}

std::vector<double> list_of(const Scenario& sc, const std::string& section, const std::string& key) {
    return parse_list(sc.get(section, key), line_of(sc, section, key), section + "." + key);
}

struct Resolved {
    FluxModel flux;
    PiecewiseConstantFn datum;
    bool has_datum = false;
};

Resolved resolve_flux(const Scenario& sc) {
    std::string kind = sc.get("flux", "kind");
    int kl = line_of(sc, "flux", "kind");
    Resolved r;
    if (kind == "burgers") {
        r.flux = FluxModel::burgers(sc.number("flux", "lo", -10.0), sc.number("flux", "hi", 10.0));
    } else if (kind == "power") {
        double e = sc.number("flux", "exponent", 3.0);
        if (e != std::floor(e) || e < 2)
            throw ParseError("line " + std::to_string(line_of(sc, "flux", "exponent")) +
                             ": exponent must be an integer >= 2");
        r.flux = FluxModel::power(static_cast<int>(e), sc.number("flux", "lo", -4.0), sc.number("flux", "hi", 4.0));
    } else if (kind == "table") {
        std::vector<FluxPiece> pieces;
        for (const std::string& entry : sc.flux_pieces) {
            // entry is "<line>|<text>"
            std::size_t bar = entry.find('|');
            int line = std::atoi(entry.substr(0, bar).c_str());
            std::vector<double> v = parse_list(entry.substr(bar + 1), line, "flux piece");
            if (v.size() < 4)
                throw ParseError("line " + std::to_string(line) + ": piece needs lo hi origin and coefficients");
            if (!(v[1] > v[0])) throw ParseError("line " + std::to_string(line) + ": piece needs lo < hi");
            if (!pieces.empty() && v[0] != pieces.back().hi)
                throw ParseError("line " + std::to_string(line) + ": piece does not start where the previous ends");
            pieces.push_back({v[0], v[1], Poly(std::vector<double>(v.begin() + 3, v.end())), v[2]});
        }
        if (pieces.empty()) throw ParseError("line " + std::to_string(kl) + ": table flux without pieces");
        r.flux = FluxModel(std::move(pieces), FluxKind::User, sc.get("flux", "label", "table"));
    } else if (kind == "sharpness") {
        ExampleInstance e = build_sharpness(static_cast<int>(sc.number("flux", "p", 2)),
                                            static_cast<int>(sc.number("flux", "N", 200)));
        r = {e.flux, e.datum, true};
    } else if (kind == "kinetic_block") {
        ExampleInstance e = kinetic_block(sc.number("flux", "L", 0.25), sc.number("flux", "a", 1.0 / 64),
                                          sc.number("flux", "h", 1.0 / 64));
        r = {e.flux, e.datum, true};
    } else if (kind == "kinetic") {
        ExampleInstance e = build_kinetic(static_cast<int>(sc.number("flux", "N", 3)),
                                          static_cast<int>(sc.number("flux", "box_cap", 4)));
        r = {e.flux, e.datum, true};
    } else if (kind == "nonpoly") {
        ExampleInstance e = build_nonpoly(static_cast<int>(sc.number("flux", "K", 3)),
                                          static_cast<int>(sc.number("flux", "box_cap", 4)));
        r = {e.flux, e.datum, true};
    } else {
        throw ParseError("line " + std::to_string(kl) + ": unknown flux kind '" + kind + "'");
    }
    return r;
}

PiecewiseConstantFn resolve_datum(const Scenario& sc, const Resolved& fl, std::uint64_t seed, bool use_seed) {
    std::string kind = sc.get("datum", "kind", fl.has_datum ? "example" : "");
    int kl = line_of(sc, "datum", "kind");
    if (kind == "steps") {
        std::vector<double> x = list_of(sc, "datum", "breakpoints");
        std::vector<double> v = list_of(sc, "datum", "values");
        try {
            return PiecewiseConstantFn(x, v);
        } catch (const InvalidArgument& e) {
            throw ParseError("line " + std::to_string(line_of(sc, "datum", "values")) + ": " + e.what());
        }
    }
    if (kind == "random") {
        std::uint64_t s = use_seed ? seed : static_cast<std::uint64_t>(sc.number("datum", "seed", 1));
        return random_datum(s, static_cast<int>(sc.number("datum", "pieces", 8)), sc.number("datum", "lo", -1),
                            sc.number("datum", "hi", 1), sc.number("datum", "vmin", -1), sc.number("datum", "vmax", 1),
                            static_cast<int>(sc.number("datum", "levels", 8)), sc.number("datum", "alternate", 0) != 0);
    }
    if (kind == "example") {
        if (!fl.has_datum) throw ParseError("line " + std::to_string(kl) + ": flux kind carries no example datum");
        return fl.datum;
    }
    if (kind == "nodes") throw InvalidArgument("a continuous 'nodes' datum is analysis-only and cannot be tracked");
    throw ParseError("line " + std::to_string(kl) + ": unknown datum kind '" + kind + "'");
}

std::vector<double> arg_list(const CheckSpec& c, const std::string& key, std::vector<double> fallback) {
    return c.list(key, std::move(fallback));
}

void run_checks(const Scenario& sc, const SimState& sim, const std::vector<CharPath>& paths, double horizon,
                RunResult& out) {
    for (const CheckSpec& c : sc.checks) {
        std::vector<BoundReport> reps;
        std::vector<double> Ts = arg_list(c, "T", {horizon});
        if (c.name == "front_position") {
            double t = c.number("t", horizon), x = c.number("x", 0.0), tol = c.number("tol", 1e-12);
            double best = kInf;
            for (int id : fronts_at(sim, t))
                best = std::min(best, std::abs(sim.fronts[static_cast<std::size_t>(id)].position(t) - x));
            reps.push_back(make_report("front_position", best, tol, 0.0, {{"t", t}, {"x", x}}));
        } else if (c.name == "mass") {
            // Drift relative to the L1 norm, which stays meaningful for zero-mean data.
            double m0 = sim.u0.integral();
            double l1 = sim.u0.positive_part().integral() + sim.u0.negative_part().integral();
            for (double T : Ts) {
                double m = trace_at(sim, T, TraceKind::Solution).integral();
                double drift = std::abs(m - m0) / std::max(l1, 1e-300);
                reps.push_back(make_report("mass_drift", drift, c.number("bound", 1e-9), 0.0, {{"T", T}}));
            }
        } else if (c.name == "length_estimate") {
            for (double T : Ts) {
                try {
                    auto r = length_estimate_report(sim, paths, T, c.number("value_tol", 0.0), c.number("tol", 0.05));
                    reps.insert(reps.end(), r.begin(), r.end());
                } catch (const NoPairs&) {
                    reps.push_back(make_report("length_estimate", kInf, 0.0, 0.0, {{"T", T}, {"pairs", 0}}));
                }
            }
        } else if (c.name == "oleinik") {
            for (double T : Ts) reps.push_back(oleinik_check(sim, T));
        } else if (c.name == "undulation") {
            for (double T : Ts)
                for (double h : arg_list(c, "h", {0.1}))
                    reps.push_back(undulation_count_bound_check(sim, T, h));
        } else if (c.name == "regularity") {
            RegularityConstants C{c.number("C_psi", kInf), c.number("C_velocity", kInf),
                                  c.number("C_fractional", kInf)};
            for (double T : Ts) {
                auto r = regularity_bounds_report(sim, T, c.number("eps", 0.5), c.number("p", 2.0), C);
                reps.insert(reps.end(), r.begin(), r.end());
            }
        } else if (c.name == "chord") {
            for (double T : Ts) {
                auto r = small_jump_chord_check(sim, T, static_cast<std::size_t>(c.number("s", 0)),
                                                c.number("delta", 0.5));
                reps.insert(reps.end(), r.begin(), r.end());
            }
        } else if (c.name == "sbv") {
            std::vector<double> times = arg_list(c, "times", {});
            if (times.empty())
                for (int i = 0; i <= 10; ++i) times.push_back(horizon * i / 10.0);
            SbvReport s = sbv_diagnostic(sim, paths, times);
            double rise = 0.0;
            for (std::size_t i = 1; i < s.F.size(); ++i) rise = std::max(rise, s.F[i] - s.F[i - 1]);
            reps.push_back(make_report("sbv_F_increase", rise, 0.0, 0.0));
            std::ostringstream os;
            os << std::setprecision(17) << "time,F,jump_mass\n";
            for (std::size_t i = 0; i < s.times.size(); ++i)
                os << s.times[i] << ',' << s.F[i] << ',' << s.jump_mass[i] << '\n';
            out.files["sbv.csv"] = os.str();
        } else if (c.name == "dissipation") {
            std::vector<double> ks = arg_list(c, "k", {});
            if (ks.empty()) {
                double M = sim.u0.sup_norm();
                for (int i = 0; i <= 64; ++i) ks.push_back(-M + 2.0 * M * i / 64.0);
            }
            auto recs = dissipation_records(sim, ks);
            double worst = -kInf;
            for (const auto& r : recs)
                for (double v : r.rates) worst = std::max(worst, v);
            if (recs.empty()) worst = 0.0;
            reps.push_back(make_report("dissipation_rate_max", worst, c.number("bound", 1e-12), 0.0,
                                       {{"fronts", static_cast<double>(recs.size())}}));
            out.files["dissipation.csv"] = dissipation_csv(recs);
        }
        for (BoundReport& r : reps) {
            r.scenario = sc.name;
            out.reports.push_back(r);
            if (c.gated() && !r.pass) {
                if (std::find(out.failures.begin(), out.failures.end(), r.name) == out.failures.end())
                    out.failures.push_back(r.name);
            }
        }
    }
}

nlohmann::ordered_json num(double v) {
    if (std::isfinite(v)) return v;
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

} // namespace

bool CheckSpec::gated() const {
    auto it = args.find("gate");
    return it == args.end() || it->second != "0";
}

double CheckSpec::number(const std::string& key, double fallback) const {
    auto it = args.find(key);
    return it == args.end() ? fallback : parse_number(it->second, line, name + "." + key);
}

std::vector<double> CheckSpec::list(const std::string& key, std::vector<double> fallback) const {
    auto it = args.find(key);
    return it == args.end() ? fallback : parse_list(it->second, line, name + "." + key);
}

std::string Scenario::get(const std::string& section, const std::string& key, const std::string& fallback) const {
    auto s = sections.find(section);
    if (s == sections.end()) return fallback;
    auto k = s->second.find(key);
    return k == s->second.end() ? fallback : k->second;
}

double Scenario::number(const std::string& section, const std::string& key, double fallback) const {
    auto s = sections.find(section);
    if (s == sections.end() || !s->second.count(key)) return fallback;
    return parse_number(s->second.at(key), line_of(*this, section, key), section + "." + key);
}

Scenario parse_scenario(const std::string& text, const std::string& name) {
    Scenario sc;
    sc.name = name;
    std::istringstream is(text);
    std::string raw, section;
    int line = 0;
    while (std::getline(is, raw)) {
        ++line;
        std::string l = trim(raw.substr(0, raw.find('#')));
        if (l.empty()) continue;
        auto err = [&](const std::string& m) { throw ParseError("line " + std::to_string(line) + ": " + m); };
        if (l.front() == '[') {
            if (l.back() != ']') err("unterminated section header");
            section = trim(l.substr(1, l.size() - 2));
            if (!kSections.count(section)) err("unknown section [" + section + "]");
            sc.sections[section];
            continue;
        }
        std::size_t eq = l.find('=');
        if (eq == std::string::npos) err("expected 'key = value'");
        if (section.empty()) err("key outside any section");
        std::string key = trim(l.substr(0, eq)), value = trim(l.substr(eq + 1));
        if (key.empty()) err("empty key");
        if (section == "flux" && key == "piece") {
            sc.flux_pieces.push_back(std::to_string(line) + "|" + value);
            continue;
        }
        if (section == "analysis" && key == "check") {
            std::istringstream ts(value);
            CheckSpec c;
            c.line = line;
            if (!(ts >> c.name)) err("check without a name");
            if (!kChecks.count(c.name)) err("unknown check '" + c.name + "'");
            std::string tok;
            while (ts >> tok) {
                std::size_t e = tok.find('=');
                if (e == std::string::npos || e == 0) err("check argument '" + tok + "' is not key=value");
                c.args[tok.substr(0, e)] = tok.substr(e + 1);
            }
            sc.checks.push_back(std::move(c));
            continue;
        }
        if (sc.sections[section].count(key)) err("duplicate key '" + key + "'");
        sc.sections[section][key] = value;
        sc.lines[section][key] = line;
    }
    if (!sc.sections.count("flux")) throw ParseError("line " + std::to_string(line) + ": missing [flux] section");
    if (sc.get("flux", "kind").empty())
        throw ParseError("line " + std::to_string(line) + ": [flux] needs a kind");
    // Typed fields are checked up front so that malformed numbers report their line.
    for (const auto& [sec, keys] : sc.sections) {
        if (sec == "params" || sec == "reference") continue;
        for (const auto& [key, value] : keys) {
            if (key == "kind" || key == "label") continue;
            if (key == "breakpoints" || key == "values" || key == "x" || key == "u" || key == "snapshots")
                parse_list(value, sc.lines[sec][key], sec + "." + key);
            else
                parse_number(value, sc.lines[sec][key], sec + "." + key);
        }
    }
    for (const std::string& entry : sc.flux_pieces) {
        std::size_t bar = entry.find('|');
        parse_list(entry.substr(bar + 1), std::atoi(entry.substr(0, bar).c_str()), "flux piece");
    }
    return sc;
}

std::string bundled_scenario_dir() {
    if (const char* env = std::getenv("WFT_SCENARIO_DIR")) return env;
    return WFT_SCENARIO_DIR;
}

Scenario load_scenario(const std::string& path_or_name) {
    namespace fs = std::filesystem;
    fs::path p(path_or_name);
    if (!fs::is_regular_file(p)) {
        fs::path dir(bundled_scenario_dir());
        if (fs::is_regular_file(dir / path_or_name)) p = dir / path_or_name;
        else if (fs::is_regular_file(dir / (path_or_name + ".scn"))) p = dir / (path_or_name + ".scn");
        else throw InvalidArgument("no scenario file or bundled scenario named '" + path_or_name + "'");
    }
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str(), p.stem().string());
}

FluxModel scenario_flux(const Scenario& sc) { return resolve_flux(sc).flux; }

PiecewiseConstantFn random_datum(std::uint64_t seed, int pieces, double lo, double hi, double vmin, double vmax,
                                 int levels, bool alternate) {
    if (pieces < 1 || levels < 1 || !(hi > lo)) throw InvalidArgument("random datum needs pieces, levels >= 1, lo < hi");
    std::mt19937_64 gen(seed);
    std::vector<double> x, v;
    for (int k = 0; k <= pieces; ++k) x.push_back(lo + (hi - lo) * k / pieces);
    for (int k = 0; k < pieces; ++k) {
        std::uint64_t r = gen() % static_cast<std::uint64_t>(levels + 1);
        double val = vmin + (vmax - vmin) * static_cast<double>(r) / levels;
        if (alternate && (k % 2 == 1)) val = -val;
        v.push_back(val);
    }
    return PiecewiseConstantFn(x, v);
}

PiecewiseConstantFn scenario_datum(const Scenario& sc, std::uint64_t seed_override, bool use_override) {
    return resolve_datum(sc, resolve_flux(sc), seed_override, use_override);
}

RunResult run_scenario(const Scenario& sc, const RunOverrides& ov, bool with_checks) {
    Resolved fl = resolve_flux(sc);
    PiecewiseConstantFn u0 = resolve_datum(sc, fl, ov.seed.value_or(0), ov.seed.has_value());
    double dv = ov.dv.value_or(sc.number("run", "dv", 1e-2));
    double horizon = ov.horizon.value_or(sc.number("run", "horizon", 1.0));
    SimConfig cfg;
    cfg.event_cap = static_cast<std::size_t>(sc.number("run", "event_cap", static_cast<double>(cfg.event_cap)));
    cfg.strict_grid = sc.number("run", "strict_grid", 1) != 0;

    SimState sim = simulate(fl.flux, u0, dv, horizon, cfg);
    RunResult out;
    out.warnings = sim.warnings;

    std::vector<double> snaps = sc.sections.count("run") && sc.sections.at("run").count("snapshots")
                                    ? list_of(sc, "run", "snapshots")
                                    : std::vector<double>{0.0, horizon};
    std::ostringstream sol;
    sol << std::setprecision(17) << "time,x_left,x_right,value\n";
    for (double t : snaps) {
        PiecewiseConstantFn u = trace_at(sim, std::min(t, horizon), TraceKind::Solution);
        for (std::size_t i = 0; i < u.pieces(); ++i)
            sol << t << ',' << u.breakpoints()[i] << ',' << u.breakpoints()[i + 1] << ',' << u.values()[i] << '\n';
    }
    out.files["solution.csv"] = sol.str();
    out.files["events.csv"] = event_log_csv(sim);

    auto grid = default_y_grid(sim.u0, static_cast<int>(sc.number("run", "y_refine", 2048)));
    std::vector<CharPath> paths = track_characteristics(sim, grid, horizon);
    out.files["paths.csv"] = paths_csv(paths);

    out.stats["dv"] = dv;
    out.stats["horizon"] = horizon;
    out.stats["events"] = static_cast<double>(sim.event_times().size());
    out.stats["fronts"] = static_cast<double>(sim.fronts.size());
    out.stats["mass_initial"] = sim.u0.integral();
    out.stats["mass_final"] = trace(sim, TraceKind::Solution).integral();
    out.stats["survival_final"] = survival_measure(paths, horizon);
    out.stats["quantization_error"] = sim.quantization_error;

    if (with_checks) run_checks(sc, sim, paths, horizon, out);
    out.files["reports.jsonl"] = reports_jsonl(out.reports);
    out.files["reports.csv"] = reports_csv(out.reports);
    out.exit_code = out.failures.empty() ? 0 : 1;
    out.files["summary.json"] = summary_json(sc.name, out);
    return out;
}

void write_artifacts(const RunResult& r, const std::string& dir) {
    std::filesystem::create_directories(dir);
    for (const auto& [name, body] : r.files) {
        std::ofstream f(std::filesystem::path(dir) / name, std::ios::binary);
        f << body;
    }
}

std::string summary_json(const std::string& scenario, const RunResult& r) {
    nlohmann::ordered_json j;
    j["scenario"] = scenario;
    j["exit_code"] = r.exit_code;
    j["pass"] = r.failures.empty();
    j["failures"] = r.failures;
    j["warnings"] = r.warnings;
    nlohmann::ordered_json st = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.stats) st[k] = num(v);
    j["stats"] = st;
    std::size_t passed = 0;
    for (const auto& rep : r.reports) passed += rep.pass ? 1 : 0;
    j["reports"] = r.reports.size();
    j["reports_passed"] = passed;
    nlohmann::ordered_json by = nlohmann::ordered_json::object();
    for (const auto& rep : r.reports) {
        auto& slot = by[rep.name];
        if (slot.is_null()) slot = {{"count", 0}, {"passed", 0}, {"worst_slack", 0.0}};
        slot["count"] = slot["count"].get<int>() + 1;
        slot["passed"] = slot["passed"].get<int>() + (rep.pass ? 1 : 0);
        double ws = slot["worst_slack"].is_number() ? slot["worst_slack"].get<double>() : kInf;
        slot["worst_slack"] = num(std::max(ws, rep.slack));
    }
    j["by_name"] = by;
    return j.dump(2) + "\n";
}

std::string example_scenario(const std::string& example, int depth, double p) {
    ExampleInstance inst;
    double dv = 1e-3;
    if (example == "sharpness") inst = build_sharpness(static_cast<int>(p), depth);
    else if (example == "cantor") inst = build_cantor(p, depth);
    else if (example == "kinetic") inst = build_kinetic(depth), dv = 1e-2;
    else if (example == "kinetic_block") inst = kinetic_block(0.25, 1.0 / 64, 1.0 / 64), dv = 1e-2;
    else if (example == "nonpoly") inst = build_nonpoly(depth);
    else throw InvalidArgument("unknown example '" + example + "' (sharpness, cantor, kinetic, kinetic_block, nonpoly)");

    std::ostringstream os;
    os << "# example " << inst.name << "\n";
    for (const std::string& n : inst.notes) os << "# " << n << "\n";
    os << "[flux]\nkind = table\nlabel = " << inst.name << "\n";
    for (const FluxPiece& pc : inst.flux.pieces())
        os << "piece = " << fmt(pc.lo) << ' ' << fmt(pc.hi) << ' ' << fmt(pc.origin) << ' ' << join(pc.poly.coeffs())
           << "\n";
    os << "\n[datum]\n";
    if (!inst.sample_x.empty()) {
        os << "kind = nodes\nx = " << join(inst.sample_x) << "\nu = " << join(inst.sample_u) << "\n";
    } else {
        os << "kind = steps\nbreakpoints = " << join(inst.datum.breakpoints()) << "\nvalues = "
           << join(inst.datum.values()) << "\n";
    }
    os << "\n[run]\ndv = " << fmt(dv) << "\nhorizon = 1\n";
    if (!inst.params.empty()) {
        os << "\n[params]\n";
        for (const auto& [k, v] : inst.params) os << k << " = " << join(v) << "\n";
    }
    if (!inst.reference.empty()) {
        os << "\n[reference]\n";
        for (const auto& [k, v] : inst.reference) os << k << " = " << fmt(v) << "\n";
    }
    return os.str();
}

} // namespace wft
