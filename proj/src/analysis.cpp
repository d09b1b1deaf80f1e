#include "wft/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "wft/error.hpp"

namespace wft {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double data_bound(const SimState& sim) { return sim.u0.sup_norm(); }

} // namespace

BoundReport make_report(std::string name, double measured, double bound, double tolerance,
                        std::map<std::string, double> metadata) {
    BoundReport r;
    r.name = std::move(name);
    r.measured = measured;
    r.bound = bound;
    r.tolerance = tolerance;
    r.slack = bound != 0.0 ? measured / bound : (measured == 0.0 ? 0.0 : kInf);
    r.pass = measured <= bound * (1.0 + tolerance);
    r.metadata = std::move(metadata);
    return r;
}

double generic_time(const SimState& sim, double t) {
    std::vector<double> ev = sim.event_times();
    std::sort(ev.begin(), ev.end());
    auto near = [&](double x) {
        auto it = std::lower_bound(ev.begin(), ev.end(), x - 1e-9);
        return it != ev.end() && *it <= x + 1e-9;
    };
    for (int i = 0; i < 1000 && near(t); ++i) t -= 2e-9;
    return t;
}

std::vector<BoundReport> length_estimate_report(const SimState& sim, const std::vector<CharPath>& paths, double T,
                                                double value_tol, double tol) {
    if (!(T > 0.0)) throw InvalidArgument("T must be positive");
    std::vector<const CharPath*> alive;
    for (const auto& p : paths)
        if (p.alive_at(T)) alive.push_back(&p);
    std::sort(alive.begin(), alive.end(), [](const CharPath* a, const CharPath* b) { return a->y < b->y; });
    std::vector<std::size_t> sample;
    const std::size_t n = alive.size(), cap = 64;
    if (n <= cap) {
        for (std::size_t i = 0; i < n; ++i) sample.push_back(i);
    } else {
        for (std::size_t k = 0; k < cap; ++k) sample.push_back((k * (n - 1) + (cap - 1) / 2) / (cap - 1));
    }
    const double M = data_bound(sim);
    std::vector<BoundReport> out;
    for (std::size_t a = 0; a < sample.size(); ++a) {
        for (std::size_t b = a + 1; b < sample.size(); ++b) {
            const CharPath& pl = *alive[sample[a]];
            const CharPath& pr = *alive[sample[b]];
            if (std::abs(pl.w - pr.w) > value_tol) continue;
            double wm = kInf, wM = -kInf;
            for (std::size_t i = sample[a]; i <= sample[b]; ++i) {
                wm = std::min(wm, alive[i]->w);
                wM = std::max(wM, alive[i]->w);
            }
            double s = std::max(pr.y - pl.y, pr.position(T) - pl.position(T));
            double gap = wM > wm ? nonlinearity_gap(sim.model, wm, wM) : 0.0;
            out.push_back(make_report("length_estimate", gap, 2.0 * s * M / T, tol,
                                      {{"T", T}, {"dv", sim.pf.dv()}, {"y_l", pl.y}, {"y_r", pr.y},
                                       {"w_m", wm}, {"w_M", wM}, {"s", s}}));
        }
    }
    if (out.empty()) throw NoPairs("no equal-valued labels alive at the requested time");
    return out;
}

BoundReport undulation_count_bound_check(const SimState& sim, double T, double h) {
    if (!(h > 0.0) || !(T > 0.0)) throw InvalidArgument("h and T must be positive");
    PiecewiseConstantFn u = trace_at(sim, T, TraceKind::Solution);
    std::size_t N = count_undulations_above(decompose_undulations(u.positive_part()), h) +
                    count_undulations_above(decompose_undulations(u.negative_part()), h);
    const double M = data_bound(sim);
    double bound = kInf;
    if (h < 2.0 * M) {
        double d = nonlinearity_modulus(sim.model, h, -M, M);
        double speed = sim.model.max_abs_df(-M, M);
        if (d > 0.0) bound = 4.0 * M * (sim.u0.support_length() + speed * T) / (T * d);
    }
    return make_report("undulation_count", static_cast<double>(N), bound, 0.0, {{"T", T}, {"h", h}, {"dv", sim.pf.dv()}});
}

ConvexGauge flux_gauge(const SimState& sim, double grid_step) {
    const double M = data_bound(sim);
    if (!(M > 0.0)) throw MissingGauge("zero datum carries no gauge");
    if (!(grid_step > 0.0)) grid_step = 2.0 * M / 32.0;
    return modulus_convex_envelope(sim.model, -M, M, grid_step);
}

RegularityMeasures measure_regularity(const SimState& sim, double T, const ConvexGauge& phi, double eps, double p) {
    RegularityMeasures r;
    PiecewiseConstantFn u = trace_at(sim, T, TraceKind::Solution);
    ConvexGauge psi = psi_eps(phi, eps);
    r.psi_tv = gauge_tv(u, [&](double x) { return psi(x); });
    r.velocity_tv = total_variation(trace_at(sim, T, TraceKind::VelocityExact));
    r.fractional = gauge_tv(u, power_gauge(p));
    return r;
}

double calibrate_constant(const std::vector<std::pair<double, double>>& measured_at_t, double margin) {
    double c = 0.0;
    for (const auto& [v, t] : measured_at_t) c = std::max(c, v * t / (1.0 + t));
    return margin * c;
}

std::vector<BoundReport> regularity_bounds_report(const SimState& sim, double T, double eps, double p,
                                                  const RegularityConstants& C, const std::optional<ConvexGauge>& phi) {
    ConvexGauge g = phi ? *phi : flux_gauge(sim);
    if (g.xs().size() < 2 || g.ys().back() <= 0.0) throw MissingGauge("flux gauge is trivial");
    RegularityMeasures r = measure_regularity(sim, T, g, eps, p);
    std::map<std::string, double> meta{{"T", T}, {"eps", eps}, {"p", p}, {"dv", sim.pf.dv()}};
    double s = 1.0 + 1.0 / T;
    return {make_report("psi_eps_tv", r.psi_tv, C.psi * s, 0.0, meta),
            make_report("velocity_tv", r.velocity_tv, C.velocity * s, 0.0, meta),
            make_report("fractional_tv", r.fractional, C.fractional * s, 0.0, meta)};
}

double oleinik_measure(const PiecewiseConstantFn& v, double step) {
    const auto& x = v.breakpoints();
    const auto& val = v.values();
    const double slack = step * (1.0 + 1e-9) + 1e-14;
    double best = 0.0;
    for (std::size_t j = 0; j < val.size(); ++j)
        for (std::size_t i = 0; i < j; ++i) {
            double d = val[j] - val[i];
            if (!(d > slack)) continue;
            double gap = x[j] - x[i + 1];
            best = std::max(best, gap > 0.0 ? (d - step) / gap : kInf);
        }
    return best;
}

BoundReport oleinik_check(const SimState& sim, double T) {
    if (!(T > 0.0)) throw InvalidArgument("T must be positive");
    double lo = sim.u0.min_value(), hi = sim.u0.max_value();
    for (const auto& p : detect_inflections(sim.model).points)
        if (p.w > lo && p.w < hi) throw NotConvex("flux has an inflection inside the data range");
    for (int k = 0; k <= 64; ++k) {
        double w = lo + (hi - lo) * k / 64.0;
        if (!(sim.model.d2f(w) > 0.0)) throw NotConvex("flux is not uniformly convex on the data range");
    }
    double d2 = 0.0;
    for (int k = 0; k <= 256; ++k) d2 = std::max(d2, sim.model.d2f(lo + (hi - lo) * k / 256.0));
    double step = sim.pf.dv() * d2;
    double measured = oleinik_measure(trace_at(sim, T, TraceKind::VelocityExact), step);
    return make_report("oleinik", measured, 1.0 / T, 0.02, {{"T", T}, {"dv", sim.pf.dv()}, {"step", step}});
}

BoundReport inverse_holder_check(const FluxModel& m, int l, double a, double b, int n) {
    if (!(b > a) || n < 2) throw InvalidArgument("bad interval");
    bool pos = false, neg = false;
    for (int k = 0; k <= 1024; ++k) {
        double s = m.d2f(a + (b - a) * k / 1024.0);
        pos = pos || s > 1e-14;
        neg = neg || s < -1e-14;
    }
    if (pos && neg) throw NotMonotone("f' is not monotone on the interval");
    auto estimate = [&](int pts) {
        std::vector<double> x(static_cast<std::size_t>(pts) + 1), g(x.size());
        for (int i = 0; i <= pts; ++i) {
            x[static_cast<std::size_t>(i)] = a + (b - a) * i / pts;
            g[static_cast<std::size_t>(i)] = m.df(x[static_cast<std::size_t>(i)]);
        }
        double c = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = i + 1; j < x.size(); ++j) {
                double dg = std::abs(g[j] - g[i]);
                double num = std::pow(x[j] - x[i], l);
                c = std::max(c, dg > 0.0 ? num / dg : kInf);
            }
        return c;
    };
    double c1 = estimate(n), c2 = estimate(2 * n);
    return make_report("inverse_holder", c2, c1, 0.01, {{"l", static_cast<double>(l)}, {"a", a}, {"b", b}, {"n", n}});
}

double chord_constant(const FluxModel& m, double ws, int p, double delta) {
    double best = kInf;
    const int steps = 200;
    for (int side : {-1, 1})
        for (int k = 1; k <= steps; ++k) {
            double w = ws + side * 2.0 * delta * k / steps;
            if (w < m.lo() || w > m.hi()) continue;
            double c;
            try {
                c = conjugate_point(m, ws, w);
            } catch (const Error&) {
                continue;
            }
            double v = std::min(std::abs(m.df(w) - m.df(c)), std::abs(m.df(w) - m.df(ws)));
            best = std::min(best, v / std::pow(std::abs(w - ws), p));
        }
    return best;
}

std::vector<BoundReport> small_jump_chord_check(const FluxModel& m, const PiecewiseConstantFn& u, double ws, int p,
                                                double delta_prime) {
    std::vector<BoundReport> out;
    if (u.empty()) throw NoStraddlingPairs("empty trace");
    const auto& x = u.breakpoints();
    const auto& val = u.values();
    // cum[k]: variation of f' o u over the breakpoints x_0..x_k; the far field is u = 0.
    const std::size_t nb = x.size();
    auto vel = [&](std::size_t k) { return k == 0 || k > val.size() ? m.df(0.0) : m.df(val[k - 1]); };
    std::vector<double> cum(nb, 0.0);
    for (std::size_t k = 0; k < nb; ++k) cum[k] = (k ? cum[k - 1] : 0.0) + std::abs(vel(k + 1) - vel(k));
    auto tv_between = [&](double x1, double x2) {
        // Breakpoints strictly inside (x1, x2).
        auto i1 = std::upper_bound(x.begin(), x.end(), x1) - x.begin();
        auto i2 = std::lower_bound(x.begin(), x.end(), x2) - x.begin();
        if (i2 <= i1) return 0.0;
        return cum[static_cast<std::size_t>(i2 - 1)] - (i1 > 0 ? cum[static_cast<std::size_t>(i1 - 1)] : 0.0);
    };
    const double c = chord_constant(m, ws, p, delta_prime) * std::pow(4.0, -p);
    const int n = 64;
    std::vector<double> px(n), pu(n);
    for (int i = 0; i < n; ++i) {
        px[static_cast<std::size_t>(i)] = x.front() + (x.back() - x.front()) * (i + 0.5) / n;
        pu[static_cast<std::size_t>(i)] = u(px[static_cast<std::size_t>(i)]);
    }
    auto inside = [&](double v) { return std::abs(v - ws) < delta_prime; };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double a = pu[static_cast<std::size_t>(i)], b = pu[static_cast<std::size_t>(j)];
            if (!inside(a) || !inside(b) || !((a - ws) * (b - ws) < 0.0)) continue;
            double tv = tv_between(px[static_cast<std::size_t>(i)], px[static_cast<std::size_t>(j)]);
            out.push_back(make_report("small_jump_chord", c * std::pow(std::abs(b - a), p), tv, 0.0,
                                      {{"x1", px[static_cast<std::size_t>(i)]},
                                       {"x2", px[static_cast<std::size_t>(j)]},
                                       {"u1", a},
                                       {"u2", b},
                                       {"c", c}}));
        }
    if (out.empty()) throw NoStraddlingPairs("no sampled pair straddles the inflection");
    return out;
}

std::vector<BoundReport> small_jump_chord_check(const SimState& sim, double T, std::size_t s, double delta_prime) {
    InflectionSet set = detect_inflections(sim.model);
    if (s >= set.points.size()) throw InvalidArgument("inflection index out of range");
    const Inflection& inf = set.points[s];
    if (inf.non_polynomial) throw InvalidArgument("inflection is not of polynomial type");
    double t = generic_time(sim, T);
    auto out = small_jump_chord_check(sim.model, trace_at(sim, t, TraceKind::Solution), inf.w, inf.p, delta_prime);
    for (auto& r : out) {
        r.metadata["T"] = t;
        r.metadata["dv"] = sim.pf.dv();
    }
    return out;
}

SbvReport sbv_diagnostic(const SimState& sim, const std::vector<CharPath>& paths, const std::vector<double>& times) {
    SbvReport r;
    r.times = times;
    for (double t : times) {
        r.F.push_back(survival_measure(paths, t));
        double jm = 0.0;
        for (int id : fronts_at(sim, t)) {
            const Front& f = sim.fronts[static_cast<std::size_t>(id)];
            jm += std::abs(sim.model.df(sim.pf.node(f.ir)) - sim.model.df(sim.pf.node(f.il)));
        }
        r.jump_mass.push_back(jm);
    }
    for (std::size_t i = 1; i < r.F.size(); ++i)
        if (r.times[i] >= r.times[i - 1] && r.F[i] > r.F[i - 1]) r.monotone = false;
    std::map<double, double> lost;
    for (const auto& p : paths)
        if (std::isfinite(p.T)) lost[p.T] += p.weight;
    for (const auto& [t, mass] : lost) r.drops.emplace_back(t, mass);
    return r;
}

std::string reports_jsonl(const std::vector<BoundReport>& reports) {
    std::ostringstream os;
    for (const auto& r : reports) {
        nlohmann::ordered_json j;
        j["name"] = r.name;
        j["scenario"] = r.scenario;
        j["measured"] = r.measured;
        j["bound"] = std::isfinite(r.bound) ? nlohmann::ordered_json(r.bound) : nlohmann::ordered_json("inf");
        j["tolerance"] = r.tolerance;
        j["slack"] = std::isfinite(r.slack) ? nlohmann::ordered_json(r.slack) : nlohmann::ordered_json("inf");
        j["pass"] = r.pass;
        nlohmann::ordered_json meta = nlohmann::ordered_json::object();
        for (const auto& [k, v] : r.metadata) meta[k] = v;
        j["metadata"] = meta;
        os << j.dump() << '\n';
    }
    return os.str();
}

std::string reports_csv(const std::vector<BoundReport>& reports) {
    std::ostringstream os;
    os << std::setprecision(17) << "scenario,name,measured,bound,tolerance,slack,pass\n";
    for (const auto& r : reports)
        os << r.scenario << ',' << r.name << ',' << r.measured << ',' << r.bound << ',' << r.tolerance << ',' << r.slack
           << ',' << (r.pass ? 1 : 0) << '\n';
    return os.str();
}

} // namespace wft
