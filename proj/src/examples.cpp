#include "wft/examples.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wft/error.hpp"

namespace wft {

// ---------------------------------------------------------------------------
// Sharpness of the fractional estimate

namespace {

double sharp_a(int p, int n) {
    double l = std::log(1.0 + n);
    return std::pow(1.0 / (n * l * l), 1.0 / p);
}

} // namespace

double sharpness_reference(int p, int N, double q) {
    double s = 0.0;
    for (int n = 1; n <= N; ++n) s += std::pow(sharp_a(p, n), q);
    return 2.0 * s;
}

ExampleInstance build_sharpness(int p, int N) {
    if (p < 1 || N < 1) throw InvalidArgument("sharpness example needs p >= 1 and N >= 1");
    ExampleInstance inst;
    inst.name = "sharpness";
    double a1 = sharp_a(p, 1);
    inst.flux = FluxModel::power(p + 1, -1.0, std::ceil(a1 + 1.0));
    std::vector<double> xs, vs;
    auto& A = inst.params["a"];
    auto& L = inst.params["L"];
    auto& X = inst.params["x"];
    double x = 0.0;
    for (int n = 1; n <= N; ++n) {
        double a = sharp_a(p, n), ap = std::pow(a, p);
        double len = (p + 1) * ap;
        A.push_back(a);
        L.push_back(len);
        X.push_back(x);
        if (!xs.empty()) {
            // Each box is followed by room for its shock to travel until t = 1.
            vs.push_back(0.0);
        }
        xs.push_back(x);
        vs.push_back(a);
        xs.push_back(x + len);
        x += len + ap;
    }
    inst.datum = PiecewiseConstantFn(xs, vs).normalized();
    inst.reference["p"] = p;
    inst.reference["N"] = N;
    inst.reference["tv_q1"] = sharpness_reference(p, N, 1.0);
    inst.reference["tv_qp"] = sharpness_reference(p, N, p);
    inst.notes.push_back("x_{n+1} = x_n + L_n + a_n^p keeps the supports disjoint up to t = 1");
    return inst;
}

// ---------------------------------------------------------------------------
// Positive and negative fractional variation

ExampleInstance build_cantor(double p, int n_levels) {
    if (!(p > 1.0)) throw InvalidArgument("cantor example needs p > 1");
    if (n_levels < 0) throw InvalidArgument("negative depth");
    if (n_levels > 20) throw DepthTooLarge("cantor example supports at most 20 levels");
    const double alpha = std::pow(2.0, (p - 1.0) / p) - 1.0;
    // Components of C_k as integer endpoints over 3^n_levels with endpoint values.
    std::int64_t scale = 1;
    for (int i = 0; i < n_levels; ++i) scale *= 3;
    struct Comp {
        std::int64_t a, b;
        double ua, ub;
    };
    std::vector<Comp> comps{{0, scale, 0.0, 1.0}};
    std::map<std::int64_t, double> nodes{{0, 0.0}, {scale, 1.0}};
    for (int level = 1; level <= n_levels; ++level) {
        std::vector<Comp> next;
        next.reserve(comps.size() * 2);
        for (const Comp& c : comps) {
            std::int64_t w = (c.b - c.a) / 3;
            double du = c.ub - c.ua;
            double u1 = c.ua + 0.5 * (1.0 + alpha) * du, u2 = c.ua + 0.5 * (1.0 - alpha) * du;
            nodes[c.a + w] = u1;
            nodes[c.a + 2 * w] = u2;
            next.push_back({c.a, c.a + w, c.ua, u1});
            next.push_back({c.a + 2 * w, c.b, u2, c.ub});
        }
        comps = std::move(next);
    }
    ExampleInstance inst;
    inst.name = "cantor";
    inst.flux = FluxModel::power(static_cast<int>(std::ceil(p)) + 1, -1.0, 2.0);
    for (const auto& [k, v] : nodes) {
        inst.sample_x.push_back(static_cast<double>(k) / static_cast<double>(scale));
        inst.sample_u.push_back(v);
    }
    auto& bx = inst.params["boundary_x"];
    auto& bu = inst.params["boundary_u"];
    for (const Comp& c : comps) {
        bx.push_back(static_cast<double>(c.a) / static_cast<double>(scale));
        bu.push_back(c.ua);
        bx.push_back(static_cast<double>(c.b) / static_cast<double>(scale));
        bu.push_back(c.ub);
    }
    inst.params["alpha"] = {alpha};
    inst.reference["p"] = p;
    inst.reference["levels"] = n_levels;
    inst.reference["positive"] = 1.0;
    inst.reference["negative_boundary"] = n_levels * std::pow(alpha, p);
    return inst;
}

std::vector<double> cantor_boundary_values(const ExampleInstance& inst) {
    auto it = inst.params.find("boundary_u");
    if (it == inst.params.end()) throw InvalidArgument("not a cantor instance");
    return it->second;
}

// ---------------------------------------------------------------------------
// Kinetic example

namespace {

// h 16 s^2 (1 - s)^2 on a cell of width a, in the local variable.
Poly bump(double a, double h) {
    double k = 16.0 * h;
    return Poly({0.0, 0.0, k / (a * a), -2.0 * k / (a * a * a), k / (a * a * a * a)});
}

long cell_count(double L, double a) {
    double r = L / a;
    long n = std::lround(r);
    if (n < 1 || std::abs(r - static_cast<double>(n)) > 1e-9 * r) throw InvalidArgument("L / a must be an integer");
    return n;
}

void append_bumps(std::vector<FluxPiece>& pieces, double L, double a, double h) {
    long cells = cell_count(L, a);
    for (long k = 0; k < cells; ++k) pieces.push_back({L + k * a, L + (k + 1) * a, bump(a, h)});
}

} // namespace

FluxModel kinetic_block_flux(double L, double a, double h) {
    if (!(L > 0.0 && a > 0.0 && h > 0.0)) throw InvalidArgument("kinetic block needs positive parameters");
    std::vector<FluxPiece> pieces;
    pieces.push_back({-L, L, Poly({0.0})});
    append_bumps(pieces, L, a, h);
    pieces.push_back({2.0 * L, 4.0 * L, Poly({0.0})});
    return FluxModel(std::move(pieces), FluxKind::Recipe, "kinetic_block");
}

ExampleInstance kinetic_block(double L, double a, double h) {
    ExampleInstance inst;
    inst.name = "kinetic_block";
    inst.flux = kinetic_block_flux(L, a, h);
    double A = h / L;
    inst.datum = PiecewiseConstantFn({0.0, A}, {3.0 * L});
    inst.params["L"] = {L};
    inst.params["a"] = {a};
    inst.params["h"] = {h};
    inst.params["A"] = {A};
    inst.reference["dw_mu_mass"] = 2.0 * h * L / a;
    return inst;
}

std::vector<KineticSeriesRow> kinetic_series_table(int N) {
    std::vector<KineticSeriesRow> rows;
    for (int n = 1; n <= N; ++n) {
        std::int64_t m = n;
        KineticSeriesRow r;
        r.n = n;
        r.log2_N = 3 * m * m - 2 * m;       // 8^{n^2} / 4^n
        r.log2_a_pow = -3 * m * (m - 1);    // (8^-n)^{n-1}
        r.log2_L = -m;
        r.log2_term = r.log2_N + r.log2_a_pow + r.log2_L;
        r.log2_support = r.log2_N - 3 * m * m - r.log2_L; // N_n a_n^n / L_n
        rows.push_back(r);
    }
    return rows;
}

ExampleInstance build_kinetic(int N, int box_cap) {
    if (N < 1 || N > 6) throw DepthTooLarge("kinetic example supports depths 1 to 6");
    ExampleInstance inst;
    inst.name = "kinetic";
    std::vector<FluxPiece> pieces;
    double Lmin = std::ldexp(1.0, -N);
    pieces.push_back({-1.0, Lmin, Poly({0.0})});
    auto& Lv = inst.params["L"];
    auto& av = inst.params["a"];
    auto& hv = inst.params["h"];
    auto& Av = inst.params["A"];
    auto& Nv = inst.params["N_used"];
    for (int n = N; n >= 1; --n) {
        double L = std::ldexp(1.0, -n), a = std::ldexp(1.0, -3 * n), h = std::ldexp(1.0, -3 * n * n);
        append_bumps(pieces, L, a, h);
    }
    pieces.push_back({1.0, 2.0, Poly({0.0})});
    inst.flux = FluxModel(std::move(pieces), FluxKind::Recipe, "kinetic");

    std::vector<double> xs, vs;
    double x = 0.0;
    for (int n = 1; n <= N; ++n) {
        double L = std::ldexp(1.0, -n), a = std::ldexp(1.0, -3 * n), h = std::ldexp(1.0, -3 * n * n);
        double A = h / L;
        Lv.push_back(L);
        av.push_back(a);
        hv.push_back(h);
        Av.push_back(A);
        // N_n = 8^{n^2}/4^n overflows any simulation; keep at most box_cap boxes.
        int used = 0;
        for (int i = 0; i < box_cap; ++i) {
            if (!(x + A > x)) break;
            if (!xs.empty() && xs.back() == x) {
                vs.back() = 3.0 * L;
            } else {
                if (!xs.empty()) vs.push_back(0.0);
                xs.push_back(x);
                vs.push_back(3.0 * L);
            }
            xs.push_back(x + A);
            x += 2.0 * A;
            ++used;
        }
        Nv.push_back(used);
        if (used < box_cap) {
            std::ostringstream os;
            os << "level " << n << " boxes are below floating resolution; " << used << " kept";
            inst.notes.push_back(os.str());
        }
    }
    inst.datum = PiecewiseConstantFn(xs, vs).normalized();
    inst.notes.push_back("N_n truncated at " + std::to_string(box_cap) + " boxes per level");
    return inst;
}

// ---------------------------------------------------------------------------
// Flux with a non-polynomial inflection

namespace {

const double kAlpha = std::sqrt(10.0) - 3.0;

struct LevelModel {
    FluxModel F;     // in u = w / a_{n-1}, scaled by 1 / b_n
    double s = 0.0;  // a_n / a_{n-1}
};

// f'' restricted to [-a_{n-1}, a_{n-1}] with levels n..K present.
LevelModel level_model(const std::vector<NonPolyLevel>& lv, int n) {
    const NonPolyLevel& me = lv[static_cast<std::size_t>(n - 1)];
    const double a = me.a_prev, bn = me.b;
    std::vector<double> knots{-1.0};
    std::vector<double> vals;
    for (std::size_t m = static_cast<std::size_t>(n - 1); m < lv.size(); ++m) {
        knots.push_back(-2.0 * lv[m].a / a);
        vals.push_back(lv[m].eps / bn);
        knots.push_back(-lv[m].a / a);
        vals.push_back(lv[m].b / bn);
    }
    vals.push_back(0.0);
    std::size_t half = knots.size();
    for (std::size_t i = half; i-- > 0;) knots.push_back(-knots[i]);
    for (std::size_t i = vals.size() - 1; i-- > 0;) vals.push_back(-vals[i]);
    std::vector<Poly> fpp;
    for (double v : vals) fpp.push_back(Poly({v}));
    LevelModel out;
    out.F = FluxModel::from_second_derivative(knots, fpp, -1.0, 0.0, 0.0, 0.0, FluxKind::Recipe, "nonpoly_level");
    out.s = me.a / a;
    return out;
}

// Fills conjugates, alpha_n, beta_n, d_n, Delta t bounds and N_n of level n.
void derive_level(std::vector<NonPolyLevel>& lv, int n) {
    NonPolyLevel& me = lv[static_cast<std::size_t>(n - 1)];
    LevelModel lm = level_model(lv, n);
    const double a = me.a_prev;
    double uA = conjugate_point(lm.F, 0.0, -1.0);
    double uB = conjugate_point(lm.F, 0.0, -2.0 * lm.s);
    me.A_star = uA * a;
    me.B_star = uB * a;
    me.alpha_n = me.B_star / me.a - 1.0;
    me.beta_n = 2.0 - me.A_star / me.a;
    double dhat = lm.F.df(uA) - lm.F.df(1.0);
    me.d = a * me.b * dhat;
    const double an = me.a, A = me.A_star, B = me.B_star, e = me.eps, b = me.b;
    me.dt1 = e * (a - 2.0 * an) / (b * (2.0 * an - A));
    me.dt2 = (b * (2.0 * an - A) + e * (a - 2.0 * an)) / (b * (A - B));
    me.N = std::floor(1.0 / (static_cast<double>(n) * n * me.d));
}

void add_check(std::vector<ConditionCheck>& out, std::string name, int level, double lhs, double rhs) {
    out.push_back({std::move(name), level, lhs < rhs, lhs, rhs});
}

std::vector<ConditionCheck> check_levels(const std::vector<NonPolyLevel>& lv, double eps_prime) {
    std::vector<ConditionCheck> out;
    double se = 0.0, sa = 0.0;
    const int K = static_cast<int>(lv.size());
    for (int n = 1; n <= K; ++n) {
        const NonPolyLevel& L = lv[static_cast<std::size_t>(n - 1)];
        se += L.eps;
        sa += std::pow(L.a, n);
        add_check(out, "cond1_eps_below_a^n", n, L.eps, std::pow(L.a, n));
        add_check(out, "a_below_third", n, L.a, L.a_prev / 3.0);
        if (n > 1) add_check(out, "eps_decreasing", n, L.eps, lv[static_cast<std::size_t>(n - 2)].eps);
        add_check(out, "cond2_alpha", n, std::abs(L.alpha_n - kAlpha), eps_prime);
        // Leading term 3 a_n / a_{n-1}: small root of beta^2/2 - (2 + R) beta + 3 = 0.
        add_check(out, "cond3_beta", n, std::abs(L.beta_n - 3.0 * L.a / L.a_prev), eps_prime * L.a / L.a_prev);
        add_check(out, "sandwich_lower", n, L.a, L.B_star);
        add_check(out, "sandwich_middle", n, L.B_star, L.A_star);
        add_check(out, "sandwich_upper", n, L.A_star, 2.0 * L.a);
        // log(a^{n+2} / eps) > n
        add_check(out, "cond5_log_eps", n, static_cast<double>(n), std::log(std::pow(L.a, n + 2) / L.eps));
        if (n < K)
            add_check(out, "cond4_log_ratio", n, static_cast<double>(n), std::log(L.a / lv[static_cast<std::size_t>(n)].a));
    }
    add_check(out, "cond1_sum_eps", 0, se, 1.0);
    add_check(out, "cond1_sum_a^n", 0, sa, 1.0);
    return out;
}

} // namespace

std::vector<ConditionCheck> validate_nonpoly(const NonPolyParams& params) {
    return check_levels(params.levels, params.eps_prime);
}

NonPolyParams search_nonpoly_parameters(int K) {
    if (K < 1) throw InvalidArgument("depth must be positive");
    if (K > 4) throw DepthTooLarge("non-polynomial example supports depth at most 4");
    NonPolyParams P;
    P.eps_prime = kAlpha / 4.0;
    std::vector<NonPolyLevel>& lv = P.levels;
    const int max_tries = 16;
    for (int n = 1; n <= K; ++n) {
        double a_prev = n == 1 ? 1.0 : lv.back().a;
        double eps_prev = n == 1 ? 0.5 : lv.back().eps;
        double a = 0.9 * a_prev * std::min(1.0 / 3.0, std::exp(-(n - 1.0)));
        std::string failed;
        bool ok = false;
        // a_n first, then eps_n; both back off by 10.
        for (int ia = 0; ia < max_tries && !ok; ++ia, a /= 10.0) {
            double eps = 0.9 * std::min(std::pow(a, n + 2) * std::exp(-static_cast<double>(n)), eps_prev);
            for (int ie = 0; ie < max_tries && !ok; ++ie, eps /= 10.0) {
                ++P.attempts;
                NonPolyLevel L;
                L.n = n;
                L.a = a;
                L.a_prev = a_prev;
                L.b = std::pow(a, n);
                L.eps = eps;
                lv.push_back(L);
                try {
                    for (int m = 1; m <= n; ++m) derive_level(lv, m);
                    failed.clear();
                    for (const auto& c : check_levels(lv, P.eps_prime))
                        if (!c.ok && (c.level == n || c.level == n - 1 || c.level == 0)) {
                            failed = c.name + " at level " + std::to_string(c.level);
                            break;
                        }
                } catch (const Error& e) {
                    failed = e.what();
                }
                if (failed.empty()) ok = true;
                else lv.pop_back();
            }
        }
        if (!ok) throw ParameterSearchFailed("level " + std::to_string(n) + ": " + failed);
    }
    for (const auto& c : validate_nonpoly(P))
        if (!c.ok) throw ParameterSearchFailed(c.name + " at level " + std::to_string(c.level));
    return P;
}

FluxModel nonpoly_flux(const NonPolyParams& params) {
    const auto& lv = params.levels;
    std::vector<double> knots{-1.0}, vals;
    for (const auto& L : lv) {
        knots.push_back(-2.0 * L.a);
        vals.push_back(L.eps);
        knots.push_back(-L.a);
        vals.push_back(L.b);
    }
    vals.push_back(0.0);
    std::size_t half = knots.size();
    for (std::size_t i = half; i-- > 0;) knots.push_back(-knots[i]);
    for (std::size_t i = vals.size() - 1; i-- > 0;) vals.push_back(-vals[i]);
    std::vector<Poly> fpp;
    for (double v : vals) fpp.push_back(Poly({v}));
    return FluxModel::from_second_derivative(knots, fpp, -1.0, 0.0, 0.0, 0.0, FluxKind::Recipe, "nonpoly");
}

ExampleInstance build_nonpoly(int K, int box_cap) {
    NonPolyParams P = search_nonpoly_parameters(K);
    ExampleInstance inst;
    inst.name = "nonpoly";
    inst.flux = nonpoly_flux(P);
    const char* keys[] = {"a", "b", "eps", "A_star", "B_star", "alpha_n", "beta_n", "d", "dt1", "dt2", "N"};
    for (const char* k : keys) inst.params[k];
    for (const auto& L : P.levels) {
        inst.params["a"].push_back(L.a);
        inst.params["b"].push_back(L.b);
        inst.params["eps"].push_back(L.eps);
        inst.params["A_star"].push_back(L.A_star);
        inst.params["B_star"].push_back(L.B_star);
        inst.params["alpha_n"].push_back(L.alpha_n);
        inst.params["beta_n"].push_back(L.beta_n);
        inst.params["d"].push_back(L.d);
        inst.params["dt1"].push_back(L.dt1);
        inst.params["dt2"].push_back(L.dt2);
        inst.params["N"].push_back(L.N);
    }
    double fmax = inst.flux.max_abs_df(-1.0, 1.0);
    std::vector<double> xs{-3.0 * fmax, 0.0}, vs{-1.0};
    double x = 0.0;
    auto& used = inst.params["N_used"];
    for (const auto& L : P.levels) {
        int k = 0;
        for (; k < box_cap && k < L.N; ++k) {
            if (!(x + L.d > x) || !(x + 3.0 * L.d > x + L.d)) break;
            xs.push_back(x + L.d);
            vs.push_back(L.a_prev);
            xs.push_back(x + 3.0 * L.d);
            vs.push_back(-L.a_prev);
            x += 3.0 * L.d;
        }
        used.push_back(k);
        if (k < std::min<double>(box_cap, L.N))
            inst.notes.push_back("level " + std::to_string(L.n) + " boxes are below floating resolution");
    }
    inst.datum = PiecewiseConstantFn(xs, vs).normalized();
    inst.reference["K"] = K;
    inst.reference["attempts"] = P.attempts;
    inst.notes.push_back("N_n truncated at " + std::to_string(box_cap) + " boxes per level");
    return inst;
}

NonPolyBlock nonpoly_block(const NonPolyParams& params, int n) {
    if (n < 1 || n > static_cast<int>(params.levels.size())) throw InvalidArgument("level out of range");
    const NonPolyLevel& L = params.levels[static_cast<std::size_t>(n - 1)];
    LevelModel lm = level_model(params.levels, n);
    double uA = L.A_star / L.a_prev;
    double dhat = lm.F.df(uA) - lm.F.df(1.0);
    // G(v) = [F(v - 1) - F'(1)(v - 1)] / dhat, so G'(0) = 0, G(1) = 0 and the contact moves at speed 1.
    std::vector<double> knots;
    std::vector<Poly> fpp;
    for (const auto& p : lm.F.pieces()) {
        knots.push_back(p.lo + 1.0);
        fpp.push_back(Poly({p.poly.derivative_at(p.lo - p.origin, 2) / dhat}));
    }
    knots.push_back(lm.F.pieces().back().hi + 1.0);
    NonPolyBlock B;
    B.n = n;
    B.flux = FluxModel::from_second_derivative(knots, fpp, 0.0, 0.0, 1.0, 0.0, FluxKind::Recipe,
                                               "nonpoly_block_" + std::to_string(n));
    B.datum = PiecewiseConstantFn({0.0, 1.0}, {2.0});
    B.d = L.d;
    B.dt1 = L.dt1;
    B.dt2 = L.dt2;
    B.scale = lm.s;
    return B;
}

BlockMeasurement measure_nonpoly_block(const NonPolyBlock& block, double dv) {
    BlockMeasurement r;
    if (!(dv > 0.0)) dv = std::min(1e-3, block.scale / 32.0);
    r.dv = dv;
    SimConfig cfg;
    SimState sim = simulate(block.flux, block.datum, dv, 2.0, cfg);
    r.events = sim.log.size();
    double total = 0.0;
    for (const Front& f : sim.fronts) {
        double t0 = std::max(1.0, f.t0), t1 = std::min(2.0, f.alive() ? sim.time : f.t_end);
        if (!(t1 > t0)) continue;
        // Sub-interval where 0 < x0 + s (t - f.t0) < 3.
        double lo = t0, hi = t1;
        if (f.speed == 0.0) {
            double x = f.x0;
            if (!(x > 0.0 && x < 3.0)) continue;
        } else {
            double ta = f.t0 + (0.0 - f.x0) / f.speed, tb = f.t0 + (3.0 - f.x0) / f.speed;
            lo = std::max(lo, std::min(ta, tb));
            hi = std::min(hi, std::max(ta, tb));
        }
        if (!(hi > lo)) continue;
        double jump = std::abs(block.flux.df(sim.pf.node(f.ir)) - block.flux.df(sim.pf.node(f.il)));
        total += jump * (hi - lo);
    }
    r.measured_norm = total;
    r.bound_norm = 0.5 * std::log(1.0 / (block.dt1 + block.dt2));
    r.measured = total * block.d;
    r.bound = r.bound_norm * block.d;
    r.pass = r.measured_norm >= r.bound_norm;
    return r;
}

} // namespace wft
