#include "wft/flux.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "wft/error.hpp"

namespace wft {

FluxModel::FluxModel(std::vector<FluxPiece> pieces, FluxKind kind, std::string label)
    : pieces_(std::move(pieces)), kind_(kind), label_(std::move(label)) {
    if (pieces_.empty()) throw InvalidArgument("flux needs at least one piece");
    for (auto& p : pieces_)
        if (std::isnan(p.origin)) p.origin = p.lo;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        if (!(pieces_[i].lo < pieces_[i].hi)) throw InvalidArgument("flux knots must be strictly increasing");
        if (i > 0 && pieces_[i].lo != pieces_[i - 1].hi) throw InvalidArgument("flux pieces must be contiguous");
    }
    for (std::size_t i = 1; i < pieces_.size(); ++i) {
        const FluxPiece& l = pieces_[i - 1];
        const FluxPiece& r = pieces_[i];
        for (int k = 0; k <= 1; ++k) {
            double vl = l.poly.derivative_at(l.hi - l.origin, k);
            double vr = r.poly.derivative_at(r.lo - r.origin, k);
            if (std::abs(vl - vr) > 1e-12 + 1e-12 * std::abs(vl)) {
                std::ostringstream os;
                os << "flux derivative of order " << k << " jumps at knot " << r.lo;
                throw InvalidArgument(os.str());
            }
        }
    }
}

FluxModel FluxModel::burgers(double lo, double hi) {
    return FluxModel({{lo, hi, Poly({0.0, 0.0, 0.5}), 0.0}}, FluxKind::Burgers, "burgers");
}

FluxModel FluxModel::power(int exponent, double lo, double hi) {
    if (exponent < 1) throw InvalidArgument("power flux needs exponent >= 1");
    std::vector<double> c(static_cast<std::size_t>(exponent) + 1, 0.0);
    c.back() = 1.0;
    return FluxModel({{lo, hi, Poly(c), 0.0}}, FluxKind::Power, "u^" + std::to_string(exponent));
}

FluxModel FluxModel::from_second_derivative(const std::vector<double>& knots, const std::vector<Poly>& fpp,
                                            double wp, double fp, double w0, double f0, FluxKind kind,
                                            std::string label) {
    if (knots.size() != fpp.size() + 1 || fpp.empty()) throw InvalidArgument("knot/piece count mismatch");
    std::vector<Poly> d1(fpp.size()), d0(fpp.size());
    double carry = 0.0;
    for (std::size_t i = 0; i < fpp.size(); ++i) {
        d1[i] = fpp[i].integral();
        d1[i].add_constant(carry);
        carry = d1[i](knots[i + 1] - knots[i]);
    }
    auto locate = [&](double w) {
        auto it = std::upper_bound(knots.begin(), knots.end(), w);
        std::size_t j = static_cast<std::size_t>(it - knots.begin());
        return j == 0 ? std::size_t{0} : std::min(j - 1, fpp.size() - 1);
    };
    std::size_t jp = locate(wp);
    double shift = fp - d1[jp](wp - knots[jp]);
    for (auto& p : d1) p.add_constant(shift);
    carry = 0.0;
    for (std::size_t i = 0; i < fpp.size(); ++i) {
        d0[i] = d1[i].integral();
        d0[i].add_constant(carry);
        carry = d0[i](knots[i + 1] - knots[i]);
    }
    std::size_t j0 = locate(w0);
    double shift0 = f0 - d0[j0](w0 - knots[j0]);
    std::vector<FluxPiece> pieces;
    for (std::size_t i = 0; i < fpp.size(); ++i) {
        d0[i].add_constant(shift0);
        pieces.push_back({knots[i], knots[i + 1], d0[i]});
    }
    return FluxModel(std::move(pieces), kind, std::move(label));
}

int FluxModel::max_degree() const {
    int d = 0;
    for (const auto& p : pieces_) d = std::max(d, p.poly.degree());
    return d;
}

std::size_t FluxModel::piece_index(double w) const {
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), w,
                               [](double v, const FluxPiece& p) { return v < p.lo; });
    std::size_t j = static_cast<std::size_t>(it - pieces_.begin());
    if (j == 0) return 0;
    return std::min(j - 1, pieces_.size() - 1);
}

double FluxModel::eval(double w, int order) const {
    double slack = 1e-12 * (hi() - lo());
    if (!(w >= lo() - slack && w <= hi() + slack)) {
        std::ostringstream os;
        os << "state " << w << " outside working interval [" << lo() << ", " << hi() << "]";
        throw OutOfRange(os.str());
    }
    const FluxPiece& p = pieces_[piece_index(w)];
    return p.poly.derivative_at(w - p.origin, order);
}

double evaluate(const FluxModel& m, double w, int order) {
    if (order < 0 || order > 2) throw InvalidArgument("evaluate supports orders 0, 1, 2");
    return m.eval(w, order);
}

double FluxModel::knot_mismatch() const {
    double worst = 0.0;
    for (std::size_t i = 1; i < pieces_.size(); ++i) {
        const FluxPiece& l = pieces_[i - 1];
        const FluxPiece& r = pieces_[i];
        for (int k = 0; k <= 1; ++k)
            worst = std::max(worst, std::abs(l.poly.derivative_at(l.hi - l.origin, k) -
                                             r.poly.derivative_at(r.lo - r.origin, k)));
    }
    return worst;
}

std::vector<double> FluxModel::critical_points(double a, double b, double lambda) const {
    std::vector<double> pts{a, b};
    std::size_t i0 = piece_index(a), i1 = piece_index(b);
    for (std::size_t i = i0; i <= i1; ++i) {
        const FluxPiece& p = pieces_[i];
        double l = std::max(a, p.lo), r = std::min(b, p.hi);
        if (l > r) continue;
        if (p.lo > a && p.lo < b) pts.push_back(p.lo);
        Poly q = p.poly.derivative();
        q.add_constant(-lambda);
        for (double s : real_roots(q, l - p.origin, r - p.origin)) pts.push_back(p.origin + s);
    }
    return pts;
}

std::pair<double, double> FluxModel::df_range(double a, double b) const {
    double mn = std::numeric_limits<double>::infinity(), mx = -mn;
    std::size_t i0 = piece_index(a), i1 = piece_index(b);
    for (std::size_t i = i0; i <= i1; ++i) {
        const FluxPiece& p = pieces_[i];
        double l = std::max(a, p.lo), r = std::min(b, p.hi);
        if (l > r) continue;
        Poly d1 = p.poly.derivative();
        std::vector<double> pts{l - p.origin, r - p.origin};
        for (double s : real_roots(d1.derivative(), l - p.origin, r - p.origin)) pts.push_back(s);
        for (double s : pts) {
            double v = d1(s);
            mn = std::min(mn, v);
            mx = std::max(mx, v);
        }
    }
    return {mn, mx};
}

double FluxModel::max_abs_df(double a, double b) const {
    auto [mn, mx] = df_range(a, b);
    return std::max(std::abs(mn), std::abs(mx));
}

double FluxModel::max_abs_d2f(double a, double b) const {
    double mx = 0.0;
    std::size_t i0 = piece_index(a), i1 = piece_index(b);
    for (std::size_t i = i0; i <= i1; ++i) {
        const FluxPiece& p = pieces_[i];
        double l = std::max(a, p.lo), r = std::min(b, p.hi);
        if (l > r) continue;
        Poly d2 = p.poly.derivative().derivative();
        std::vector<double> pts{l - p.origin, r - p.origin};
        for (double s : real_roots(d2.derivative(), l - p.origin, r - p.origin)) pts.push_back(s);
        for (double s : pts) mx = std::max(mx, std::abs(d2(s)));
    }
    return mx;
}

// ---------------------------------------------------------------------------
// Inflections

int InflectionSet::overall_degeneracy() const {
    int p = 1;
    for (const auto& pt : points) {
        if (pt.non_polynomial) return -1;
        p = std::max(p, pt.p);
    }
    return p;
}

namespace {

double second_derivative_side(const FluxModel& m, std::size_t piece, double w) {
    const FluxPiece& p = m.pieces()[piece];
    return p.poly.derivative_at(w - p.origin, 2);
}

} // namespace

InflectionSet detect_inflections(const FluxModel& m, double tol) {
    InflectionSet out;
    const auto& pieces = m.pieces();
    std::vector<double> roots;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const FluxPiece& p = pieces[i];
        Poly d2 = p.poly.derivative().derivative();
        if (d2.is_zero(tol)) {
            if (!out.flat_intervals.empty() && out.flat_intervals.back().second == p.lo)
                out.flat_intervals.back().second = p.hi;
            else
                out.flat_intervals.emplace_back(p.lo, p.hi);
            continue;
        }
        for (double s : real_roots(d2, p.lo - p.origin, p.hi - p.origin)) roots.push_back(p.origin + s);
    }
    std::sort(roots.begin(), roots.end());
    double scale = 1e-12 * (m.hi() - m.lo());
    std::vector<double> uniq;
    for (double r : roots)
        if (uniq.empty() || r - uniq.back() > scale) uniq.push_back(r);

    auto inside_flat = [&](double w) {
        for (auto& [a, b] : out.flat_intervals)
            if (w >= a - scale && w <= b + scale) return true;
        return false;
    };

    for (double w : uniq) {
        if (inside_flat(w)) continue;
        if (w <= m.lo() + scale || w >= m.hi() - scale) continue;
        std::size_t ir = m.piece_index(w);
        std::size_t il = ir;
        if (ir > 0 && std::abs(pieces[ir].lo - w) <= scale) il = ir - 1;
        Inflection pt;
        pt.w = w;
        pt.non_polynomial = true;
        for (int j = 3; j <= 8; ++j) {
            const FluxPiece& pr = pieces[ir];
            const FluxPiece& pl = pieces[il];
            double vr = pr.poly.derivative_at(w - pr.origin, j);
            double vl = pl.poly.derivative_at(w - pl.origin, j);
            if (std::abs(vr) > tol || std::abs(vl) > tol) {
                pt.p = j - 1;
                pt.non_polynomial = false;
                break;
            }
        }
        pt.sign_change = pt.non_polynomial || (pt.p % 2 == 0);
        out.points.push_back(pt);
    }

    // A flat stretch separating convex and concave parts is an inflection of
    // infinite order; it is placed at the midpoint of the stretch.
    for (auto& [a, b] : out.flat_intervals) {
        if (a <= m.lo() || b >= m.hi()) continue;
        std::size_t il = m.piece_index(a) - (m.piece_index(a) > 0 ? 1 : 0);
        std::size_t ir = m.piece_index(b);
        const FluxPiece& pl = pieces[il];
        const FluxPiece& pr = pieces[ir];
        double sl = second_derivative_side(m, il, pl.lo + 0.5 * (a - pl.lo));
        double sr = second_derivative_side(m, ir, b + 0.5 * (pr.hi - b));
        if (sl * sr < 0.0) {
            Inflection pt;
            pt.w = 0.5 * (a + b);
            pt.non_polynomial = true;
            pt.sign_change = true;
            out.points.push_back(pt);
        }
    }
    std::sort(out.points.begin(), out.points.end(),
              [](const Inflection& x, const Inflection& y) { return x.w < y.w; });
    return out;
}

// ---------------------------------------------------------------------------
// Nonlinearity gap and modulus

namespace {

double oscillation(const FluxModel& m, double w1, double w2, double lambda) {
    double mx = -std::numeric_limits<double>::infinity(), mn = -mx;
    for (double w : m.critical_points(w1, w2, lambda)) {
        double v = m.f(w) - lambda * w;
        mx = std::max(mx, v);
        mn = std::min(mn, v);
    }
    return mx - mn;
}

template <class F>
double golden_min(F&& fn, double lo, double hi, double tol, double* arg) {
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = fn(x1), f2 = fn(x2);
    while (hi - lo > tol) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = fn(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = fn(x2);
        }
    }
    double best = f1 <= f2 ? x1 : x2;
    double fb = std::min(f1, f2);
    double mid = 0.5 * (lo + hi);
    double fm = fn(mid);
    if (fm < fb) {
        best = mid;
        fb = fm;
    }
    if (arg) *arg = best;
    return fb;
}

} // namespace

double nonlinearity_gap(const FluxModel& m, double w1, double w2, double* lambda_opt) {
    if (!(w1 < w2)) throw InvalidArgument("nonlinearity_gap needs w1 < w2");
    m.eval(w1);
    m.eval(w2);
    auto [lmin, lmax] = m.df_range(w1, w2);
    if (lmax - lmin <= 0.0) {
        if (lambda_opt) *lambda_opt = lmin;
        return 0.0;
    }
    double r = golden_min([&](double l) { return oscillation(m, w1, w2, l); }, lmin, lmax, 1e-10, lambda_opt);
    return std::max(r, 0.0);
}

double nonlinearity_gap(const FluxModel& m, double w1, double w2) { return nonlinearity_gap(m, w1, w2, nullptr); }

double nonlinearity_modulus(const FluxModel& m, double h, double lo, double hi) {
    if (!(h > 0.0)) throw InvalidWindow("window height must be positive");
    if (h > hi - lo) throw InvalidWindow("window height exceeds the range");
    double span = hi - lo - h;
    auto gap_at = [&](double a) { return nonlinearity_gap(m, a, a + h); };
    if (span <= 0.0) return gap_at(lo);
    constexpr int kGrid = 64;
    std::vector<double> vals(kGrid + 1);
    std::size_t best = 0;
    for (int i = 0; i <= kGrid; ++i) {
        vals[i] = gap_at(lo + span * i / kGrid);
        if (vals[i] < vals[best]) best = static_cast<std::size_t>(i);
    }
    double a0 = lo + span * std::max<int>(0, static_cast<int>(best) - 1) / kGrid;
    double a1 = lo + span * std::min<int>(kGrid, static_cast<int>(best) + 1) / kGrid;
    double refined = golden_min(gap_at, a0, a1, 1e-9 * std::max(1.0, span), nullptr);
    return std::min(vals[best], refined);
}

ConvexGauge modulus_convex_envelope(const FluxModel& m, double lo, double hi, double grid_step) {
    if (!(grid_step > 0.0)) throw InvalidArgument("grid_step must be positive");
    double range = hi - lo;
    std::vector<std::pair<double, double>> samples;
    int n = static_cast<int>(std::floor(range / grid_step + 1e-9));
    for (int k = 1; k <= n; ++k) {
        double h = std::min(range, grid_step * k);
        samples.emplace_back(h, nonlinearity_modulus(m, h, lo, hi));
    }
    if (samples.empty() || samples.back().first < range * (1.0 - 1e-12))
        samples.emplace_back(range, nonlinearity_modulus(m, range, lo, hi));
    return ConvexGauge::from_samples(std::move(samples));
}

// ---------------------------------------------------------------------------
// Conjugate points and the degenerate ratio

double conjugate_point(const FluxModel& m, double ws, double w) {
    if (w == ws) throw NoConjugate("w coincides with the inflection point");
    const double fw = m.f(w);
    auto g = [&](double t) { return m.f(t) + m.df(t) * (w - t) - fw; };
    const double dir = w < ws ? 1.0 : -1.0;
    const double bound = dir > 0 ? m.hi() : m.lo();
    double g0 = g(ws);
    if (g0 == 0.0) return ws;
    double prev = ws;
    double dist = 0.25 * std::abs(w - ws);
    double t = ws;
    bool found = false;
    while (true) {
        t = ws + dir * dist;
        bool capped = false;
        if ((dir > 0 && t >= bound) || (dir < 0 && t <= bound)) {
            t = bound;
            capped = true;
        }
        double gt = g(t);
        if (gt == 0.0) return t;
        if ((gt < 0.0) != (g0 < 0.0)) {
            found = true;
            break;
        }
        if (capped) break;
        prev = t;
        dist *= 2.0;
    }
    if (!found) {
        std::ostringstream os;
        os << "no sign change of the tangency condition for w = " << w;
        throw NoConjugate(os.str());
    }
    double a = prev, b = t, ga = g(prev);
    for (int it = 0; it < 400; ++it) {
        double mid = 0.5 * (a + b);
        if (mid == a || mid == b) break;
        double gm = g(mid);
        if (gm == 0.0) return mid;
        if ((gm < 0.0) == (ga < 0.0)) {
            a = mid;
            ga = gm;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

double conjugate_point(const FluxModel& m, const InflectionSet& set, std::size_t s, double w) {
    if (s >= set.points.size()) throw InvalidArgument("inflection index out of range");
    return conjugate_point(m, set.points[s].w, w);
}

double degenerate_polynomial(int p, double rho) {
    return p * std::pow(rho, p + 1) - (p + 1) * std::pow(rho, p) + 1.0;
}

double degenerate_ratio(int p) {
    if (p < 2 || p % 2 != 0) throw InvalidArgument("degenerate_ratio needs an even p >= 2");
    double a = -1.0, b = 0.0;
    for (int it = 0; it < 400; ++it) {
        double mid = 0.5 * (a + b);
        if (mid == a || mid == b) break;
        double gm = degenerate_polynomial(p, mid);
        if (gm == 0.0) return mid;
        if (gm < 0.0)
            a = mid;
        else
            b = mid;
    }
    return 0.5 * (a + b);
}

// ---------------------------------------------------------------------------
// Envelopes

namespace {

struct SignedFlux {
    const FluxModel& m;
    double sg;
    double g(double w) const { return sg * m.f(w); }
    double dg(double w) const { return sg * m.df(w); }
    double d2g(double w) const { return sg * m.d2f(w); }
};

// Solves the tangency of a line through (anchor, g(anchor)) with the graph at
// some point of [lo, hi]. Returns false if no sign change is found.
bool tangency(const SignedFlux& G, double anchor, double lo, double hi, double* out) {
    double ga = G.g(anchor);
    auto phi = [&](double s) { return G.g(s) + G.dg(s) * (anchor - s) - ga; };
    double plo = phi(lo), phi_hi = phi(hi);
    if (plo == 0.0) {
        *out = lo;
        return true;
    }
    if (phi_hi == 0.0) {
        *out = hi;
        return true;
    }
    if ((plo < 0.0) == (phi_hi < 0.0)) return false;
    for (int it = 0; it < 400; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        double pm = phi(mid);
        if (pm == 0.0) {
            lo = hi = mid;
            break;
        }
        if ((pm < 0.0) == (plo < 0.0)) {
            lo = mid;
            plo = pm;
        } else {
            hi = mid;
        }
    }
    *out = 0.5 * (lo + hi);
    return true;
}

} // namespace

std::vector<EnvelopeSegment> envelope(const FluxModel& m, double a, double b, EnvelopeSide side) {
    if (!(a < b)) throw InvalidArgument("envelope needs a < b");
    m.eval(a);
    m.eval(b);
    SignedFlux G{m, side == EnvelopeSide::LowerConvex ? 1.0 : -1.0};

    std::vector<double> xs{a, b};
    constexpr int kPerPiece = 256;
    for (std::size_t i = m.piece_index(a); i <= m.piece_index(b); ++i) {
        const FluxPiece& p = m.pieces()[i];
        double l = std::max(a, p.lo), r = std::min(b, p.hi);
        if (l >= r) continue;
        for (int k = 0; k <= kPerPiece; ++k) xs.push_back(l + (r - l) * k / kPerPiece);
        for (double s : real_roots(p.poly.derivative().derivative(), l - p.origin, r - p.origin)) xs.push_back(p.origin + s);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<double> gs(xs.size());
    double gmax = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        gs[i] = G.g(xs[i]);
        gmax = std::max(gmax, std::abs(gs[i]));
    }
    std::vector<std::size_t> hull = lower_hull(xs, gs);
    double gap_tol = 1e-13 * (gmax + 1e-300);

    struct Edge {
        std::size_t i, j;
        bool chord;
    };
    std::vector<Edge> edges;
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
        std::size_t i = hull[k], j = hull[k + 1];
        double slope = (gs[j] - gs[i]) / (xs[j] - xs[i]);
        bool chord = false;
        for (std::size_t q = i + 1; q < j && !chord; ++q)
            if (gs[q] - (gs[i] + slope * (xs[q] - xs[i])) > gap_tol) chord = true;
        for (std::size_t q = i; q < j && !chord; ++q)
            if (G.d2g(0.5 * (xs[q] + xs[q + 1])) < 0.0) chord = true;
        edges.push_back({i, j, chord});
    }

    std::vector<EnvelopeSegment> out;
    double cursor = a;
    for (const Edge& E : edges) {
        if (!E.chord) continue;
        double s = xs[E.i], t = xs[E.j];
        const bool free_s = E.i != 0, free_t = E.j != xs.size() - 1;
        auto bracket = [&](std::size_t idx, double lim_lo, double lim_hi, std::size_t widen) {
            std::size_t lo_i = idx >= widen ? idx - widen : 0;
            std::size_t hi_i = std::min(xs.size() - 1, idx + widen);
            return std::pair<double, double>{std::max(xs[lo_i], lim_lo), std::min(xs[hi_i], lim_hi)};
        };
        auto refine = [&](std::size_t idx, double anchor, double lim_lo, double lim_hi, double cur) {
            for (std::size_t w = 1; w <= 8; w *= 2) {
                auto [lo, hi] = bracket(idx, lim_lo, lim_hi, w);
                double r;
                if (lo < hi && tangency(G, anchor, lo, hi, &r)) return r;
            }
            return cur;
        };
        // Alternate the two tangency solves; each is a contraction near the
        // bitangent so this settles in a handful of rounds.
        for (int iter = 0; iter < 200; ++iter) {
            double s_old = s, t_old = t;
            if (free_s) s = refine(E.i, t, std::max(a, cursor), t, s);
            if (free_t) t = refine(E.j, s, s, b, t);
            if (s == s_old && t == t_old) break;
        }
        if (s > cursor) out.push_back({cursor, s, false});
        out.push_back({s, t, true});
        cursor = t;
    }
    if (cursor < b) out.push_back({cursor, b, false});
    return out;
}

double envelope_value(const FluxModel& m, const std::vector<EnvelopeSegment>& env, double w) {
    for (const auto& s : env) {
        if (w >= s.from && w <= s.to) {
            if (!s.chord) return m.f(w);
            double fa = m.f(s.from), fb = m.f(s.to);
            return fa + (fb - fa) * (w - s.from) / (s.to - s.from);
        }
    }
    throw OutOfRange("state outside the envelope interval");
}

} // namespace wft
