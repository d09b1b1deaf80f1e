#include "wft/fronttrack.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>

#include "wft/error.hpp"
#include "wft/gauge.hpp"

namespace wft {

PolygonalFlux::PolygonalFlux(std::vector<double> nodes, std::vector<double> fvals, double dv)
    : w_(std::move(nodes)), f_(std::move(fvals)), dv_(dv) {
    if (w_.size() != f_.size() || w_.empty()) throw InvalidArgument("node and value counts differ");
    for (std::size_t i = 1; i < w_.size(); ++i)
        if (!(w_[i] > w_[i - 1])) throw InvalidArgument("grid nodes must be strictly increasing");
}

int PolygonalFlux::find(double w) const {
    int i = nearest(w);
    if (i < 0) return -1;
    return std::abs(w_[static_cast<std::size_t>(i)] - w) <= 1e-12 * (1.0 + std::abs(w)) ? i : -1;
}

int PolygonalFlux::nearest(double w) const {
    if (w_.empty()) return -1;
    auto it = std::lower_bound(w_.begin(), w_.end(), w);
    if (it == w_.end()) return static_cast<int>(w_.size()) - 1;
    int j = static_cast<int>(it - w_.begin());
    if (j > 0 && std::abs(w_[static_cast<std::size_t>(j - 1)] - w) <= std::abs(*it - w)) return j - 1;
    return j;
}

double PolygonalFlux::f(double w) const {
    if (w <= w_.front()) return f_.front() + cell_slope(0) * (w - w_.front());
    if (w >= w_.back()) {
        int n = static_cast<int>(w_.size());
        return f_.back() + cell_slope(n - 2) * (w - w_.back());
    }
    auto it = std::upper_bound(w_.begin(), w_.end(), w);
    int i = static_cast<int>(it - w_.begin()) - 1;
    return fnode(i) + cell_slope(i) * (w - node(i));
}

double PolygonalFlux::cell_slope(int i) const {
    int n = static_cast<int>(w_.size());
    if (n < 2) return 0.0;
    i = std::clamp(i, 0, n - 2);
    return (fnode(i + 1) - fnode(i)) / (node(i + 1) - node(i));
}

double PolygonalFlux::node_speed(int i) const {
    int n = static_cast<int>(w_.size());
    if (i <= 0) return cell_slope(0);
    if (i >= n - 1) return cell_slope(n - 2);
    return 0.5 * (cell_slope(i - 1) + cell_slope(i));
}

double PolygonalFlux::speed(int il, int ir) const {
    return (fnode(ir) - fnode(il)) / (node(ir) - node(il));
}

bool PolygonalFlux::admissible(int il, int ir) const {
    if (il == ir) return true;
    double s = speed(il, ir);
    int a = std::min(il, ir), b = std::max(il, ir);
    double tol = 1e-12 * (1.0 + std::abs(fnode(il)) + std::abs(s) * std::abs(node(il)));
    for (int k = a + 1; k < b; ++k) {
        double chord = fnode(il) + s * (node(k) - node(il));
        // Increasing jumps need the graph above the chord, decreasing ones below.
        if (il < ir ? fnode(k) < chord - tol : fnode(k) > chord + tol) return false;
    }
    return true;
}

std::vector<int> PolygonalFlux::fan(int il, int ir) const {
    if (il == ir) return {il};
    int a = std::min(il, ir), b = std::max(il, ir);
    std::vector<double> x(w_.begin() + a, w_.begin() + b + 1);
    std::vector<double> y(f_.begin() + a, f_.begin() + b + 1);
    std::vector<std::size_t> h = il < ir ? lower_hull(x, y) : upper_hull(x, y);
    std::vector<int> out;
    out.reserve(h.size());
    for (std::size_t k : h) out.push_back(a + static_cast<int>(k));
    if (il > ir) std::reverse(out.begin(), out.end());
    return out;
}

PolygonalFlux polygonalize(const FluxModel& m, const std::vector<double>& datum_values, double dv,
                           const PolygonalizeOptions& opt) {
    if (!(dv > 0.0)) throw InvalidArgument("grid step must be positive");
    double vmin = 0.0, vmax = 0.0;
    for (double v : datum_values) {
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }
    if (vmin < m.lo() || vmax > m.hi()) throw OutOfRange("datum values leave the flux domain");
    double lo = std::max(vmin - dv, m.lo()), hi = std::min(vmax + dv, m.hi());
    double kmin = std::ceil(lo / dv - 1e-9), kmax = std::floor(hi / dv + 1e-9);
    double count = kmax - kmin + 1.0;
    if (count > static_cast<double>(opt.node_cap)) throw GridTooFine("value grid would need more nodes than the cap allows");

    std::vector<double> exact(datum_values.begin(), datum_values.end());
    exact.push_back(0.0);
    exact.push_back(lo);
    exact.push_back(hi);
    InflectionSet inf = detect_inflections(m);
    for (const auto& p : inf.points)
        if (p.w > lo && p.w < hi) exact.push_back(p.w);
    std::sort(exact.begin(), exact.end());
    exact.erase(std::unique(exact.begin(), exact.end()), exact.end());

    std::vector<double> nodes = exact;
    double snap = 1e-9 * dv;
    for (double k = kmin; k <= kmax; k += 1.0) {
        double w = k * dv;
        if (w < lo || w > hi) continue;
        auto it = std::lower_bound(exact.begin(), exact.end(), w);
        bool close = (it != exact.end() && *it - w <= snap) || (it != exact.begin() && w - *(it - 1) <= snap);
        if (!close) nodes.push_back(w);
    }
    std::sort(nodes.begin(), nodes.end());
    std::vector<double> fv;
    fv.reserve(nodes.size());
    for (double w : nodes) fv.push_back(m.f(w));
    return PolygonalFlux(std::move(nodes), std::move(fv), dv);
}

namespace {

using Entry = SimState::QueueEntry;

void push_entry(SimState& s, const Entry& e) {
    s.queue_.push_back(e);
    std::push_heap(s.queue_.begin(), s.queue_.end(), std::greater<Entry>());
}

Entry pop_entry(SimState& s) {
    std::pop_heap(s.queue_.begin(), s.queue_.end(), std::greater<Entry>());
    Entry e = s.queue_.back();
    s.queue_.pop_back();
    return e;
}

void predict(SimState& s, int l, int r) {
    if (l < 0 || r < 0) return;
    const Front& a = s.fronts[static_cast<std::size_t>(l)];
    const Front& b = s.fronts[static_cast<std::size_t>(r)];
    if (!(a.speed > b.speed)) return;
    double gap = b.position(s.time) - a.position(s.time);
    double t = s.time + std::max(gap, 0.0) / (a.speed - b.speed);
    push_entry(s, Entry{t, a.position(t), l, r});
}

int new_front(SimState& s, double x, double t, int il, int ir, int event) {
    Front f;
    f.id = static_cast<int>(s.fronts.size());
    f.x0 = x;
    f.t0 = t;
    f.il = il;
    f.ir = ir;
    f.speed = s.pf.speed(il, ir);
    f.birth_event = event;
    s.fronts.push_back(f);
    s.next_.push_back(-1);
    s.prev_.push_back(-1);
    return f.id;
}

// Emits the fan between il and ir at (t, x) and links it between left and right.
std::vector<int> emit(SimState& s, int il, int ir, double x, double t, int left, int right, int event) {
    std::vector<int> ids;
    if (il != ir) {
        std::vector<int> v = s.pf.fan(il, ir);
        for (std::size_t k = 0; k + 1 < v.size(); ++k) ids.push_back(new_front(s, x, t, v[k], v[k + 1], event));
    }
    int prev = left;
    for (int id : ids) {
        s.prev_[static_cast<std::size_t>(id)] = prev;
        if (prev >= 0) s.next_[static_cast<std::size_t>(prev)] = id;
        else s.head = id;
        prev = id;
    }
    if (prev >= 0) s.next_[static_cast<std::size_t>(prev)] = right;
    else s.head = right;
    if (right >= 0) s.prev_[static_cast<std::size_t>(right)] = prev;
    return ids;
}

} // namespace

std::vector<int> SimState::live_ids() const {
    std::vector<int> out;
    for (int id = head; id >= 0; id = next_of(id)) out.push_back(id);
    return out;
}

std::size_t SimState::live_count() const {
    std::size_t n = 0;
    for (int id = head; id >= 0; id = next_of(id)) ++n;
    return n;
}

std::vector<double> SimState::event_times() const {
    std::vector<double> t;
    for (const auto& e : log)
        if (!e.initial) t.push_back(e.t);
    return t;
}

SimState init_sim(const PolygonalFlux& pf, const FluxModel& m, const PiecewiseConstantFn& u0, const SimConfig& cfg) {
    SimState s;
    s.pf = pf;
    s.model = m;
    s.config = cfg;
    s.zero_ = pf.find(0.0);
    if (s.zero_ < 0) throw ValueOffGrid("the far-field value 0 is not a grid node");

    std::vector<double> xs = u0.breakpoints();
    std::vector<double> vals;
    std::vector<int> idx{s.zero_};
    for (std::size_t i = 0; i < u0.pieces(); ++i) {
        double v = u0.values()[i];
        int k = pf.find(v);
        if (k < 0) {
            if (cfg.strict_grid) throw ValueOffGrid("datum value " + std::to_string(v) + " is not a grid node");
            k = pf.nearest(v);
            s.quantization_error += std::abs(pf.node(k) - v) * (xs[i + 1] - xs[i]);
        }
        idx.push_back(k);
        vals.push_back(pf.node(k));
    }
    idx.push_back(s.zero_);
    if (s.quantization_error > 0.0) {
        std::ostringstream os;
        os << "datum rounded onto the value grid, L1 error " << s.quantization_error;
        s.warnings.push_back(os.str());
    }
    s.u0 = xs.empty() ? PiecewiseConstantFn() : PiecewiseConstantFn(xs, vals);

    int last = -1;
    for (std::size_t j = 0; j < xs.size(); ++j) {
        int il = idx[j], ir = idx[j + 1];
        if (il == ir) continue;
        Event ev;
        ev.t = 0.0;
        ev.x = xs[j];
        ev.initial = true;
        ev.states_in = {il, ir};
        ev.left_neighbor = last;
        int eid = static_cast<int>(s.log.size());
        std::vector<int> ids = emit(s, il, ir, xs[j], 0.0, last, -1, eid);
        ev.out_ids = ids;
        for (int id : ids) ev.states_out.push_back(s.fronts[static_cast<std::size_t>(id)].il);
        if (!ids.empty()) ev.states_out.push_back(s.fronts[static_cast<std::size_t>(ids.back())].ir);
        s.log.push_back(std::move(ev));
        if (!ids.empty()) last = ids.back();
    }
    for (int id = s.head; id >= 0; id = s.next_of(id)) predict(s, id, s.next_of(id));
    return s;
}

void advance_to(SimState& s, double t) {
    if (t < s.time) throw InvalidArgument("cannot advance backwards in time");
    while (!s.queue_.empty() && s.queue_.front().t <= t) {
        Entry e = pop_entry(s);
        if (!s.fronts[static_cast<std::size_t>(e.l)].alive() || !s.fronts[static_cast<std::size_t>(e.r)].alive() ||
            s.next_of(e.l) != e.r)
            continue;
        double tc = std::max(e.t, s.time);
        s.time = tc;
        double x = s.fronts[static_cast<std::size_t>(e.l)].position(tc);
        double tol = 1e-11 * (1.0 + std::abs(x));
        int first = e.l, last = e.r;
        while (s.prev_of(first) >= 0 &&
               std::abs(s.fronts[static_cast<std::size_t>(s.prev_of(first))].position(tc) - x) <= tol)
            first = s.prev_of(first);
        while (s.next_of(last) >= 0 &&
               std::abs(s.fronts[static_cast<std::size_t>(s.next_of(last))].position(tc) - x) <= tol)
            last = s.next_of(last);

        Event ev;
        ev.t = tc;
        ev.left_neighbor = s.prev_of(first);
        ev.right_neighbor = s.next_of(last);
        double xsum = 0.0;
        int n = 0;
        for (int id = first;; id = s.next_of(id)) {
            Front& f = s.fronts[static_cast<std::size_t>(id)];
            xsum += f.position(tc);
            ++n;
            ev.in_ids.push_back(id);
            ev.states_in.push_back(f.il);
            if (id == last) {
                ev.states_in.push_back(f.ir);
                break;
            }
        }
        ev.x = xsum / n;
        int eid = static_cast<int>(s.log.size());
        for (int id : ev.in_ids) {
            s.fronts[static_cast<std::size_t>(id)].t_end = tc;
            s.fronts[static_cast<std::size_t>(id)].death_event = eid;
        }
        int il = ev.states_in.front(), ir = ev.states_in.back();
        ev.out_ids = emit(s, il, ir, ev.x, tc, ev.left_neighbor, ev.right_neighbor, eid);
        for (int id : ev.out_ids) ev.states_out.push_back(s.fronts[static_cast<std::size_t>(id)].il);
        if (!ev.out_ids.empty()) ev.states_out.push_back(s.fronts[static_cast<std::size_t>(ev.out_ids.back())].ir);
        if (ev.out_ids.empty()) {
            predict(s, ev.left_neighbor, ev.right_neighbor);
        } else {
            predict(s, ev.left_neighbor, ev.out_ids.front());
            predict(s, ev.out_ids.back(), ev.right_neighbor);
        }
        s.log.push_back(std::move(ev));
        if (s.log.size() > s.config.event_cap)
            throw EventStorm("event count exceeded " + std::to_string(s.config.event_cap) +
                             "; the grid step is too fine for this horizon");
    }
    s.time = t;
}

namespace {

double trace_value(const SimState& s, TraceKind what, int k) {
    switch (what) {
    case TraceKind::Solution: return s.pf.node(k);
    case TraceKind::VelocityExact: return s.model.df(s.pf.node(k)) - s.model.df(0.0);
    case TraceKind::VelocityPolygonal: return s.pf.node_speed(k) - s.pf.node_speed(s.zero_index());
    }
    return 0.0;
}

PiecewiseConstantFn assemble(const SimState& s, const std::vector<int>& ids, double t, TraceKind what) {
    std::vector<double> px, vs;
    int state = s.zero_index();
    for (int id : ids) {
        const Front& f = s.fronts[static_cast<std::size_t>(id)];
        double x = f.position(t);
        if (!px.empty() && !(x > px.back())) {
            // Coincident fronts: the piece between them has zero width.
            state = f.ir;
            continue;
        }
        if (!px.empty()) vs.push_back(trace_value(s, what, state));
        px.push_back(x);
        state = f.ir;
    }
    if (px.size() < 2) return PiecewiseConstantFn();
    return PiecewiseConstantFn(px, vs).normalized();
}

} // namespace

PiecewiseConstantFn trace(const SimState& s, TraceKind what) { return assemble(s, s.live_ids(), s.time, what); }

std::vector<int> fronts_at(const SimState& s, double t) {
    if (t > s.time || t < 0.0) throw HistoryGap("requested time is outside the simulated interval");
    if (t == s.time) return s.live_ids();
    std::vector<int> ids;
    for (const Front& f : s.fronts)
        if (f.t0 <= t && (f.alive() || f.t_end > t)) ids.push_back(f.id);
    std::sort(ids.begin(), ids.end(), [&](int a, int b) {
        const Front& fa = s.fronts[static_cast<std::size_t>(a)];
        const Front& fb = s.fronts[static_cast<std::size_t>(b)];
        double xa = fa.position(t), xb = fb.position(t);
        if (xa != xb) return xa < xb;
        // Co-located fronts were emitted together; faster ones lie to the right afterwards.
        if (fa.speed != fb.speed) return fa.speed < fb.speed;
        return a < b;
    });
    // Rounding can misorder fronts a few ulps apart. Within each cluster of nearly co-located
    // fronts, rebuild the order by following the state chain from the state on its left.
    int state = s.zero_index();
    for (std::size_t i = 0; i < ids.size();) {
        std::size_t j = i + 1;
        while (j < ids.size()) {
            double xa = s.fronts[static_cast<std::size_t>(ids[j - 1])].position(t);
            double xb = s.fronts[static_cast<std::size_t>(ids[j])].position(t);
            if (xb - xa > 1e-9 * (1.0 + std::abs(xa))) break;
            ++j;
        }
        for (std::size_t a = i; a < j; ++a) {
            for (std::size_t b = a; b < j; ++b) {
                if (s.fronts[static_cast<std::size_t>(ids[b])].il != state) continue;
                std::rotate(ids.begin() + static_cast<std::ptrdiff_t>(a), ids.begin() + static_cast<std::ptrdiff_t>(b),
                            ids.begin() + static_cast<std::ptrdiff_t>(b + 1));
                break;
            }
            state = s.fronts[static_cast<std::size_t>(ids[a])].ir;
        }
        i = j;
    }
    return ids;
}

PiecewiseConstantFn trace_at(const SimState& s, double t, TraceKind what) {
    return assemble(s, fronts_at(s, t), t, what);
}

std::string event_log_csv(const SimState& s) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "time,position,incoming,outgoing\n";
    auto states = [&](const std::vector<int>& v) {
        std::ostringstream o;
        o << std::setprecision(17);
        for (std::size_t i = 0; i < v.size(); ++i) o << (i ? ";" : "") << s.pf.node(v[i]);
        return o.str();
    };
    for (const auto& e : s.log) os << e.t << ',' << e.x << ',' << states(e.states_in) << ',' << states(e.states_out) << '\n';
    return os.str();
}

SimState simulate(const FluxModel& m, const PiecewiseConstantFn& u0, double dv, double horizon, const SimConfig& cfg) {
    PolygonalFlux pf = polygonalize(m, u0.values(), dv);
    SimState s = init_sim(pf, m, u0, cfg);
    advance_to(s, horizon);
    return s;
}

} // namespace wft
