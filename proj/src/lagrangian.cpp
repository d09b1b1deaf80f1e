#include "wft/lagrangian.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "wft/error.hpp"

namespace wft {

const char* to_string(PathStatus s) {
    switch (s) {
    case PathStatus::Free: return "free";
    case PathStatus::Riding: return "riding";
    case PathStatus::Dead: return "dead";
    }
    return "?";
}

double CharPath::position(double t) const {
    if (polyline.empty()) return y;
    if (t <= polyline.front().first) return polyline.front().second;
    if (t >= polyline.back().first) return polyline.back().second;
    auto it = std::upper_bound(polyline.begin(), polyline.end(), t,
                               [](double v, const std::pair<double, double>& p) { return v < p.first; });
    const auto& b = *it;
    const auto& a = *(it - 1);
    if (b.first == a.first) return b.second;
    return a.second + (b.second - a.second) * (t - a.first) / (b.first - a.first);
}

std::vector<std::pair<double, double>> default_y_grid(const PiecewiseConstantFn& u0, int refine) {
    std::vector<std::pair<double, double>> out;
    if (u0.empty()) return out;
    double h = u0.support_length() / refine;
    const auto& x = u0.breakpoints();
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        double len = x[i + 1] - x[i];
        int n = std::max(1, static_cast<int>(std::ceil(len / h - 1e-9)));
        double c = len / n;
        for (int k = 0; k < n; ++k) out.emplace_back(x[i] + (k + 0.5) * c, c);
    }
    return out;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Walker {
    const SimState& sim;
    double horizon;

    const Front& front(int id) const { return sim.fronts[static_cast<std::size_t>(id)]; }
    double death(int id) const { return front(id).alive() ? kInf : front(id).t_end; }

    bool between(int k, int a, int b) const { return (a < k && k < b) || (b < k && k < a); }

    // Places a path carrying k that sits at the point of event e. Returns false if it dies.
    bool enter_event(CharPath& p, int k, const Event& e, int& left, int& right) const {
        const auto& st = e.states_out;
        const auto& out = e.out_ids;
        p.front = -1;
        if (out.empty()) {
            if (!e.states_in.empty() && e.states_in.front() == k) {
                p.status = PathStatus::Free;
                left = e.left_neighbor;
                right = e.right_neighbor;
                return true;
            }
            return false;
        }
        std::size_t m = out.size();
        for (std::size_t j = 0; j < m; ++j) {
            if (between(k, st[j], st[j + 1])) {
                p.status = PathStatus::Riding;
                p.front = out[j];
                return true;
            }
        }
        if (k == st.front()) {
            p.status = PathStatus::Riding;
            p.front = out.front();
            return true;
        }
        if (k == st.back()) {
            p.status = PathStatus::Riding;
            p.front = out.back();
            return true;
        }
        for (std::size_t j = 1; j < m; ++j) {
            if (st[j] == k) {
                p.status = PathStatus::Free;
                left = out[j - 1];
                right = out[j];
                return true;
            }
        }
        return false;
    }

    void run(CharPath& p, int left, int right) const {
        double t = 0.0, x = p.y;
        double c = sim.pf.node_speed(p.w_index);
        p.polyline.emplace_back(t, x);
        for (;;) {
            if (p.status == PathStatus::Riding) {
                const Front& f = front(p.front);
                double td = death(p.front);
                if (td > horizon) {
                    p.polyline.emplace_back(horizon, f.position(horizon));
                    return;
                }
                t = td;
                x = f.position(td);
                p.polyline.emplace_back(t, x);
                const Event& e = sim.log[static_cast<std::size_t>(f.death_event)];
                if (!enter_event(p, p.w_index, e, left, right)) {
                    p.status = PathStatus::Dead;
                    p.T = t;
                    return;
                }
                continue;
            }
            // Free: moves at the characteristic speed until it meets or loses a bounding front.
            double tm = kInf;
            int hit = -1;
            if (left >= 0) {
                const Front& f = front(left);
                if (f.speed > c) {
                    double tt = t + std::max(0.0, x - f.position(t)) / (f.speed - c);
                    if (tt < tm) { tm = tt; hit = left; }
                }
            }
            if (right >= 0) {
                const Front& f = front(right);
                if (f.speed < c) {
                    double tt = t + std::max(0.0, f.position(t) - x) / (c - f.speed);
                    if (tt < tm) { tm = tt; hit = right; }
                }
            }
            double dl = left >= 0 ? death(left) : kInf;
            double dr = right >= 0 ? death(right) : kInf;
            double td = std::min(dl, dr);
            if (std::min(tm, td) > horizon) {
                p.polyline.emplace_back(horizon, x + c * (horizon - t));
                return;
            }
            if (tm <= td) {
                x = front(hit).position(tm);
                t = tm;
                p.polyline.emplace_back(t, x);
                p.status = PathStatus::Riding;
                p.front = hit;
                continue;
            }
            int dying = dl <= dr ? left : right;
            const Event& e = sim.log[static_cast<std::size_t>(front(dying).death_event)];
            double xp = x + c * (td - t);
            t = td;
            if (std::abs(xp - e.x) <= 1e-9 * (1.0 + std::abs(e.x))) {
                x = e.x;
                p.polyline.emplace_back(t, x);
                if (!enter_event(p, p.w_index, e, left, right)) {
                    p.status = PathStatus::Dead;
                    p.T = t;
                    return;
                }
                continue;
            }
            x = xp;
            p.polyline.emplace_back(t, x);
            if (dying == left) left = e.out_ids.empty() ? e.left_neighbor : e.out_ids.back();
            else right = e.out_ids.empty() ? e.right_neighbor : e.out_ids.front();
        }
    }
};

} // namespace

std::vector<CharPath> track_characteristics(const SimState& sim, const std::vector<std::pair<double, double>>& y_grid,
                                            double horizon) {
    if (horizon < 0.0) horizon = sim.time;
    if (horizon > sim.time) throw HistoryGap("event history ends before the requested horizon");
    std::vector<CharPath> paths;
    paths.reserve(y_grid.size());
    Walker walker{sim, horizon};

    // Fronts emitted at t = 0, left to right.
    std::vector<int> initial;
    for (const auto& e : sim.log) {
        if (!e.initial) break;
        initial.insert(initial.end(), e.out_ids.begin(), e.out_ids.end());
    }
    for (const auto& [y, wt] : y_grid) {
        CharPath p;
        p.y = y;
        p.weight = wt;
        double v = sim.u0(y);
        p.w_index = sim.pf.find(v);
        if (p.w_index < 0) throw ValueOffGrid("label value is not a grid node");
        p.w = sim.pf.node(p.w_index);
        auto it = std::lower_bound(initial.begin(), initial.end(), y,
                                   [&](int id, double yy) { return sim.fronts[static_cast<std::size_t>(id)].x0 < yy; });
        int right = it == initial.end() ? -1 : *it;
        int left = it == initial.begin() ? -1 : *(it - 1);
        if (right >= 0 && sim.fronts[static_cast<std::size_t>(right)].x0 == y)
            throw InvalidArgument("labels must avoid datum breakpoints");
        walker.run(p, left, right);
        paths.push_back(std::move(p));
    }
    return paths;
}

std::vector<CharPath> track_characteristics(const SimState& sim, double horizon) {
    return track_characteristics(sim, default_y_grid(sim.u0), horizon);
}

double survival_measure(const std::vector<CharPath>& paths, double t) {
    double s = 0.0;
    for (const auto& p : paths)
        if (p.T >= t) s += p.weight;
    return s;
}

std::string paths_csv(const std::vector<CharPath>& paths) {
    std::ostringstream os;
    os << std::setprecision(17) << "y,w,T,polyline\n";
    for (const auto& p : paths) {
        os << p.y << ',' << p.w << ',';
        if (std::isinf(p.T)) os << "inf";
        else os << p.T;
        os << ',';
        for (std::size_t i = 0; i < p.polyline.size(); ++i)
            os << (i ? ";" : "") << p.polyline[i].first << ':' << p.polyline[i].second;
        os << '\n';
    }
    return os.str();
}

} // namespace wft
