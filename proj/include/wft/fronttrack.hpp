#pragma once

#include <string>
#include <vector>

#include "wft/flux.hpp"
#include "wft/pwfun.hpp"

namespace wft {

// Piecewise-linear interpolant of f on a value grid.
class PolygonalFlux {
public:
    PolygonalFlux() = default;
    PolygonalFlux(std::vector<double> nodes, std::vector<double> fvals, double dv);

    const std::vector<double>& nodes() const { return w_; }
    const std::vector<double>& values() const { return f_; }
    std::size_t size() const { return w_.size(); }
    double dv() const { return dv_; }
    double node(int i) const { return w_[static_cast<std::size_t>(i)]; }
    double fnode(int i) const { return f_[static_cast<std::size_t>(i)]; }

    // Index of the node equal to w (within 1e-12 relative), or -1.
    int find(double w) const;
    int nearest(double w) const;
    double f(double w) const;
    // Slope of the cell (i, i+1).
    double cell_slope(int i) const;
    // Characteristic speed attached to a node: mean of the adjacent cell slopes.
    double node_speed(int i) const;
    double speed(int il, int ir) const;
    // Chord condition checked against every node strictly between the states.
    bool admissible(int il, int ir) const;
    // Riemann fan between nodes: consecutive hull vertices (left to right in x).
    std::vector<int> fan(int il, int ir) const;

private:
    std::vector<double> w_, f_;
    double dv_ = 0.0;
};

struct PolygonalizeOptions {
    std::size_t node_cap = 1000000;
};

PolygonalFlux polygonalize(const FluxModel& m, const std::vector<double>& datum_values, double dv,
                           const PolygonalizeOptions& opt = {});

struct Front {
    int id = -1;
    double x0 = 0.0, t0 = 0.0, speed = 0.0;
    int il = 0, ir = 0;          // grid indices of the left/right states
    double t_end = -1.0;         // death time, or < 0 while alive
    int birth_event = -1, death_event = -1;
    double position(double t) const { return x0 + speed * (t - t0); }
    bool alive() const { return t_end < 0.0; }
};

struct Event {
    double t = 0.0, x = 0.0;
    std::vector<int> in_ids, out_ids;
    std::vector<int> states_in, states_out; // grid indices, left to right
    int left_neighbor = -1, right_neighbor = -1;
    bool initial = false;
};

struct SimConfig {
    std::size_t event_cap = 5000000;
    double time_guard = 1e-12;
    bool strict_grid = true;
};

class SimState {
public:
    PolygonalFlux pf;
    FluxModel model;
    PiecewiseConstantFn u0;
    SimConfig config;
    double time = 0.0;
    std::vector<Front> fronts;       // every front ever created, indexed by id
    std::vector<Event> log;
    std::vector<std::string> warnings;
    double quantization_error = 0.0;
    int head = -1;                   // leftmost live front

    std::vector<int> live_ids() const;
    std::size_t live_count() const;
    int next_of(int id) const { return next_[static_cast<std::size_t>(id)]; }
    int prev_of(int id) const { return prev_[static_cast<std::size_t>(id)]; }
    // Far-field state index (value 0).
    int zero_index() const { return zero_; }
    // Event times in chronological order (excluding the initial emission).
    std::vector<double> event_times() const;

    std::vector<int> next_, prev_;
    int zero_ = 0;
    struct QueueEntry {
        double t, x;
        int l, r;
        bool operator>(const QueueEntry& o) const {
            if (t != o.t) return t > o.t;
            if (x != o.x) return x > o.x;
            return l > o.l;
        }
    };
    std::vector<QueueEntry> queue_; // binary heap
};

SimState init_sim(const PolygonalFlux& pf, const FluxModel& m, const PiecewiseConstantFn& u0,
                  const SimConfig& cfg = {});
void advance_to(SimState& s, double t);

enum class TraceKind { Solution, VelocityExact, VelocityPolygonal };
PiecewiseConstantFn trace(const SimState& s, TraceKind what);
// Same, rebuilt from the front history at any t in [0, s.time].
PiecewiseConstantFn trace_at(const SimState& s, double t, TraceKind what);
// Fronts alive at t (born at or before t, dying after t), left to right.
std::vector<int> fronts_at(const SimState& s, double t);

// The event log as CSV: time, position, incoming states, outgoing states.
std::string event_log_csv(const SimState& s);

// Convenience: polygonalize, initialise and run to the horizon.
SimState simulate(const FluxModel& m, const PiecewiseConstantFn& u0, double dv, double horizon,
                  const SimConfig& cfg = {});

} // namespace wft
