#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "wft/fronttrack.hpp"

namespace wft {

enum class PathStatus { Free, Riding, Dead };

const char* to_string(PathStatus s);

struct CharPath {
    double y = 0.0;
    double weight = 0.0;     // length of the label cell represented by y
    int w_index = 0;         // carried value as a grid index
    double w = 0.0;
    std::vector<std::pair<double, double>> polyline; // (t, X(t, y))
    PathStatus status = PathStatus::Free;
    int front = -1;          // ridden front while riding
    // Survival time; +infinity when the path is alive at the horizon.
    double T = std::numeric_limits<double>::infinity();

    bool alive_at(double t) const { return T >= t; }
    double position(double t) const;
};

// Cell midpoints of u0 pieces refined to spacing <= support/2048; weights are cell widths.
std::vector<std::pair<double, double>> default_y_grid(const PiecewiseConstantFn& u0, int refine = 2048);

// Paths are followed up to the horizon, which defaults to the simulation time.
std::vector<CharPath> track_characteristics(const SimState& sim,
                                            const std::vector<std::pair<double, double>>& y_grid,
                                            double horizon = -1.0);
std::vector<CharPath> track_characteristics(const SimState& sim, double horizon = -1.0);

double survival_measure(const std::vector<CharPath>& paths, double t);

// CSV columns: y, w, T (inf when alive), polyline as t:x pairs separated by ';'.
std::string paths_csv(const std::vector<CharPath>& paths);

} // namespace wft
