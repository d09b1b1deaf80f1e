#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace wft {

// Any convex, increasing function on [0, inf) with value 0 at 0.
using Gauge = std::function<double(double)>;

// Piecewise-linear convex increasing gauge given by its vertices. Beyond the
// last vertex the last slope is continued.
class ConvexGauge {
public:
    ConvexGauge() = default;
    // Lower convex hull of the given samples together with (0, 0).
    static ConvexGauge from_samples(std::vector<std::pair<double, double>> samples);
    // Samples fn at n+1 equispaced nodes of [0, xmax] and takes the hull.
    static ConvexGauge from_function(const Gauge& fn, double xmax, int n);

    bool empty() const { return x_.size() < 2; }
    double operator()(double x) const;
    const std::vector<double>& xs() const { return x_; }
    const std::vector<double>& ys() const { return y_; }
    Gauge as_function() const;

private:
    std::vector<double> x_{0.0};
    std::vector<double> y_{0.0};
};

// Lower convex hull (monotone chain) of points sorted by x; returns vertex
// indices. Collinear interior points are dropped.
std::vector<std::size_t> lower_hull(const std::vector<double>& x, const std::vector<double>& y);
// Upper concave hull, same conventions.
std::vector<std::size_t> upper_hull(const std::vector<double>& x, const std::vector<double>& y);

Gauge power_gauge(double p);

// Psi(x) = Phi(x/2) x^eps, resampled and re-convexified.
ConvexGauge psi_eps(const ConvexGauge& phi, double eps);
Gauge psi_eps(const Gauge& phi, double eps);

} // namespace wft
