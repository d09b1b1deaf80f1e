#include "wft/gauge.hpp"

#include <algorithm>
#include <cmath>

#include "wft/error.hpp"

namespace wft {

namespace {

// Cross product of (b - a) x (c - a), computed to keep collinear triples
// exactly at zero when inputs are exact.
double cross(double ax, double ay, double bx, double by, double cx, double cy) {
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
}

std::vector<std::size_t> hull_impl(const std::vector<double>& x, const std::vector<double>& y, double sgn) {
    std::vector<std::size_t> h;
    for (std::size_t i = 0; i < x.size(); ++i) {
        while (h.size() >= 2) {
            std::size_t a = h[h.size() - 2], b = h.back();
            double c = cross(x[a], sgn * y[a], x[b], sgn * y[b], x[i], sgn * y[i]);
            if (c <= 0.0)
                h.pop_back();
            else
                break;
        }
        h.push_back(i);
    }
    return h;
}

} // namespace

std::vector<std::size_t> lower_hull(const std::vector<double>& x, const std::vector<double>& y) {
    return hull_impl(x, y, 1.0);
}

std::vector<std::size_t> upper_hull(const std::vector<double>& x, const std::vector<double>& y) {
    return hull_impl(x, y, -1.0);
}

ConvexGauge ConvexGauge::from_samples(std::vector<std::pair<double, double>> samples) {
    samples.emplace_back(0.0, 0.0);
    std::sort(samples.begin(), samples.end());
    std::vector<double> x, y;
    for (auto& [sx, sy] : samples) {
        if (sx < 0.0) throw InvalidArgument("gauge samples must have x >= 0");
        if (!x.empty() && sx == x.back()) {
            y.back() = std::min(y.back(), sy);
            continue;
        }
        x.push_back(sx);
        y.push_back(sy);
    }
    y[0] = 0.0;
    ConvexGauge g;
    g.x_.clear();
    g.y_.clear();
    for (std::size_t i : lower_hull(x, y)) {
        g.x_.push_back(x[i]);
        g.y_.push_back(y[i]);
    }
    return g;
}

ConvexGauge ConvexGauge::from_function(const Gauge& fn, double xmax, int n) {
    std::vector<std::pair<double, double>> s;
    for (int i = 1; i <= n; ++i) {
        double x = xmax * static_cast<double>(i) / static_cast<double>(n);
        s.emplace_back(x, fn(x));
    }
    return from_samples(std::move(s));
}

double ConvexGauge::operator()(double x) const {
    if (x <= 0.0) return 0.0;
    if (x_.size() < 2) return 0.0;
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t j = static_cast<std::size_t>(it - x_.begin());
    if (j >= x_.size()) j = x_.size() - 1;
    std::size_t i = j - 1;
    double slope = (y_[j] - y_[i]) / (x_[j] - x_[i]);
    return y_[i] + slope * (x - x_[i]);
}

Gauge ConvexGauge::as_function() const {
    ConvexGauge copy = *this;
    return [copy](double x) { return copy(x); };
}

Gauge power_gauge(double p) {
    return [p](double x) { return x <= 0.0 ? 0.0 : std::pow(x, p); };
}

ConvexGauge psi_eps(const ConvexGauge& phi, double eps) {
    if (!(eps > 0.0)) throw InvalidArgument("psi_eps needs eps > 0");
    std::vector<std::pair<double, double>> s;
    const auto& xs = phi.xs();
    constexpr int kSub = 8;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        for (int k = 1; k <= kSub; ++k) {
            double x = 2.0 * (xs[i] + (xs[i + 1] - xs[i]) * k / kSub);
            s.emplace_back(x, phi(x / 2.0) * std::pow(x, eps));
        }
    }
    return ConvexGauge::from_samples(std::move(s));
}

Gauge psi_eps(const Gauge& phi, double eps) {
    if (!(eps > 0.0)) throw InvalidArgument("psi_eps needs eps > 0");
    return [phi, eps](double x) { return x <= 0.0 ? 0.0 : phi(x / 2.0) * std::pow(x, eps); };
}

} // namespace wft
