#include "wft/kinetic.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace wft {

namespace {

template <class F>
double rate_impl(F f, double ul, double ur, double sigma, double k) {
    auto q = [&](double u) { return u >= k ? f(u) - f(k) : 0.0; };
    auto eta = [&](double u) { return std::max(u - k, 0.0); };
    return (q(ur) - q(ul)) - sigma * (eta(ur) - eta(ul));
}

double front_end(const SimState& sim, const Front& f) { return f.alive() ? sim.time : f.t_end; }

} // namespace

double dissipation_rate(const FluxModel& m, double ul, double ur, double sigma, double k) {
    return rate_impl([&](double u) { return m.f(u); }, ul, ur, sigma, k);
}

double dissipation_rate(const PolygonalFlux& pf, double ul, double ur, double sigma, double k) {
    return rate_impl([&](double u) { return pf.f(u); }, ul, ur, sigma, k);
}

double dissipation_rate(const SimState& sim, const Front& front, double k) {
    return dissipation_rate(sim.pf, sim.pf.node(front.il), sim.pf.node(front.ir), front.speed, k);
}

double dw_mu_mass(const FluxModel& m, double ul, double ur, double sigma) {
    double a = std::min(ul, ur), b = std::max(ul, ur);
    if (a == b) return 0.0;
    // Between consecutive points where f' = sigma the integrand keeps its sign.
    std::vector<double> pts = m.critical_points(a, b, sigma);
    std::sort(pts.begin(), pts.end());
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        double x0 = pts[i], x1 = pts[i + 1];
        s += std::abs((m.f(x1) - sigma * x1) - (m.f(x0) - sigma * x0));
    }
    return s;
}

double dw_mu_mass(const SimState& sim, const Front& front) {
    int a = std::min(front.il, front.ir), b = std::max(front.il, front.ir);
    double s = 0.0;
    for (int i = a; i < b; ++i) s += std::abs(sim.pf.cell_slope(i) - front.speed) * (sim.pf.node(i + 1) - sim.pf.node(i));
    return s;
}

double total_dissipation(const SimState& sim, double k, double t0, double t1) {
    double total = 0.0;
    for (const Front& f : sim.fronts) {
        double lo = std::max(t0, f.t0), hi = std::min(t1, front_end(sim, f));
        if (hi > lo) total += dissipation_rate(sim, f, k) * (hi - lo);
    }
    return total;
}

std::vector<DissipationRecord> dissipation_records(const SimState& sim, const std::vector<double>& ks) {
    std::vector<DissipationRecord> out;
    out.reserve(sim.fronts.size());
    for (const Front& f : sim.fronts) {
        DissipationRecord r;
        r.front = f.id;
        r.t0 = f.t0;
        r.t1 = front_end(sim, f);
        r.ks = ks;
        for (double k : ks) r.rates.push_back(dissipation_rate(sim, f, k));
        r.dw_mass_rate = dw_mu_mass(sim, f);
        out.push_back(std::move(r));
    }
    return out;
}

std::string dissipation_csv(const std::vector<DissipationRecord>& records) {
    std::ostringstream os;
    os << std::setprecision(17) << "front,t0,t1,k,rate,dw_mu_mass\n";
    for (const auto& r : records)
        for (std::size_t i = 0; i < r.ks.size(); ++i)
            os << r.front << ',' << r.t0 << ',' << r.t1 << ',' << r.ks[i] << ',' << r.rates[i] << ',' << r.dw_mass_rate
               << '\n';
    return os.str();
}

} // namespace wft
