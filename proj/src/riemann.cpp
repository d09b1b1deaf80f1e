#include "wft/riemann.hpp"

#include <algorithm>
#include <cmath>

#include "wft/error.hpp"

namespace wft {

const char* to_string(WaveKind k) {
    switch (k) {
    case WaveKind::Shock: return "shock";
    case WaveKind::Rarefaction: return "rarefaction";
    case WaveKind::Contact: return "contact";
    }
    return "?";
}

double rh_speed(const FluxModel& m, double ul, double ur) {
    if (ul == ur) throw EqualStates("Rankine-Hugoniot speed needs distinct states");
    return (m.f(ur) - m.f(ul)) / (ur - ul);
}

WaveFan solve_riemann(const FluxModel& m, double ul, double ur) {
    WaveFan fan;
    if (std::abs(ul - ur) < kStateMergeTol) return fan;
    const bool increasing = ul < ur;
    const double a = std::min(ul, ur), b = std::max(ul, ur);
    std::vector<EnvelopeSegment> env =
        envelope(m, a, b, increasing ? EnvelopeSide::LowerConvex : EnvelopeSide::UpperConcave);
    if (!increasing) std::reverse(env.begin(), env.end());
    for (const auto& s : env) {
        double from = increasing ? s.from : s.to;
        double to = increasing ? s.to : s.from;
        if (std::abs(to - from) < kStateMergeTol) continue;
        Wave w;
        w.ul = from;
        w.ur = to;
        if (s.chord) {
            double sigma = rh_speed(m, from, to);
            double tol = 1e-9 * (1.0 + std::abs(sigma));
            bool tangent = std::abs(m.df(from) - sigma) <= tol || std::abs(m.df(to) - sigma) <= tol;
            w.kind = tangent ? WaveKind::Contact : WaveKind::Shock;
            w.speed_lo = w.speed_hi = sigma;
        } else {
            w.kind = WaveKind::Rarefaction;
            w.speed_lo = m.df(from);
            w.speed_hi = m.df(to);
        }
        fan.waves.push_back(w);
    }
    return fan;
}

bool is_admissible_jump(const FluxModel& m, double ul, double ur) {
    const double sigma = rh_speed(m, ul, ur);
    const double a = std::min(ul, ur), b = std::max(ul, ur);
    const double fa = m.f(a);
    const double tol = 1e-12 * (std::abs(m.f(ul)) + std::abs(m.f(ur)) + std::abs(sigma) * (b - a)) + 1e-300;
    std::vector<double> pts = m.critical_points(a, b, sigma);
    constexpr int kGrid = 1024;
    for (int i = 1; i < kGrid; ++i) pts.push_back(a + (b - a) * i / kGrid);
    // Increasing jumps need f above the chord, decreasing ones below it.
    const double sg = ul < ur ? 1.0 : -1.0;
    for (double k : pts) {
        if (k <= a || k >= b) continue;
        double d = m.f(k) - (fa + sigma * (k - a));
        if (sg * d < -tol) return false;
    }
    return true;
}

} // namespace wft
