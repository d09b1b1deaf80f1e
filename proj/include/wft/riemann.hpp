#pragma once

#include <string>
#include <vector>

#include "wft/flux.hpp"

namespace wft {

enum class WaveKind { Shock, Rarefaction, Contact };

const char* to_string(WaveKind k);

struct Wave {
    WaveKind kind = WaveKind::Shock;
    double ul = 0.0, ur = 0.0;
    // Equal for discontinuities; the characteristic speed range for fans.
    double speed_lo = 0.0, speed_hi = 0.0;
    bool is_discontinuity() const { return kind != WaveKind::Rarefaction; }
};

struct WaveFan {
    std::vector<Wave> waves;
    bool empty() const { return waves.empty(); }
};

double rh_speed(const FluxModel& m, double ul, double ur);
WaveFan solve_riemann(const FluxModel& m, double ul, double ur);
bool is_admissible_jump(const FluxModel& m, double ul, double ur);

// States closer than this are treated as one.
inline constexpr double kStateMergeTol = 1e-13;

} // namespace wft
