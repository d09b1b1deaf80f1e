#pragma once

#include <string>
#include <vector>

#include "wft/fronttrack.hpp"

namespace wft {

// Kruzkov pair eta_k(u) = (u - k)^+, q_k(u) = chi_{u >= k} (f(u) - f(k)).
// Rate of dissipation carried by a jump (ul, ur) moving at speed sigma:
// [q_k] - sigma [eta_k], with [.] = right minus left.
double dissipation_rate(const FluxModel& m, double ul, double ur, double sigma, double k);
// Same for a front of a simulation, evaluated with the polygonal flux.
double dissipation_rate(const SimState& sim, const Front& front, double k);
double dissipation_rate(const PolygonalFlux& pf, double ul, double ur, double sigma, double k);

// Integral of |f'(w) - sigma| over the jump interval, exact on each polynomial piece.
double dw_mu_mass(const FluxModel& m, double ul, double ur, double sigma);
double dw_mu_mass(const SimState& sim, const Front& front);

// Sum over fronts of rate(k) times the overlap of each lifetime with [t0, t1].
double total_dissipation(const SimState& sim, double k, double t0, double t1);

struct DissipationRecord {
    int front = -1;
    double t0 = 0.0, t1 = 0.0;
    std::vector<double> ks, rates;
    double dw_mass_rate = 0.0;
};

std::vector<DissipationRecord> dissipation_records(const SimState& sim, const std::vector<double>& ks);

// CSV columns: front, t0, t1, k, rate, dw_mu_mass.
std::string dissipation_csv(const std::vector<DissipationRecord>& records);

} // namespace wft
