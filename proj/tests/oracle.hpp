#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library: inputs are raw numbers and every quantity is rebuilt from the
// Greenshields speed and the linear schedule penalties.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

namespace oracle {

struct Network {
    double vf = 20.0;    // free-flow speed
    double nj = 100.0;   // effective jam accumulation
    double L = 5.0;      // trip length
    double alpha = 20.0; // car value of time
    double beta = 10.0;
    double gamma = 40.0;
    double t_star = 0.0;
};

struct DiscreteEquilibrium {
    double cost = 0.0;       // common cost level of all used slots
    double served = 0.0;     // commuters served at that level
    double cost_spread = 0.0; // max - min of alpha T + s over used slots
    double first_slot = 0.0;
    double last_slot = 0.0;
    std::size_t used_slots = 0;
    int days = 0;            // cost-level adjustments performed
};

// Discretised equal-cost trip-timing equilibrium on a fixed arrival grid.
//
// For a trial cost level C, each arrival slot t carries the accumulation that
// makes alpha L / v(n) + s(t) equal to C, found by inverting the speed
// relation slot by slot. With cap_fraction > 0 the accumulation cannot exceed
// cap_fraction * nj / 2 (metered inflow); the excess cost is boundary waiting.
// Arrivals in a slot are the exit flow times the slot width. The cost level is
// adjusted day by day until the rounded demand is served.
inline DiscreteEquilibrium discrete_equilibrium(const Network& net, double demand, double slot_hours,
                                                double cap_fraction = 0.0)
{
    const long long atoms = std::llround(demand);
    const double free_cost = net.alpha * net.L / net.vf;
    const double cap = cap_fraction > 0.0 ? cap_fraction * net.nj / 2.0
                                          : std::numeric_limits<double>::infinity();

    auto delay = [&](double t) {
        return t < net.t_star ? net.beta * (net.t_star - t) : net.gamma * (t - net.t_star);
    };
    auto slot_accumulation = [&](double level, double t) {
        const double travel = level - delay(t);
        if (travel <= free_cost) return 0.0;
        // alpha L / (vf (1 - n/nj)) = travel
        const double n = net.nj * (1.0 - free_cost / travel);
        return std::min(n, cap);
    };
    auto exit_rate = [&](double n) { return n * net.vf * (1.0 - n / net.nj) / net.L; };

    // Slots are centred on multiples of slot_hours around t*.
    auto served_at = [&](double level, DiscreteEquilibrium* detail) {
        const double early_span = (level - free_cost) / net.beta;
        const double late_span = (level - free_cost) / net.gamma;
        const long long k_lo = static_cast<long long>(std::floor(-early_span / slot_hours)) - 1;
        const long long k_hi = static_cast<long long>(std::ceil(late_span / slot_hours)) + 1;
        double total = 0.0;
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        std::size_t used = 0;
        double first = 0.0, last = 0.0;
        for (long long k = k_lo; k <= k_hi; ++k) {
            const double t = net.t_star + static_cast<double>(k) * slot_hours;
            const double n = slot_accumulation(level, t);
            if (n <= 0.0) continue;
            total += exit_rate(n) * slot_hours;
            if (detail) {
                const double travel_time = net.L / (net.vf * (1.0 - n / net.nj));
                const double waiting = std::max(0.0, level - delay(t) - net.alpha * travel_time) / net.alpha;
                const double c = net.alpha * (travel_time + waiting) + delay(t);
                lo = std::min(lo, c);
                hi = std::max(hi, c);
                if (used == 0) first = t;
                last = t;
                ++used;
            }
        }
        if (detail) {
            detail->cost_spread = used ? hi - lo : 0.0;
            detail->used_slots = used;
            detail->first_slot = first;
            detail->last_slot = last;
        }
        return total;
    };

    // Day-to-day adjustment: raise the cost level while demand is unserved,
    // lower it while slots are overfilled, halving the step on each reversal.
    DiscreteEquilibrium out;
    double level = free_cost;
    double step = free_cost;
    int last_sign = 0;
    for (out.days = 0; out.days < 400 && step > 1e-12 * free_cost; ++out.days) {
        const double gap = static_cast<double>(atoms) - served_at(level, nullptr);
        const int sign = gap > 0.0 ? 1 : -1;
        if (last_sign != 0 && sign != last_sign) step *= 0.5;
        last_sign = sign;
        level = std::max(free_cost, level + sign * step);
    }
    out.cost = level;
    out.served = served_at(level, &out);
    return out;
}

// Trapezoidal integral of samples y on a uniform grid of spacing h.
template <class Vec>
double trapezoid(const Vec& y, double h)
{
    if (y.size() < 2) return 0.0;
    double s = 0.5 * (y.front() + y.back());
    for (std::size_t i = 1; i + 1 < y.size(); ++i) s += y[i];
    return s * h;
}

} // namespace oracle
