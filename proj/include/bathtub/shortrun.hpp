#pragma once

// No-control short-run bathtub equilibrium: the normalized cost root, the
// closed-form rush-hour accumulation and its time-series reconstruction.

#include "bathtub/model.hpp"

#include <cstddef>
#include <vector>

namespace bathtub {

struct BathtubEquilibrium {
    double theta = 1.0;               // C v_f / (alpha_car L)
    double cost = 0.0;                // equilibrium bathtub cost
    double start = 0.0;               // t_s
    double end = 0.0;                 // t_e
    double peak_accumulation = 0.0;   // n(t*)
    bool hypercongested = false;      // theta > 2
    double suburban_population = 0.0;
};

/// N_s - alpha_car n_j_eff (1/beta + 1/gamma)(ln theta + 1/theta - 1).
/// Throws ValidationError for theta <= 1.
double bathtub_residual(double theta, double suburban_population, const EffectiveParameters& p);

/// Unique root theta > 1 of bathtub_residual by bisection (absolute tolerance
/// 1e-10), plus the derived rush-hour quantities. N_s = 0 gives theta = 1.
BathtubEquilibrium solve_shortrun(double suburban_population, const EffectiveParameters& p);

/// Closed-form accumulation; 0 outside [t_s, t_e].
double accumulation_at(double t, const BathtubEquilibrium& eq, const EffectiveParameters& p);

/// Exact time derivative of accumulation_at (early branch used at t*).
double accumulation_rate(double t, const BathtubEquilibrium& eq, const EffectiveParameters& p);

/// Instantaneous bathtub cost alpha_car T(t) + s(t) along the equilibrium path.
double bathtub_cost_at(double t, const BathtubEquilibrium& eq, const EffectiveParameters& p);

struct Trajectory {
    std::vector<double> time;
    std::vector<double> accumulation;
    std::vector<double> speed;
    std::vector<double> outflow;
    std::vector<double> inflow;               // may be negative near t_s / t_e
    std::vector<double> cumulative_arrivals;  // trapezoidal integral of outflow
    std::vector<double> cost;                 // instantaneous bathtub cost

    std::size_t size() const noexcept { return time.size(); }
};

inline constexpr std::size_t kDefaultGridPoints = 2001;

/// Samples the equilibrium on a uniform grid over [t_s, t_e]. grid_size >= 3.
Trajectory build_trajectory(const BathtubEquilibrium& eq, const EffectiveParameters& p,
                            std::size_t grid_size = kDefaultGridPoints);

enum class StaticsTarget { jam_accumulation, vot };

/// dC/dn_j_eff or dC/dalpha_car by central finite difference (relative step
/// 1e-6) on solve_shortrun. Requires a hypercongested equilibrium.
double comparative_statics(double suburban_population, const EffectiveParameters& p,
                           StaticsTarget which);

} // namespace bathtub
