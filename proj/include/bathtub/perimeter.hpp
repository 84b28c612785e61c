#pragma once

// Perimeter-control equilibrium: inflow metered so the downtown accumulation
// holds at eps * n_j / 2 while a point queue forms at the boundary.

#include "bathtub/model.hpp"
#include "bathtub/shortrun.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace bathtub {

struct PerimeterEquilibrium {
    double theta = 1.0;
    double cost = 0.0;
    double control_inflow = 0.0;          // I_p, vehicles/hour
    double controlled_accumulation = 0.0; // eps * n_j_eff / 2
    double start = 0.0;                   // t_s
    double end = 0.0;                     // t_e
    double control_start = 0.0;           // t_s^p
    double control_end = 0.0;             // t_e^p
    double bias = 1.0;                    // eps
    bool binding = false;
    double suburban_population = 0.0;
};

/// exit_flow(eps n_j_eff / 2) = eps (2 - eps) n_j_eff v_f / (4 L). eps in (0, 2).
double control_inflow(const EffectiveParameters& p, double bias = 1.0);

/// Closed-form theta_eps solving
///   N_s = K (eps(2-eps)/4 theta + ln(2/(2-eps)) - eps),  K = alpha_car n_j_eff (1/beta + 1/gamma).
double controlled_theta(double suburban_population, const EffectiveParameters& p, double bias = 1.0);

/// Equilibrium under perimeter control. Control binds iff the uncontrolled
/// peak accumulation would exceed eps n_j_eff / 2; otherwise the no-control
/// equilibrium is returned with binding = false.
PerimeterEquilibrium solve_perimeter(double suburban_population, const EffectiveParameters& p,
                                     double bias = 1.0);

/// Controlled cost over uncontrolled cost at eps = 1.
double cost_ratio(double suburban_population, const EffectiveParameters& p);

/// Commuters arriving outside the control window, K (ln(2/(2-eps)) - eps/2).
double uncontrolled_arrivals(const PerimeterEquilibrium& eq, const EffectiveParameters& p);

/// Commuters arriving during control, I_p (t_e^p - t_s^p).
double controlled_arrivals(const PerimeterEquilibrium& eq);

struct QueueProfile {
    std::vector<double> time;
    std::vector<double> queue;         // vehicles
    std::vector<double> waiting_time;  // hours

    std::size_t size() const noexcept { return time.size(); }
    bool empty() const noexcept { return time.empty(); }
};

/// Boundary queue at time t; rises at I_p beta / alpha_car before t*, falls
/// at I_p gamma / alpha_car after. Zero outside the control window.
double queue_at(double t, const PerimeterEquilibrium& eq, const EffectiveParameters& p);

/// Peak queue length, reached at t*.
double peak_queue(const PerimeterEquilibrium& eq, const EffectiveParameters& p);

/// Uniform grid over [t_s^p, t_e^p]; empty when control does not bind.
QueueProfile queue_profile(const PerimeterEquilibrium& eq, const EffectiveParameters& p,
                           std::size_t grid_size = kDefaultGridPoints);

enum class Phase { pre, control, post };

std::string_view to_string(Phase phase) noexcept;

struct ControlledTrajectory {
    std::vector<double> time;
    std::vector<double> accumulation;
    std::vector<double> queue;
    std::vector<double> waiting_time;
    std::vector<double> outflow;
    std::vector<Phase> phase;

    std::size_t size() const noexcept { return time.size(); }
};

/// Full rush-hour time series under control over [t_s, t_e]. Outside the
/// control window accumulation follows the uncontrolled closed-form branches.
ControlledTrajectory build_controlled_trajectory(const PerimeterEquilibrium& eq,
                                                 const EffectiveParameters& p,
                                                 std::size_t grid_size = kDefaultGridPoints);

} // namespace bathtub
