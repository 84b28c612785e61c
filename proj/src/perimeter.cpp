#include "bathtub/perimeter.hpp"

#include "bathtub/errors.hpp"
#include "bathtub/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bathtub {

namespace {

void check_bias(double bias)
{
    if (!(bias > 0.0 && bias < 2.0))
        throw ValidationError("bias factor epsilon must lie in (0, 2), got " + std::to_string(bias));
}

// Downtown travel time while accumulation is held at eps n_j / 2.
double controlled_travel_time(const EffectiveParameters& p, double bias)
{
    return p.city.trip_length / (p.city.free_flow_speed * (1.0 - 0.5 * bias));
}

PerimeterEquilibrium from_uncontrolled(const BathtubEquilibrium& ue, const EffectiveParameters& p,
                                       double bias)
{
    PerimeterEquilibrium eq;
    eq.theta = ue.theta;
    eq.cost = ue.cost;
    eq.control_inflow = control_inflow(p, bias);
    eq.controlled_accumulation = 0.5 * bias * p.jam;
    eq.start = ue.start;
    eq.end = ue.end;
    eq.control_start = p.city.desired_arrival;
    eq.control_end = p.city.desired_arrival;
    eq.bias = bias;
    eq.binding = false;
    eq.suburban_population = ue.suburban_population;
    return eq;
}

} // namespace

double control_inflow(const EffectiveParameters& p, double bias)
{
    check_bias(bias);
    return bias * (2.0 - bias) * p.capacity();
}

double controlled_theta(double suburban_population, const EffectiveParameters& p, double bias)
{
    check_bias(bias);
    const double demand = suburban_population / p.demand_scale();
    return (demand - std::log(2.0 / (2.0 - bias)) + bias) * 4.0 / (bias * (2.0 - bias));
}

PerimeterEquilibrium solve_perimeter(double suburban_population, const EffectiveParameters& p,
                                     double bias)
{
    check_bias(bias);
    if (!(suburban_population >= 0.0) || !std::isfinite(suburban_population))
        throw ValidationError("suburban population must be >= 0");

    // theta_eps exceeds 2/(2-eps) exactly when the uncontrolled peak exceeds
    // eps n_j / 2; both thresholds meet at the same N_s.
    const double theta = controlled_theta(suburban_population, p, bias);
    if (!(theta > 2.0 / (2.0 - bias)))
        return from_uncontrolled(solve_shortrun(suburban_population, p), p, bias);

    const double t_star = p.city.desired_arrival;
    const double free_flow = p.free_flow_cost();
    const double in_control = p.car_vot * controlled_travel_time(p, bias);

    PerimeterEquilibrium eq;
    eq.theta = theta;
    eq.cost = theta * free_flow;
    eq.control_inflow = control_inflow(p, bias);
    eq.controlled_accumulation = 0.5 * bias * p.jam;
    eq.start = t_star - (eq.cost - free_flow) / p.city.early_penalty;
    eq.end = t_star + (eq.cost - free_flow) / p.city.late_penalty;
    eq.control_start = t_star - (eq.cost - in_control) / p.city.early_penalty;
    eq.control_end = t_star + (eq.cost - in_control) / p.city.late_penalty;
    eq.bias = bias;
    eq.binding = true;
    eq.suburban_population = suburban_population;
    return eq;
}

double cost_ratio(double suburban_population, const EffectiveParameters& p)
{
    const double controlled = solve_perimeter(suburban_population, p, 1.0).cost;
    const double uncontrolled = solve_shortrun(suburban_population, p).cost;
    return controlled / uncontrolled;
}

double uncontrolled_arrivals(const PerimeterEquilibrium& eq, const EffectiveParameters& p)
{
    if (!eq.binding) return eq.suburban_population;
    return p.demand_scale() * (std::log(2.0 / (2.0 - eq.bias)) - 0.5 * eq.bias);
}

double controlled_arrivals(const PerimeterEquilibrium& eq)
{
    if (!eq.binding) return 0.0;
    return eq.control_inflow * (eq.control_end - eq.control_start);
}

double queue_at(double t, const PerimeterEquilibrium& eq, const EffectiveParameters& p)
{
    if (!eq.binding || t < eq.control_start || t > eq.control_end) return 0.0;
    const double q = t <= p.city.desired_arrival
                         ? eq.control_inflow * p.city.early_penalty / p.car_vot * (t - eq.control_start)
                         : eq.control_inflow * p.city.late_penalty / p.car_vot * (eq.control_end - t);
    return std::max(q, 0.0);
}

double peak_queue(const PerimeterEquilibrium& eq, const EffectiveParameters& p)
{
    return queue_at(p.city.desired_arrival, eq, p);
}

QueueProfile queue_profile(const PerimeterEquilibrium& eq, const EffectiveParameters& p,
                           std::size_t grid_size)
{
    QueueProfile out;
    if (!eq.binding) return out;
    if (grid_size < 3) throw ValidationError("queue grid needs at least 3 points");

    out.time.resize(grid_size);
    out.queue.resize(grid_size);
    out.waiting_time.resize(grid_size);
    numerics::linspace(eq.control_start, eq.control_end, out.time);
    for (std::size_t i = 0; i < grid_size; ++i) {
        out.queue[i] = queue_at(out.time[i], eq, p);
        out.waiting_time[i] = out.queue[i] / eq.control_inflow;
    }
    return out;
}

std::string_view to_string(Phase phase) noexcept
{
    switch (phase) {
    case Phase::pre: return "pre";
    case Phase::control: return "control";
    case Phase::post: return "post";
    }
    return "?";
}

ControlledTrajectory build_controlled_trajectory(const PerimeterEquilibrium& eq,
                                                 const EffectiveParameters& p,
                                                 std::size_t grid_size)
{
    if (grid_size < 3) throw ValidationError("trajectory grid needs at least 3 points");

    // The uncontrolled branches only depend on (start, end), so reuse them.
    BathtubEquilibrium branches;
    branches.theta = eq.theta;
    branches.cost = eq.cost;
    branches.start = eq.start;
    branches.end = eq.end;

    ControlledTrajectory tr;
    tr.time.resize(grid_size);
    tr.accumulation.resize(grid_size);
    tr.queue.resize(grid_size);
    tr.waiting_time.resize(grid_size);
    tr.outflow.resize(grid_size);
    tr.phase.resize(grid_size);
    numerics::linspace(eq.start, eq.end, tr.time);

    const auto n_points = static_cast<long>(grid_size);
#pragma omp parallel for schedule(static) if (grid_size > 20000)
    for (long i = 0; i < n_points; ++i) {
        const double t = tr.time[i];
        Phase phase;
        if (eq.binding)
            phase = t < eq.control_start ? Phase::pre : (t <= eq.control_end ? Phase::control : Phase::post);
        else
            phase = t <= p.city.desired_arrival ? Phase::pre : Phase::post;

        const double n = phase == Phase::control ? eq.controlled_accumulation
                                                 : accumulation_at(t, branches, p);
        tr.phase[i] = phase;
        tr.accumulation[i] = n;
        tr.queue[i] = queue_at(t, eq, p);
        tr.waiting_time[i] = eq.binding ? tr.queue[i] / eq.control_inflow : 0.0;
        tr.outflow[i] = exit_flow(n, p);
    }
    return tr;
}

} // namespace bathtub
