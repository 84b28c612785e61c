#include "bathtub/shortrun.hpp"

#include "bathtub/errors.hpp"
#include "bathtub/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bathtub {

namespace {

constexpr double kThetaFloor = 1.0 + 1e-12;
constexpr double kThetaTol = 1e-10;

// Rates at which the early / late branches approach jam, per hour.
double early_rate(const EffectiveParameters& p)
{
    return p.city.early_penalty * p.city.free_flow_speed / (p.car_vot * p.city.trip_length);
}

double late_rate(const EffectiveParameters& p)
{
    return p.city.late_penalty * p.city.free_flow_speed / (p.car_vot * p.city.trip_length);
}

} // namespace

double bathtub_residual(double theta, double suburban_population, const EffectiveParameters& p)
{
    if (!(theta > 1.0))
        throw ValidationError("theta must be > 1, got " + std::to_string(theta));
    return suburban_population - p.demand_scale() * (std::log(theta) + 1.0 / theta - 1.0);
}

BathtubEquilibrium solve_shortrun(double suburban_population, const EffectiveParameters& p)
{
    if (!(suburban_population >= 0.0) || !std::isfinite(suburban_population))
        throw ValidationError("suburban population must be >= 0");

    BathtubEquilibrium eq;
    eq.suburban_population = suburban_population;

    if (suburban_population == 0.0) {
        eq.theta = 1.0;
    } else {
        auto f = [&](double theta) { return bathtub_residual(theta, suburban_population, p); };
        const double hi = numerics::expand_upper(f, kThetaFloor, 4.0);
        eq.theta = numerics::bisect(f, kThetaFloor, hi, {.abs_tol = kThetaTol});
    }

    const double t_star = p.city.desired_arrival;
    const double free_flow = p.free_flow_cost();
    eq.cost = eq.theta * free_flow;
    eq.start = t_star - (eq.cost - free_flow) / p.city.early_penalty;
    eq.end = t_star + (eq.cost - free_flow) / p.city.late_penalty;
    eq.peak_accumulation = p.jam * (1.0 - 1.0 / eq.theta);
    eq.hypercongested = eq.theta > 2.0;
    return eq;
}

double accumulation_at(double t, const BathtubEquilibrium& eq, const EffectiveParameters& p)
{
    if (t < eq.start || t > eq.end) return 0.0;
    const double u = t <= p.city.desired_arrival ? 1.0 + early_rate(p) * (t - eq.start)
                                                 : 1.0 + late_rate(p) * (eq.end - t);
    return std::clamp(p.jam * (1.0 - 1.0 / u), 0.0, p.jam);
}

double accumulation_rate(double t, const BathtubEquilibrium& eq, const EffectiveParameters& p)
{
    if (t < eq.start || t > eq.end) return 0.0;
    if (t <= p.city.desired_arrival) {
        const double k = early_rate(p);
        const double u = 1.0 + k * (t - eq.start);
        return p.jam * k / (u * u);
    }
    const double k = late_rate(p);
    const double u = 1.0 + k * (eq.end - t);
    return -p.jam * k / (u * u);
}

double bathtub_cost_at(double t, const BathtubEquilibrium& eq, const EffectiveParameters& p)
{
    return p.car_vot * travel_time(accumulation_at(t, eq, p), p) + schedule_delay(t, p.city);
}

Trajectory build_trajectory(const BathtubEquilibrium& eq, const EffectiveParameters& p,
                            std::size_t grid_size)
{
    if (grid_size < 3) throw ValidationError("trajectory grid needs at least 3 points");

    Trajectory tr;
    tr.time.resize(grid_size);
    tr.accumulation.resize(grid_size);
    tr.speed.resize(grid_size);
    tr.outflow.resize(grid_size);
    tr.inflow.resize(grid_size);
    tr.cumulative_arrivals.resize(grid_size);
    tr.cost.resize(grid_size);
    numerics::linspace(eq.start, eq.end, tr.time);

    const auto n_points = static_cast<long>(grid_size);
#pragma omp parallel for schedule(static) if (grid_size > 20000)
    for (long i = 0; i < n_points; ++i) {
        const double t = tr.time[i];
        const double n = accumulation_at(t, eq, p);
        tr.accumulation[i] = n;
        tr.speed[i] = speed(n, p);
        tr.outflow[i] = exit_flow(n, p);
        tr.inflow[i] = accumulation_rate(t, eq, p) + tr.outflow[i];
        tr.cost[i] = p.car_vot * travel_time(n, p) + schedule_delay(t, p.city);
    }

    tr.cumulative_arrivals[0] = 0.0;
    for (std::size_t i = 1; i < grid_size; ++i) {
        const double h = tr.time[i] - tr.time[i - 1];
        tr.cumulative_arrivals[i] =
            tr.cumulative_arrivals[i - 1] + 0.5 * h * (tr.outflow[i] + tr.outflow[i - 1]);
    }
    return tr;
}

double comparative_statics(double suburban_population, const EffectiveParameters& p,
                           StaticsTarget which)
{
    const auto base = solve_shortrun(suburban_population, p);
    if (!base.hypercongested)
        throw ValidationError("comparative statics require a hypercongested equilibrium (theta > 2)");

    auto cost_with = [&](double value) {
        EffectiveParameters q = p;
        (which == StaticsTarget::jam_accumulation ? q.jam : q.car_vot) = value;
        return solve_shortrun(suburban_population, q).cost;
    };
    const double x = which == StaticsTarget::jam_accumulation ? p.jam : p.car_vot;
    const double h = 1e-6 * x;
    return (cost_with(x + h) - cost_with(x - h)) / (2.0 * h);
}

} // namespace bathtub
