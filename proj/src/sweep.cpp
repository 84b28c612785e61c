#include "bathtub/sweep.hpp"

#include "bathtub/errors.hpp"
#include "bathtub/numerics.hpp"
#include "bathtub/perimeter.hpp"
#include "bathtub/shortrun.hpp"

#include <exception>

namespace bathtub {

namespace {

RegimeOutcome summarize(const LandUseEquilibrium& eq)
{
    return {eq.utility, eq.suburban_population, eq.bathtub_cost, eq.boundary, eq.downtown_population};
}

SensitivityCell evaluate_sensitivity(const CityParameters& city, double eta, double xi, double bias)
{
    SensitivityCell cell;
    cell.eta = eta;
    cell.xi = xi;
    try {
        const EffectiveParameters p = apply_av_effects(city, {eta, xi});
        cell.uncontrolled = summarize(solve_land_use(p, CommuteMode::user_equilibrium()));
        cell.controlled = summarize(solve_land_use(p, CommuteMode::perimeter(bias)));
    } catch (const std::exception& e) {
        cell.status = e.what();
    }
    return cell;
}

CostCell evaluate_cost(const CityParameters& city, double eta, double n_s, double xi)
{
    CostCell cell;
    cell.suburban_population = n_s;
    cell.xi = xi;
    try {
        const EffectiveParameters p = apply_av_effects(city, {eta, xi});
        const auto ue = solve_shortrun(n_s, p);
        const auto pc = solve_perimeter(n_s, p, 1.0);
        cell.uncontrolled_cost = ue.cost;
        cell.uncontrolled_theta = ue.theta;
        cell.controlled_cost = pc.cost;
        cell.control_binding = pc.binding;
    } catch (const std::exception& e) {
        cell.status = e.what();
    }
    return cell;
}

} // namespace

std::vector<double> GridAxis::values() const
{
    if (steps == 0) throw ValidationError("grid axis needs at least one step");
    std::vector<double> out(steps);
    numerics::linspace(lo, hi, out);
    return out;
}

std::vector<SensitivityCell> sensitivity_grid(const CityParameters& city, const GridAxis& eta,
                                              const GridAxis& xi, double bias)
{
    const auto etas = eta.values();
    const auto xis = xi.values();
    const long rows = static_cast<long>(etas.size());
    const long cols = static_cast<long>(xis.size());
    std::vector<SensitivityCell> cells(static_cast<std::size_t>(rows * cols));

#pragma omp parallel for collapse(2) schedule(dynamic)
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j)
            cells[i * cols + j] = evaluate_sensitivity(city, etas[i], xis[j], bias);
    return cells;
}

std::vector<SensitivityCell> sensitivity_grid_serial(const CityParameters& city, const GridAxis& eta,
                                                     const GridAxis& xi, double bias)
{
    std::vector<SensitivityCell> cells;
    for (double e : eta.values())
        for (double x : xi.values()) cells.push_back(evaluate_sensitivity(city, e, x, bias));
    return cells;
}

std::vector<CostCell> shortrun_cost_grid(const CityParameters& city, double eta,
                                         const GridAxis& suburban_population, const GridAxis& xi)
{
    const auto pops = suburban_population.values();
    const auto xis = xi.values();
    const long rows = static_cast<long>(pops.size());
    const long cols = static_cast<long>(xis.size());
    std::vector<CostCell> cells(static_cast<std::size_t>(rows * cols));

#pragma omp parallel for collapse(2) schedule(static)
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j)
            cells[i * cols + j] = evaluate_cost(city, eta, pops[i], xis[j]);
    return cells;
}

std::vector<CostCell> shortrun_cost_grid_serial(const CityParameters& city, double eta,
                                                const GridAxis& suburban_population,
                                                const GridAxis& xi)
{
    std::vector<CostCell> cells;
    for (double n : suburban_population.values())
        for (double x : xi.values()) cells.push_back(evaluate_cost(city, eta, n, x));
    return cells;
}

} // namespace bathtub
