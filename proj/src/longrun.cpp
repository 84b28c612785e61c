#include "bathtub/longrun.hpp"

#include "bathtub/errors.hpp"
#include "bathtub/numerics.hpp"
#include "bathtub/perimeter.hpp"
#include "bathtub/shortrun.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bathtub {

namespace {

constexpr double kSimpsonTol = 1e-9;
constexpr double kRentFloor = 1e-9;
constexpr double kPopulationTol = 1e-8;

double edge_income(double cost, const EffectiveParameters& p)
{
    const double y = p.city.income - cost;
    if (!(y > 0.0))
        throw ValidationError("commuting cost " + std::to_string(cost) + " exhausts income");
    return y;
}

double drive_cost_per_mile(const EffectiveParameters& p)
{
    return p.car_vot * p.city.suburban_pace();
}

// Suburban residents the city would hold if the bathtub cost were C(N_s);
// zero when suburbs cannot exist at that cost.
double suburban_response(double suburban_population, const EffectiveParameters& p, CommuteMode mode)
{
    const double cost = commuting_cost(suburban_population, p, mode);
    if (cost >= p.city.income) return 0.0;
    const auto level = try_solve_rent_level(cost, p);
    return level ? level->suburban_population : 0.0;
}

} // namespace

std::string CommuteMode::label() const
{
    return is_perimeter() ? "perimeter" : "ue";
}

double indirect_utility(double net_income, double rent, double housing_share)
{
    if (!(net_income > 0.0)) throw ValidationError("net income must be > 0");
    if (!(rent > 0.0)) throw ValidationError("rent must be > 0");
    const double mu = housing_share;
    const double scale = std::pow(1.0 - mu, 1.0 - mu) * std::pow(mu, mu);
    return scale * net_income * std::pow(rent, -mu);
}

double commuting_cost(double suburban_population, const EffectiveParameters& p, CommuteMode mode)
{
    if (mode.is_perimeter()) return solve_perimeter(suburban_population, p, mode.bias).cost;
    return solve_shortrun(suburban_population, p).cost;
}

double downtown_population(double rent_premium_edge, double cost, const EffectiveParameters& p)
{
    const double mu = p.city.housing_share;
    const double y_d = p.downtown_net_income();
    const double y_0 = edge_income(cost, p);
    return (1.0 / mu) * std::pow(y_d, (1.0 - mu) / mu) * std::pow(y_0, -1.0 / mu) *
           (rent_premium_edge + p.city.agricultural_rent) * p.city.downtown_area;
}

double city_boundary(double rent_premium_edge, double cost, const EffectiveParameters& p)
{
    if (!(rent_premium_edge >= 0.0)) throw ValidationError("rent premium must be >= 0");
    const double mu = p.city.housing_share;
    const double r_a = p.city.agricultural_rent;
    const double y_0 = edge_income(cost, p);
    return y_0 / drive_cost_per_mile(p) *
           (std::pow(r_a, -mu) - std::pow(rent_premium_edge + r_a, -mu)) * std::pow(r_a, mu);
}

double suburban_rent(double x, double rent_premium_edge, double cost, const EffectiveParameters& p)
{
    const double y_0 = edge_income(cost, p);
    const double y_x = y_0 - drive_cost_per_mile(p) * x;
    if (!(y_x > 0.0)) throw ValidationError("location beyond the income horizon");
    return (rent_premium_edge + p.city.agricultural_rent) * std::pow(y_x / y_0, 1.0 / p.city.housing_share);
}

double suburban_density(double x, double rent_premium_edge, double cost, const EffectiveParameters& p)
{
    if (x < 0.0) throw ValidationError("location must be >= 0");
    // Relative slack so a stored boundary one ulp past the recomputed one still counts as inside.
    if (x > city_boundary(rent_premium_edge, cost, p) * (1.0 + 1e-12)) return 0.0;
    const double mu = p.city.housing_share;
    const double y_0 = edge_income(cost, p);
    const double y_x = y_0 - drive_cost_per_mile(p) * x;
    return (1.0 / mu) * std::pow(y_x, (1.0 - mu) / mu) * std::pow(y_0, -1.0 / mu) *
           (rent_premium_edge + p.city.agricultural_rent) * p.city.suburban_area(x);
}

double suburban_total(double rent_premium_edge, double cost, const EffectiveParameters& p)
{
    const double x_f = city_boundary(rent_premium_edge, cost, p);
    if (x_f <= 0.0) return 0.0;
    // Evaluate inside the boundary without re-deriving x_f per sample.
    const double mu = p.city.housing_share;
    const double y_0 = edge_income(cost, p);
    const double slope = drive_cost_per_mile(p);
    const double front = (1.0 / mu) * std::pow(y_0, -1.0 / mu) *
                         (rent_premium_edge + p.city.agricultural_rent);
    auto density = [&](double x) {
        return front * std::pow(y_0 - slope * x, (1.0 - mu) / mu) * p.city.suburban_area(x);
    };
    return numerics::adaptive_simpson(density, 0.0, x_f, kSimpsonTol);
}

std::optional<RentLevel> try_solve_rent_level(double cost, const EffectiveParameters& p)
{
    if (!(cost < p.city.income)) return std::nullopt;
    const double total = p.city.population;
    auto excess = [&](double r) {
        return downtown_population(r, cost, p) + suburban_total(r, cost, p) - total;
    };
    if (excess(kRentFloor) >= 0.0) return std::nullopt;

    const double hi = numerics::expand_upper(excess, kRentFloor, 1.0);
    const double r = numerics::bisect(excess, kRentFloor, hi, {.abs_tol = 0.0, .rel_tol = 1e-10});

    RentLevel level;
    level.rent_premium_edge = r;
    level.downtown_population = downtown_population(r, cost, p);
    level.suburban_population = suburban_total(r, cost, p);
    level.boundary = city_boundary(r, cost, p);
    return level;
}

RentLevel solve_rent_level(double cost, const EffectiveParameters& p)
{
    if (!(cost < p.city.income))
        throw ValidationError("commuting cost " + std::to_string(cost) + " exhausts income");
    auto level = try_solve_rent_level(cost, p);
    if (!level) throw SolverError("no positive suburban rent premium clears the population");
    return *level;
}

LandUseEquilibrium solve_land_use(const EffectiveParameters& p, CommuteMode mode)
{
    const double total = p.city.population;
    auto gap = [&](double n_s) { return suburban_response(n_s, p, mode) - n_s; };

    double n_s = 0.0;
    const double gap_lo = gap(0.0);
    const double gap_hi = gap(total);
    if (gap_lo > 0.0 && gap_hi < 0.0) {
        n_s = numerics::bisect(gap, 0.0, total, {.abs_tol = kPopulationTol});
    } else {
        // Damped fixed-point fallback; failure is reported, never guessed.
        n_s = 0.5 * total;
        bool converged = false;
        for (int i = 0; i < 500 && !converged; ++i) {
            const double next = 0.5 * n_s + 0.5 * suburban_response(n_s, p, mode);
            converged = std::abs(next - n_s) < kPopulationTol;
            n_s = next;
        }
        if (!converged || n_s <= 0.0)
            throw SolverError("no interior long-run equilibrium: suburban population map has no "
                              "sign change on (0, N)");
    }

    const double cost = commuting_cost(n_s, p, mode);
    const RentLevel level = solve_rent_level(cost, p);

    const double mu = p.city.housing_share;
    const double r_a = p.city.agricultural_rent;
    const double y_d = p.downtown_net_income();
    const double y_0 = p.city.income - cost;
    const double downtown_rent = (level.rent_premium_edge + r_a) * std::pow(y_d / y_0, 1.0 / mu);

    LandUseEquilibrium eq;
    eq.mode = mode;
    eq.downtown_population = level.downtown_population;
    eq.suburban_population = level.suburban_population;
    eq.rent_premium_edge = level.rent_premium_edge;
    eq.downtown_rent_premium = downtown_rent - r_a;
    eq.boundary = level.boundary;
    eq.utility = indirect_utility(y_d, downtown_rent, mu);
    eq.bathtub_cost = cost;
    eq.theta = cost / p.free_flow_cost();
    eq.control_binding = mode.is_perimeter() && solve_perimeter(n_s, p, mode.bias).binding;
    eq.downtown_net_income = y_d;
    eq.suburban_net_income_edge = y_0;
    eq.downtown_lot_size = mu * y_d / downtown_rent;
    eq.downtown_consumption = (1.0 - mu) * y_d;
    eq.suburban_consumption_edge = (1.0 - mu) * y_0;
    return eq;
}

SpatialProfile build_spatial_profile(const LandUseEquilibrium& eq, const EffectiveParameters& p,
                                     std::size_t points)
{
    if (points < 2) throw ValidationError("spatial profile needs at least 2 points");
    const double mu = p.city.housing_share;
    const double slope = drive_cost_per_mile(p);

    SpatialProfile prof;
    prof.x.resize(points);
    prof.rent.resize(points);
    prof.density.resize(points);
    prof.lot_size.resize(points);
    prof.net_income.resize(points);
    numerics::linspace(0.0, eq.boundary, prof.x);

    for (std::size_t i = 0; i < points; ++i) {
        const double y = eq.suburban_net_income_edge - slope * prof.x[i];
        const double rent = suburban_rent(prof.x[i], eq.rent_premium_edge, eq.bathtub_cost, p);
        prof.net_income[i] = y;
        prof.rent[i] = rent;
        prof.lot_size[i] = mu * y / rent;
        prof.density[i] = rent / (mu * y);
    }
    return prof;
}

LongRunSolution solve_longrun(const CityParameters& city, const AvEffects& av, CommuteMode mode,
                              std::size_t profile_points)
{
    const EffectiveParameters p = apply_av_effects(city, av);
    LongRunSolution sol;
    sol.equilibrium = solve_land_use(p, mode);
    sol.profile = build_spatial_profile(sol.equilibrium, p, profile_points);
    return sol;
}

GradientReport gradient_checks(const SpatialProfile& profile, const EffectiveParameters& p)
{
    GradientReport report;
    const std::size_t n = profile.size();
    if (n < 3) return report;

    const double mu = p.city.housing_share;
    const double slope = drive_cost_per_mile(p);
    for (std::size_t i = 0; i < n; ++i) {
        const double rent = profile.rent[i];
        const double y = profile.net_income[i];
        const double rent_exact = -slope * rent / (mu * y);
        const double density_exact = -slope * (1.0 - mu) * rent / ((mu * y) * (mu * y));
        report.rent_gradient_negative = report.rent_gradient_negative && rent_exact < 0.0;
        report.density_gradient_negative = report.density_gradient_negative && density_exact < 0.0;

        if (i == 0 || i + 1 == n) continue;
        const double h = profile.x[i + 1] - profile.x[i - 1];
        const double rent_fd = (profile.rent[i + 1] - profile.rent[i - 1]) / h;
        const double density_fd = (profile.density[i + 1] - profile.density[i - 1]) / h;
        report.max_rent_error =
            std::max(report.max_rent_error, std::abs(rent_fd - rent_exact) / std::abs(rent_exact));
        report.max_density_error = std::max(
            report.max_density_error, std::abs(density_fd - density_exact) / std::abs(density_exact));
    }
    return report;
}

} // namespace bathtub
