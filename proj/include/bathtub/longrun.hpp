#pragma once

// Long-run residential equilibrium of the monocentric city: Cobb-Douglas
// indirect utilities, the suburban rent level that clears population, and the
// outer fixed point coupling suburban population to the short-run cost.

#include "bathtub/model.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace bathtub {

/// Short-run regime embedded in the long-run equilibrium.
struct CommuteMode {
    enum class Kind { user_equilibrium, perimeter };

    Kind kind = Kind::user_equilibrium;
    double bias = 1.0;  // eps, only used under perimeter control

    static CommuteMode user_equilibrium() noexcept { return {}; }
    static CommuteMode perimeter(double bias = 1.0) noexcept { return {Kind::perimeter, bias}; }

    bool is_perimeter() const noexcept { return kind == Kind::perimeter; }
    std::string label() const;

    friend bool operator==(const CommuteMode&, const CommuteMode&) = default;
};

/// (1-mu)^(1-mu) mu^mu y r^(-mu). y and r must be positive.
double indirect_utility(double net_income, double rent, double housing_share);

/// Short-run suburban bathtub cost C(N_s) for the given regime.
double commuting_cost(double suburban_population, const EffectiveParameters& p, CommuteMode mode);

/// N_d = (1/mu) y_d^((1-mu)/mu) (w - C)^(-1/mu) (r_s0 + r_A) A_d. Requires w > C.
double downtown_population(double rent_premium_edge, double cost, const EffectiveParameters& p);

/// Suburban residents per unit distance at x,
/// (1/mu) y_s(x)^((1-mu)/mu) y_s(0)^(-1/mu) (r_s0 + r_A) A_s(x), zero beyond x_f.
double suburban_density(double x, double rent_premium_edge, double cost, const EffectiveParameters& p);

/// Total suburban rent r_s(x) + r_A = (r_s0 + r_A) (y_s(x) / y_s(0))^(1/mu).
double suburban_rent(double x, double rent_premium_edge, double cost, const EffectiveParameters& p);

/// City boundary x_f where suburban rent falls to r_A.
double city_boundary(double rent_premium_edge, double cost, const EffectiveParameters& p);

/// Integral of suburban_density over [0, x_f] by adaptive Simpson.
double suburban_total(double rent_premium_edge, double cost, const EffectiveParameters& p);

struct RentLevel {
    double rent_premium_edge = 0.0;  // r_s(0)
    double downtown_population = 0.0;
    double suburban_population = 0.0;
    double boundary = 0.0;           // x_f
};

/// Rent premium r_s(0) > 0 that places all N residents, or nullopt when no
/// positive premium exists (C >= w, or downtown alone absorbs N).
std::optional<RentLevel> try_solve_rent_level(double cost, const EffectiveParameters& p);

/// As try_solve_rent_level but throws SolverError when no positive premium exists.
RentLevel solve_rent_level(double cost, const EffectiveParameters& p);

struct LandUseEquilibrium {
    CommuteMode mode;
    double downtown_population = 0.0;   // N_d
    double suburban_population = 0.0;   // N_s (integral of density)
    double rent_premium_edge = 0.0;     // r_s(0)
    double downtown_rent_premium = 0.0; // r_d
    double boundary = 0.0;              // x_f
    double utility = 0.0;               // U*
    double bathtub_cost = 0.0;          // embedded short-run cost
    double theta = 0.0;
    bool control_binding = false;
    double downtown_net_income = 0.0;   // y_d
    double suburban_net_income_edge = 0.0; // y_s(0)
    double downtown_lot_size = 0.0;     // a_d
    double downtown_consumption = 0.0;  // z_d
    double suburban_consumption_edge = 0.0; // z_s(0)
};

struct SpatialProfile {
    std::vector<double> x;
    std::vector<double> rent;        // r_s(x) + r_A
    std::vector<double> density;     // N_s(x) / A_s(x)
    std::vector<double> lot_size;    // a_s(x)
    std::vector<double> net_income;  // y_s(x)

    std::size_t size() const noexcept { return x.size(); }
};

struct LongRunSolution {
    LandUseEquilibrium equilibrium;
    SpatialProfile profile;
};

/// Outer fixed point on N_s for already-effective parameters.
LandUseEquilibrium solve_land_use(const EffectiveParameters& p, CommuteMode mode);

SpatialProfile build_spatial_profile(const LandUseEquilibrium& eq, const EffectiveParameters& p,
                                     std::size_t points = 2001);

LongRunSolution solve_longrun(const CityParameters& city, const AvEffects& av, CommuteMode mode,
                              std::size_t profile_points = 2001);

struct GradientReport {
    double max_rent_error = 0.0;     // max relative error, finite difference vs analytic
    double max_density_error = 0.0;
    bool rent_gradient_negative = true;
    bool density_gradient_negative = true;
};

/// Central finite-difference slopes of rent and density on the profile grid
/// compared against the analytic gradients.
GradientReport gradient_checks(const SpatialProfile& profile, const EffectiveParameters& p);

} // namespace bathtub
