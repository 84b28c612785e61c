#include "bathtub/errors.hpp"
#include "bathtub/longrun.hpp"
#include "bathtub/perimeter.hpp"

#include <doctest.h>

#include <cmath>

using namespace bathtub;

namespace {

const CityParameters kCity{};
const EffectiveParameters kBase = apply_av_effects(kCity, {});

} // namespace

TEST_CASE("indirect utility")
{
    const double mu = 0.25;
    const double expected = std::pow(0.75, 0.75) * std::pow(0.25, 0.25) * 40.0 * std::pow(50.0, -0.25);
    CHECK(indirect_utility(40.0, 50.0, mu) == doctest::Approx(expected));
    CHECK_THROWS_AS(indirect_utility(0.0, 50.0, mu), ValidationError);
    CHECK_THROWS_AS(indirect_utility(40.0, 0.0, mu), ValidationError);
}

TEST_CASE("commuting cost dispatches on the regime")
{
    CHECK(commuting_cost(300.0, kBase, CommuteMode::user_equilibrium()) ==
          doctest::Approx(solve_shortrun(300.0, kBase).cost));
    CHECK(commuting_cost(300.0, kBase, CommuteMode::perimeter(1.3)) ==
          doctest::Approx(solve_perimeter(300.0, kBase, 1.3).cost));
    CHECK(CommuteMode::perimeter().label() == "perimeter");
    CHECK(CommuteMode::user_equilibrium().label() == "ue");
}

TEST_CASE("density at the edge of downtown")
{
    const double c = 27.0, r0 = 200.0;
    const double y0 = kCity.income - c;
    CHECK(suburban_density(0.0, r0, c, kBase) == doctest::Approx((r0 + 30.0) / (0.25 * y0)));
    CHECK(suburban_rent(0.0, r0, c, kBase) == doctest::Approx(r0 + 30.0));
}

TEST_CASE("boundary closes the rent at the agricultural level")
{
    const double c = 27.0, r0 = 200.0;
    const double xf = city_boundary(r0, c, kBase);
    CHECK(xf > 0.0);
    CHECK(suburban_rent(xf, r0, c, kBase) == doctest::Approx(30.0));
    CHECK(suburban_density(xf * 1.01, r0, c, kBase) == 0.0);
    // rent premium 0 puts the boundary at x = 0
    CHECK(city_boundary(0.0, c, kBase) == doctest::Approx(0.0));
}

TEST_CASE("suburban integral with constant land equals r_s0 A_s / (alpha tau)")
{
    // alpha tau = 1 in the base case, so the integral returns r_s0.
    for (double r0 : {50.0, 200.0, 400.0}) CHECK(suburban_total(r0, 27.0, kBase) == doctest::Approx(r0).epsilon(1e-8));
    const auto p = apply_av_effects(kCity, {0.8, 1.1});
    const double scale = 1.0 / (p.car_vot * kCity.suburban_pace());
    CHECK(suburban_total(120.0, 25.0, p) == doctest::Approx(120.0 * scale).epsilon(1e-8));
}

TEST_CASE("suburban integral with sloped land matches a brute-force sum")
{
    auto city = kCity;
    city.suburban_area.slope = 0.2;
    const auto p = apply_av_effects(city, {});
    const double r0 = 150.0, c = 28.0;
    const double xf = city_boundary(r0, c, p);
    const int n = 200000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += suburban_density((i + 0.5) * xf / n, r0, c, p);
    CHECK(suburban_total(r0, c, p) == doctest::Approx(sum * xf / n).epsilon(1e-6));
}

TEST_CASE("rent level clears population")
{
    const auto rl = solve_rent_level(27.8, kBase);
    CHECK(rl.downtown_population + rl.suburban_population == doctest::Approx(600.0));
    CHECK(rl.rent_premium_edge > 0.0);
    CHECK_FALSE(try_solve_rent_level(61.0, kBase).has_value());
    CHECK_THROWS_AS(solve_rent_level(61.0, kBase), ValidationError);

    // A tiny city fits downtown at the agricultural rent; no positive premium.
    auto small = kCity;
    small.population = 1.0;
    const auto ps = apply_av_effects(small, {});
    CHECK_FALSE(try_solve_rent_level(5.0, ps).has_value());
    CHECK_THROWS_AS(solve_rent_level(5.0, ps), SolverError);
    CHECK_THROWS_AS(solve_land_use(ps, CommuteMode::user_equilibrium()), SolverError);
}

TEST_CASE("land-use equilibrium is a fixed point of the short-run cost")
{
    for (auto mode : {CommuteMode::user_equilibrium(), CommuteMode::perimeter(1.0)}) {
        const auto eq = solve_land_use(kBase, mode);
        CHECK(eq.bathtub_cost == doctest::Approx(commuting_cost(eq.suburban_population, kBase, mode)));
        CHECK(eq.downtown_population + eq.suburban_population == doctest::Approx(600.0).epsilon(1e-10));
        CHECK(eq.downtown_population * eq.downtown_lot_size == doctest::Approx(kCity.downtown_area));
        CHECK(indirect_utility(eq.downtown_net_income, eq.downtown_rent_premium + 30.0, 0.25) ==
              doctest::Approx(eq.utility).epsilon(1e-10));
        CHECK(eq.downtown_consumption == doctest::Approx(0.75 * eq.downtown_net_income));
        CHECK(eq.suburban_consumption_edge == doctest::Approx(0.75 * eq.suburban_net_income_edge));
    }
}

TEST_CASE("perimeter control moves residents to the suburbs")
{
    const auto ue = solve_land_use(kBase, CommuteMode::user_equilibrium());
    const auto pc = solve_land_use(kBase, CommuteMode::perimeter(1.0));
    CHECK(pc.suburban_population > ue.suburban_population);
    CHECK(pc.bathtub_cost < ue.bathtub_cost);
    CHECK(pc.utility > ue.utility);
    CHECK(pc.boundary > ue.boundary);
}

TEST_CASE("spatial profile and gradient checks")
{
    const auto sol = solve_longrun(kCity, {}, CommuteMode::user_equilibrium(), 501);
    const auto& pr = sol.profile;
    REQUIRE(pr.size() == 501);
    CHECK(pr.x.front() == 0.0);
    CHECK(pr.x.back() == doctest::Approx(sol.equilibrium.boundary));
    CHECK(pr.rent.back() == doctest::Approx(30.0));
    for (std::size_t i = 0; i < pr.size(); ++i)
        CHECK(pr.density[i] * pr.lot_size[i] == doctest::Approx(1.0));
    const auto g = gradient_checks(pr, kBase);
    CHECK(g.max_rent_error < 1e-4);
    CHECK(g.max_density_error < 1e-4);
    CHECK(g.rent_gradient_negative);
    CHECK(g.density_gradient_negative);
}
