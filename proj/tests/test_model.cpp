#include "bathtub/errors.hpp"
#include "bathtub/model.hpp"

#include <doctest.h>

using namespace bathtub;

TEST_CASE("speed and exit flow follow Greenshields")
{
    const auto p = apply_av_effects(CityParameters{}, {});
    CHECK(speed(0.0, p) == doctest::Approx(20.0));
    CHECK(speed(50.0, p) == doctest::Approx(10.0));
    CHECK(speed(100.0, p) == doctest::Approx(0.0));
    CHECK(exit_flow(50.0, p) == doctest::Approx(100.0));  // n_j v_f / (4L)
    CHECK(p.capacity() == doctest::Approx(100.0));
    CHECK(exit_flow(30.0, p) < exit_flow(50.0, p));
    CHECK(exit_flow(70.0, p) == doctest::Approx(exit_flow(30.0, p)));
    CHECK(travel_time(0.0, p) == doctest::Approx(0.25));
    CHECK(travel_time(50.0, p) == doctest::Approx(0.5));
    CHECK_THROWS_AS(travel_time(100.0, p), ValidationError);
    CHECK_THROWS_AS(speed(-1.0, p), ValidationError);
}

TEST_CASE("schedule delay is piecewise linear around t*")
{
    CityParameters c;
    CHECK(schedule_delay(-1.0, c) == doctest::Approx(10.0));
    CHECK(schedule_delay(0.5, c) == doctest::Approx(20.0));
    CHECK(schedule_delay(0.0, c) == 0.0);
    c.desired_arrival = 8.0;
    CHECK(schedule_delay(7.5, c) == doctest::Approx(5.0));
}

TEST_CASE("AV effects scale car VOT and jam accumulation only")
{
    const CityParameters c;
    const auto p = apply_av_effects(c, {0.59, 1.029});
    CHECK(p.car_vot == doctest::Approx(11.8));
    CHECK(p.walk_vot == doctest::Approx(20.0));
    CHECK(p.jam == doctest::Approx(102.9));
    CHECK(p.city.free_flow_speed == 20.0);
    CHECK(p.downtown_net_income() == doctest::Approx(60.0 - 20.0 / 12.0));
    CHECK(p.demand_scale() == doctest::Approx(11.8 * 102.9 * (0.1 + 0.025)));
    CHECK(p.free_flow_cost() == doctest::Approx(11.8 * 5.0 / 20.0));
}

TEST_CASE("parameter validation")
{
    const CityParameters c;
    CHECK_THROWS_AS(apply_av_effects(c, {0.5, 1.0}), ValidationError);   // eta == beta/alpha
    CHECK_THROWS_AS(apply_av_effects(c, {1.01, 1.0}), ValidationError);
    CHECK_THROWS_AS(apply_av_effects(c, {0.8, 0.99}), ValidationError);
    CHECK_NOTHROW(apply_av_effects(c, {0.51, 1.0}));

    auto bad = c;
    bad.free_flow_speed = 0.0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = c;
    bad.housing_share = 1.0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = c;
    bad.late_penalty = 0.0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = c;
    bad.early_penalty = 25.0; // beta < alpha
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = c;
    bad.population = -1.0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
}
