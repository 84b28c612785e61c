#include "bathtub/model.hpp"

#include "bathtub/errors.hpp"

#include <cmath>
#include <string>

namespace bathtub {

namespace {

void require(bool ok, const char* what)
{
    if (!ok) throw ValidationError(what);
}

void check_accumulation(double n, const EffectiveParameters& p)
{
    if (!(n >= 0.0 && n <= p.jam))
        throw ValidationError("accumulation " + std::to_string(n) + " outside [0, " +
                              std::to_string(p.jam) + "]");
}

} // namespace

void CityParameters::validate() const
{
    auto finite = [](double v) { return std::isfinite(v); };
    require(finite(free_flow_speed) && free_flow_speed > 0.0, "free_flow_speed must be > 0");
    require(finite(jam_accumulation) && jam_accumulation > 0.0, "jam_accumulation must be > 0");
    require(finite(trip_length) && trip_length > 0.0, "trip_length must be > 0");
    require(finite(walk_time) && walk_time >= 0.0, "walk_time must be >= 0");
    require(finite(early_penalty) && early_penalty > 0.0, "early_penalty (beta) must be > 0");
    require(finite(vot) && vot > early_penalty, "vot (alpha) must exceed early_penalty (beta)");
    require(finite(late_penalty) && late_penalty > 0.0, "late_penalty (gamma) must be > 0");
    require(finite(desired_arrival), "desired_arrival must be finite");
    require(finite(income) && income > 0.0, "income must be > 0");
    require(finite(agricultural_rent) && agricultural_rent > 0.0, "agricultural_rent must be > 0");
    require(finite(housing_share) && housing_share > 0.0 && housing_share < 1.0,
            "housing_share (mu) must lie in (0, 1)");
    require(finite(downtown_area) && downtown_area > 0.0, "downtown_area must be > 0");
    require(finite(suburban_area.base) && suburban_area.base > 0.0, "suburban_area must be > 0");
    require(finite(suburban_area.slope) && suburban_area.slope >= 0.0,
            "suburban_area_slope must be >= 0 so that A_s(x) > 0 for all x >= 0");
    require(finite(population) && population > 0.0, "population must be > 0");
    require(income > vot * walk_time, "income must exceed the downtown commuting cost");
}

double EffectiveParameters::demand_scale() const noexcept
{
    return car_vot * jam * (1.0 / city.early_penalty + 1.0 / city.late_penalty);
}

double EffectiveParameters::free_flow_cost() const noexcept
{
    return car_vot * city.trip_length / city.free_flow_speed;
}

double EffectiveParameters::capacity() const noexcept
{
    return jam * city.free_flow_speed / (4.0 * city.trip_length);
}

double EffectiveParameters::downtown_net_income() const noexcept
{
    return city.income - walk_vot * city.walk_time;
}

EffectiveParameters apply_av_effects(const CityParameters& city, const AvEffects& av)
{
    city.validate();
    const double eta_min = city.early_penalty / city.vot;
    if (!(av.vot_factor > eta_min))
        throw ValidationError("vot_factor (eta) must exceed beta/alpha = " + std::to_string(eta_min));
    if (!(av.vot_factor <= 1.0))
        throw ValidationError("vot_factor (eta) must be <= 1");
    if (!(av.capacity_factor >= 1.0) || !std::isfinite(av.capacity_factor))
        throw ValidationError("capacity_factor (xi) must be >= 1");

    EffectiveParameters p;
    p.city = city;
    p.car_vot = av.vot_factor * city.vot;
    p.jam = av.capacity_factor * city.jam_accumulation;
    p.walk_vot = city.vot;
    return p;
}

double speed(double accumulation, const EffectiveParameters& p)
{
    check_accumulation(accumulation, p);
    return p.city.free_flow_speed * (1.0 - accumulation / p.jam);
}

double exit_flow(double accumulation, const EffectiveParameters& p)
{
    return accumulation * speed(accumulation, p) / p.city.trip_length;
}

double travel_time(double accumulation, const EffectiveParameters& p)
{
    check_accumulation(accumulation, p);
    if (accumulation >= p.jam)
        throw ValidationError("travel time is infinite at jam accumulation");
    return p.city.trip_length / speed(accumulation, p);
}

double schedule_delay(double t, const CityParameters& city) noexcept
{
    const double dt = t - city.desired_arrival;
    return dt <= 0.0 ? -city.early_penalty * dt : city.late_penalty * dt;
}

} // namespace bathtub
