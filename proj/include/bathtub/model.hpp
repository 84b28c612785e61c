#pragma once

// Exogenous city parameters, autonomous-vehicle effects and the elementary
// bathtub primitives (Greenshields speed, network exit function, travel time).
//
// Units: hours, miles, vehicles, persons, currency. Every type here is an
// immutable value once validated and every function is pure.

namespace bathtub {

/// Suburban land supply per unit distance, A_s(x) = base + slope * x.
struct LandSupply {
    double base = 1.0;
    double slope = 0.0;

    double operator()(double x) const noexcept { return base + slope * x; }
    bool is_constant() const noexcept { return slope == 0.0; }

    friend bool operator==(const LandSupply&, const LandSupply&) = default;
};

struct CityParameters {
    double free_flow_speed = 20.0;        // v_f, miles/hour
    double jam_accumulation = 100.0;      // n_j, vehicles
    double trip_length = 5.0;             // L, miles
    double walk_time = 1.0 / 12.0;        // T_d, hours (downtown commuters)
    double vot = 20.0;                    // alpha, currency/hour
    double early_penalty = 10.0;          // beta, currency/hour
    double late_penalty = 40.0;           // gamma, currency/hour
    double desired_arrival = 0.0;         // t*, hours
    double income = 60.0;                 // w
    double agricultural_rent = 30.0;      // r_A
    double housing_share = 0.25;          // mu
    double downtown_area = 2.0;           // A_d
    LandSupply suburban_area{};           // A_s(x)
    double population = 600.0;           // N, persons

    /// Suburban free-flow pace tau = 1 / v_f, hours per mile.
    double suburban_pace() const noexcept { return 1.0 / free_flow_speed; }

    /// Throws ValidationError naming the first violated bound.
    void validate() const;

    friend bool operator==(const CityParameters&, const CityParameters&) = default;
};

/// Autonomous-vehicle effects: eta scales the car value of time, xi scales
/// jam accumulation.
struct AvEffects {
    double vot_factor = 1.0;        // eta, in (beta/alpha, 1]
    double capacity_factor = 1.0;   // xi, >= 1

    friend bool operator==(const AvEffects&, const AvEffects&) = default;
};

/// City parameters after the AV effects are applied. Only car time costs
/// (downtown in-vehicle time, boundary waiting, suburban drive) use car_vot;
/// downtown walkers keep the base value of time.
struct EffectiveParameters {
    CityParameters city;
    double car_vot = 0.0;   // eta * alpha
    double jam = 0.0;       // xi * n_j
    double walk_vot = 0.0;  // alpha

    /// alpha_car * n_j_eff * (1/beta + 1/gamma), persons.
    double demand_scale() const noexcept;
    /// alpha_car * L / v_f, the free-flow downtown time cost.
    double free_flow_cost() const noexcept;
    /// Maximum of the exit function, n_j_eff * v_f / (4 L).
    double capacity() const noexcept;
    /// y_d = w - alpha * T_d.
    double downtown_net_income() const noexcept;
};

/// Applies (eta, xi) to validated city parameters. Rejects eta <= beta/alpha,
/// eta > 1 and xi < 1.
EffectiveParameters apply_av_effects(const CityParameters& city, const AvEffects& av);

/// Greenshields space-mean speed v_f (1 - n / n_j_eff). n must lie in [0, n_j_eff].
double speed(double accumulation, const EffectiveParameters& p);

/// Network exit function n v(n) / L, vehicles per hour.
double exit_flow(double accumulation, const EffectiveParameters& p);

/// Instantaneous downtown travel time L / v(n). Requires n < n_j_eff.
double travel_time(double accumulation, const EffectiveParameters& p);

/// Schedule delay cost s(t): beta per hour early, gamma per hour late.
double schedule_delay(double t, const CityParameters& city) noexcept;

} // namespace bathtub
