#include "bathtub/errors.hpp"
#include "bathtub/perimeter.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace bathtub;

namespace {

const EffectiveParameters kBase = apply_av_effects(CityParameters{}, {});

} // namespace

TEST_CASE("control inflow equals the exit flow at the held accumulation")
{
    for (double eps : {0.5, 1.0, 1.5}) {
        CHECK(control_inflow(kBase, eps) == doctest::Approx(exit_flow(eps * kBase.jam / 2.0, kBase)));
    }
    CHECK(control_inflow(kBase, 1.0) == doctest::Approx(kBase.capacity()));
    CHECK_THROWS_AS(control_inflow(kBase, 0.0), ValidationError);
    CHECK_THROWS_AS(control_inflow(kBase, 2.0), ValidationError);
}

TEST_CASE("controlled equilibrium at eps = 1")
{
    const auto eq = solve_perimeter(300.0, kBase, 1.0);
    REQUIRE(eq.binding);
    CHECK(eq.cost == doctest::Approx(30.137056).epsilon(1e-7));
    CHECK(eq.controlled_accumulation == doctest::Approx(50.0));
    CHECK(eq.start < eq.control_start);
    CHECK(eq.control_start < 0.0);
    CHECK(eq.control_end > 0.0);
    CHECK(eq.control_end < eq.end);
    // Demand splits between the metered window and the free-flowing shoulders.
    CHECK(uncontrolled_arrivals(eq, kBase) + controlled_arrivals(eq) == doctest::Approx(300.0));
    CHECK(cost_ratio(300.0, kBase) == doctest::Approx(0.757262).epsilon(1e-5));
}

TEST_CASE("queue rises and falls at the stated slopes")
{
    const auto eq = solve_perimeter(300.0, kBase, 1.0);
    const double ip = eq.control_inflow;
    CHECK(queue_at(eq.control_start, eq, kBase) == doctest::Approx(0.0));
    CHECK(queue_at(eq.control_end, eq, kBase) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(queue_at(eq.control_start - 0.1, eq, kBase) == 0.0);
    const double t = -1.0, h = 1e-4;
    CHECK((queue_at(t + h, eq, kBase) - queue_at(t, eq, kBase)) / h == doctest::Approx(ip * 10.0 / 20.0));
    CHECK((queue_at(0.2 + h, eq, kBase) - queue_at(0.2, eq, kBase)) / h == doctest::Approx(-ip * 40.0 / 20.0));
    CHECK(peak_queue(eq, kBase) == doctest::Approx(queue_at(0.0, eq, kBase)));
    const auto qp = queue_profile(eq, kBase, 501);
    REQUIRE(qp.size() == 501);
    for (std::size_t i = 0; i < qp.size(); ++i)
        CHECK(qp.waiting_time[i] == doctest::Approx(qp.queue[i] / ip));
}

TEST_CASE("binding test agrees with the uncontrolled peak")
{
    for (double eps : {0.7, 1.0, 1.3}) {
        for (double ns = 5.0; ns <= 600.0; ns += 5.0) {
            const auto ue = solve_shortrun(ns, kBase);
            const bool peak_above = ue.peak_accumulation > eps * kBase.jam / 2.0 + 1e-9;
            const bool peak_below = ue.peak_accumulation < eps * kBase.jam / 2.0 - 1e-9;
            const auto pc = solve_perimeter(ns, kBase, eps);
            if (peak_above) CHECK(pc.binding);
            if (peak_below) CHECK_FALSE(pc.binding);
        }
    }
}

TEST_CASE("non-binding control reproduces the uncontrolled equilibrium")
{
    const auto ue = solve_shortrun(40.0, kBase);
    REQUIRE(ue.theta < 2.0);
    const auto pc = solve_perimeter(40.0, kBase, 1.0);
    CHECK_FALSE(pc.binding);
    CHECK(pc.cost == doctest::Approx(ue.cost));
    CHECK(pc.control_start == pc.control_end);
    CHECK(peak_queue(pc, kBase) == 0.0);
    CHECK(queue_profile(pc, kBase).empty());
}

TEST_CASE("controlled cost matches the capped discrete oracle")
{
    const oracle::Network net{};
    for (double eps : {0.6, 1.0, 1.4}) {
        for (double ns : {150.0, 300.0, 450.0}) {
            const auto pc = solve_perimeter(ns, kBase, eps);
            const auto ref = oracle::discrete_equilibrium(net, ns, 1.0 / 3600.0, eps);
            CHECK(pc.cost == doctest::Approx(ref.cost).epsilon(1e-3));
        }
    }
}

TEST_CASE("controlled trajectory phases and continuity")
{
    const auto eq = solve_perimeter(300.0, kBase, 1.0);
    const auto tr = build_controlled_trajectory(eq, kBase, 2001);
    REQUIRE(tr.size() == 2001);
    CHECK(tr.phase.front() == Phase::pre);
    CHECK(tr.phase.back() == Phase::post);
    for (std::size_t i = 0; i < tr.size(); ++i) {
        if (tr.phase[i] == Phase::control) {
            CHECK(tr.accumulation[i] == doctest::Approx(50.0));
            CHECK(tr.outflow[i] == doctest::Approx(eq.control_inflow));
        } else {
            CHECK(tr.queue[i] == 0.0);
            CHECK(tr.accumulation[i] <= 50.0 + 1e-9);
        }
    }
    CHECK(to_string(Phase::control) == "control");
}

TEST_CASE("eps = 1 minimises the controlled cost")
{
    const double best = solve_perimeter(300.0, kBase, 1.0).cost;
    for (double eps = 0.55; eps < 1.96; eps += 0.05) {
        if (std::abs(eps - 1.0) < 1e-9) continue;
        CHECK(solve_perimeter(300.0, kBase, eps).cost > best);
    }
}
