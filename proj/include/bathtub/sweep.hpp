#pragma once

// Grid evaluations over independent parameter cells. Each kernel comes as an
// OpenMP version and a serial reference; both must produce identical cells.

#include "bathtub/longrun.hpp"
#include "bathtub/model.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace bathtub {

/// Inclusive evenly spaced axis; steps is the number of points.
struct GridAxis {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t steps = 1;

    std::vector<double> values() const;

    friend bool operator==(const GridAxis&, const GridAxis&) = default;
};

struct RegimeOutcome {
    double utility = 0.0;
    double suburban_population = 0.0;
    double cost = 0.0;
    double boundary = 0.0;
    double downtown_population = 0.0;

    friend bool operator==(const RegimeOutcome&, const RegimeOutcome&) = default;
};

struct SensitivityCell {
    double eta = 1.0;
    double xi = 1.0;
    RegimeOutcome uncontrolled;
    RegimeOutcome controlled;
    std::string status = "ok";   // "ok" or the failure message

    bool ok() const noexcept { return status == "ok"; }
    friend bool operator==(const SensitivityCell&, const SensitivityCell&) = default;
};

/// Long-run utility surface over (eta, xi), with and without perimeter
/// control (bias eps). Cells are ordered eta-major. Failures land in status.
std::vector<SensitivityCell> sensitivity_grid(const CityParameters& city, const GridAxis& eta,
                                              const GridAxis& xi, double bias = 1.0);
std::vector<SensitivityCell> sensitivity_grid_serial(const CityParameters& city, const GridAxis& eta,
                                                     const GridAxis& xi, double bias = 1.0);

struct CostCell {
    double suburban_population = 0.0;
    double xi = 1.0;
    double uncontrolled_cost = 0.0;
    double controlled_cost = 0.0;
    double uncontrolled_theta = 0.0;
    bool control_binding = false;
    std::string status = "ok";

    bool ok() const noexcept { return status == "ok"; }
    friend bool operator==(const CostCell&, const CostCell&) = default;
};

/// Short-run costs with and without control (eps = 1) over (N_s, xi) at the
/// given VOT factor. Cells are ordered N_s-major.
std::vector<CostCell> shortrun_cost_grid(const CityParameters& city, double eta,
                                         const GridAxis& suburban_population, const GridAxis& xi);
std::vector<CostCell> shortrun_cost_grid_serial(const CityParameters& city, double eta,
                                                const GridAxis& suburban_population,
                                                const GridAxis& xi);

} // namespace bathtub
