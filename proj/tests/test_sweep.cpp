#include "bathtub/sweep.hpp"

#include <doctest.h>

using namespace bathtub;

TEST_CASE("grid axis values")
{
    CHECK(GridAxis{0.0, 1.0, 5}.values() == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
    CHECK(GridAxis{2.0, 3.0, 1}.values() == std::vector<double>{2.0});
}

TEST_CASE("sensitivity grid: parallel equals serial reference")
{
    const CityParameters city;
    const GridAxis eta{0.55, 1.0, 4};
    const GridAxis xi{1.0, 1.3, 3};
    const auto par = sensitivity_grid(city, eta, xi);
    const auto ser = sensitivity_grid_serial(city, eta, xi);
    REQUIRE(par.size() == 12);
    CHECK(par == ser);
    CHECK(par[0].eta == 0.55);
    CHECK(par[1].xi == doctest::Approx(1.15));
    for (const auto& c : par) CHECK(c.ok());
}

TEST_CASE("cost grid: parallel equals serial reference")
{
    const CityParameters city;
    const GridAxis ns{50.0, 600.0, 12};
    const GridAxis xi{1.0, 1.3, 5};
    const auto par = shortrun_cost_grid(city, 0.8, ns, xi);
    CHECK(par == shortrun_cost_grid_serial(city, 0.8, ns, xi));
    for (const auto& c : par) {
        CHECK(c.ok());
        CHECK(c.controlled_cost <= c.uncontrolled_cost + 1e-12);
    }
}

TEST_CASE("failing cells are reported, not thrown")
{
    const CityParameters city;
    const auto cells = sensitivity_grid(city, {0.4, 1.0, 2}, {1.0, 1.0, 1});
    REQUIRE(cells.size() == 2);
    CHECK_FALSE(cells[0].ok());
    CHECK(cells[0].status.find("eta") != std::string::npos);
    CHECK(cells[1].ok());
    CHECK(cells == sensitivity_grid_serial(city, {0.4, 1.0, 2}, {1.0, 1.0, 1}));
}
