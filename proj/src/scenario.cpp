#include "bathtub/scenario.hpp"

#include "bathtub/errors.hpp"
#include "bathtub/perimeter.hpp"
#include "bathtub/report.hpp"
#include "bathtub/shortrun.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <set>

namespace bathtub {

namespace {

using report::Cell;
using report::CsvTable;
using report::JsonObject;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(std::string_view text)
{
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        throw ValidationError("not a number: '" + std::string(text) + "'");
    return value;
}

std::size_t parse_count(std::string_view text)
{
    const double v = parse_number(text);
    if (!(v >= 0.0) || v != std::floor(v) || v > 1e9)
        throw ValidationError("not a non-negative integer: '" + std::string(trim(text)) + "'");
    return static_cast<std::size_t>(v);
}

std::string num(double v) { return report::sig17(v); }

std::string axis_text(const GridAxis& a)
{
    return num(a.lo) + ":" + num(a.hi) + ":" + std::to_string(a.steps);
}

std::string list_text(const std::vector<double>& values)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + num(values[i]);
    return out;
}

struct Field {
    const char* key;
    std::function<void(ScenarioConfig&, std::string_view)> set;
    std::function<std::string(const ScenarioConfig&)> get;
};

#define BATHTUB_NUMBER_FIELD(name, member)                                                       \
    Field                                                                                        \
    {                                                                                            \
        name, [](ScenarioConfig& c, std::string_view v) { c.member = parse_number(v); },         \
            [](const ScenarioConfig& c) { return num(c.member); }                                \
    }

const std::vector<Field>& fields()
{
    static const std::vector<Field> table = {
        BATHTUB_NUMBER_FIELD("free_flow_speed", city.free_flow_speed),
        BATHTUB_NUMBER_FIELD("jam_accumulation", city.jam_accumulation),
        BATHTUB_NUMBER_FIELD("trip_length", city.trip_length),
        BATHTUB_NUMBER_FIELD("walk_time", city.walk_time),
        BATHTUB_NUMBER_FIELD("vot", city.vot),
        BATHTUB_NUMBER_FIELD("early_penalty", city.early_penalty),
        BATHTUB_NUMBER_FIELD("late_penalty", city.late_penalty),
        BATHTUB_NUMBER_FIELD("desired_arrival", city.desired_arrival),
        BATHTUB_NUMBER_FIELD("income", city.income),
        BATHTUB_NUMBER_FIELD("agricultural_rent", city.agricultural_rent),
        BATHTUB_NUMBER_FIELD("housing_share", city.housing_share),
        BATHTUB_NUMBER_FIELD("downtown_area", city.downtown_area),
        BATHTUB_NUMBER_FIELD("suburban_area", city.suburban_area.base),
        BATHTUB_NUMBER_FIELD("suburban_area_slope", city.suburban_area.slope),
        BATHTUB_NUMBER_FIELD("population", city.population),
        BATHTUB_NUMBER_FIELD("vot_factor", av.vot_factor),
        BATHTUB_NUMBER_FIELD("capacity_factor", av.capacity_factor),
        Field{"mode",
              [](ScenarioConfig& c, std::string_view v) {
                  if (v == "ue")
                      c.mode.kind = CommuteMode::Kind::user_equilibrium;
                  else if (v == "perimeter")
                      c.mode.kind = CommuteMode::Kind::perimeter;
                  else
                      throw ValidationError("mode must be 'ue' or 'perimeter'");
              },
              [](const ScenarioConfig& c) { return c.mode.label(); }},
        BATHTUB_NUMBER_FIELD("epsilon", mode.bias),
        Field{"run",
              [](ScenarioConfig& c, std::string_view v) {
                  const auto kind = parse_run_kind(v);
                  if (!kind) throw ValidationError("unknown run kind '" + std::string(v) + "'");
                  c.run = *kind;
              },
              [](const ScenarioConfig& c) { return std::string(to_string(c.run)); }},
        BATHTUB_NUMBER_FIELD("fixed_suburban_population", fixed_suburban_population),
        Field{"eta_grid", [](ScenarioConfig& c, std::string_view v) { c.eta_grid = parse_grid_axis(v); },
              [](const ScenarioConfig& c) { return axis_text(c.eta_grid); }},
        Field{"xi_grid", [](ScenarioConfig& c, std::string_view v) { c.xi_grid = parse_grid_axis(v); },
              [](const ScenarioConfig& c) { return axis_text(c.xi_grid); }},
        Field{"epsilon_list",
              [](ScenarioConfig& c, std::string_view v) { c.bias_list = parse_number_list(v); },
              [](const ScenarioConfig& c) { return list_text(c.bias_list); }},
        Field{"output_dir", [](ScenarioConfig& c, std::string_view v) { c.output_dir = std::string(v); },
              [](const ScenarioConfig& c) { return c.output_dir; }},
        Field{"output_format",
              [](ScenarioConfig& c, std::string_view v) {
                  if (v == "csv")
                      c.format = OutputFormat::csv;
                  else if (v == "json")
                      c.format = OutputFormat::json;
                  else
                      throw ValidationError("output_format must be 'csv' or 'json'");
              },
              [](const ScenarioConfig& c) { return std::string(c.format == OutputFormat::csv ? "csv" : "json"); }},
        Field{"grid_points", [](ScenarioConfig& c, std::string_view v) { c.grid_points = parse_count(v); },
              [](const ScenarioConfig& c) { return std::to_string(c.grid_points); }},
    };
    return table;
}

#undef BATHTUB_NUMBER_FIELD

// --- artifact helpers -------------------------------------------------------

std::string extension(OutputFormat f) { return f == OutputFormat::csv ? ".csv" : ".json"; }

Artifact table_artifact(const std::string& stem, const CsvTable& table, OutputFormat format)
{
    return {stem + extension(format), format == OutputFormat::csv ? table.str() : table.json()};
}

// A one-row summary: csv is header + row, json is a flat object.
class Summary {
public:
    Summary& add(std::string key, Cell value)
    {
        keys_.push_back(key);
        values_.push_back(value);
        json_.set(std::move(key), std::move(value));
        return *this;
    }

    Artifact artifact(const std::string& stem, OutputFormat format) const
    {
        if (format == OutputFormat::json) return {stem + ".json", json_.str()};
        CsvTable t(keys_);
        t.add_row(values_);
        return {stem + ".csv", t.str()};
    }

private:
    std::vector<std::string> keys_;
    std::vector<Cell> values_;
    JsonObject json_;
};

Summary& add_av(Summary& s, const AvEffects& av)
{
    return s.add("eta", av.vot_factor).add("xi", av.capacity_factor);
}

Artifact controlled_trajectory_artifact(const PerimeterEquilibrium& eq, const EffectiveParameters& p,
                                        const ScenarioConfig& config)
{
    const auto tr = build_controlled_trajectory(eq, p, config.grid_points);
    CsvTable table({"t", "n", "q", "T_w", "G", "phase"});
    for (std::size_t i = 0; i < tr.size(); ++i)
        table.add_row({tr.time[i], tr.accumulation[i], tr.queue[i], tr.waiting_time[i], tr.outflow[i],
                       std::string(to_string(tr.phase[i]))});
    return table_artifact("controlled_trajectory", table, config.format);
}

void check_bias(double bias)
{
    if (!(bias > 0.0 && bias < 2.0))
        throw ValidationError("epsilon must lie in (0, 2), got " + num(bias));
}

} // namespace

// --- configuration ----------------------------------------------------------

std::string_view to_string(RunKind kind) noexcept
{
    switch (kind) {
    case RunKind::shortrun: return "shortrun";
    case RunKind::perimeter: return "perimeter";
    case RunKind::longrun: return "longrun";
    case RunKind::tables: return "tables";
    case RunKind::sensitivity: return "sensitivity";
    case RunKind::bias_sweep: return "bias-sweep";
    case RunKind::trajectory: return "trajectory";
    }
    return "?";
}

std::optional<RunKind> parse_run_kind(std::string_view text) noexcept
{
    for (auto kind : {RunKind::shortrun, RunKind::perimeter, RunKind::longrun, RunKind::tables,
                      RunKind::sensitivity, RunKind::bias_sweep, RunKind::trajectory})
        if (to_string(kind) == text) return kind;
    return std::nullopt;
}

GridAxis parse_grid_axis(std::string_view text)
{
    text = trim(text);
    const auto a = text.find(':');
    const auto b = a == std::string_view::npos ? a : text.find(':', a + 1);
    if (b == std::string_view::npos || text.find(':', b + 1) != std::string_view::npos)
        throw ValidationError("grid axis must be 'lo:hi:steps', got '" + std::string(text) + "'");
    GridAxis axis{parse_number(text.substr(0, a)), parse_number(text.substr(a + 1, b - a - 1)),
                  parse_count(text.substr(b + 1))};
    if (axis.steps == 0) throw ValidationError("grid axis needs at least one step");
    if (axis.hi < axis.lo) throw ValidationError("grid axis upper bound below lower bound");
    return axis;
}

std::vector<double> parse_number_list(std::string_view text)
{
    std::vector<double> out;
    text = trim(text);
    while (!text.empty()) {
        const auto comma = text.find(',');
        out.push_back(parse_number(text.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
        if (trim(text).empty()) throw ValidationError("trailing comma in number list");
    }
    if (out.empty()) throw ValidationError("empty number list");
    return out;
}

void apply_setting(ScenarioConfig& config, std::string_view key, std::string_view value)
{
    key = trim(key);
    value = trim(value);
    for (const auto& f : fields()) {
        if (key == f.key) {
            f.set(config, value);
            return;
        }
    }
    throw ValidationError("unknown config key '" + std::string(key) + "'");
}

ScenarioConfig parse_config(std::string_view text)
{
    ScenarioConfig config;
    std::set<std::string, std::less<>> seen;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ValidationError("line " + std::to_string(line_no) + ": expected 'key = value'");
        const auto key = trim(line.substr(0, eq));
        if (!seen.insert(std::string(key)).second)
            throw ValidationError("line " + std::to_string(line_no) + ": duplicate key '" +
                                  std::string(key) + "'");
        try {
            apply_setting(config, key, line.substr(eq + 1));
        } catch (const ValidationError& e) {
            throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return config;
}

std::string emit_config(const ScenarioConfig& config)
{
    std::string out = "# bathtub scenario configuration\n";
    for (const auto& f : fields()) out += std::string(f.key) + " = " + f.get(config) + "\n";
    return out;
}

void validate_config(const ScenarioConfig& config)
{
    // Throws on any city or AV bound.
    const EffectiveParameters p = apply_av_effects(config.city, config.av);
    check_bias(config.mode.bias);
    if (!(config.fixed_suburban_population >= 0.0) || !std::isfinite(config.fixed_suburban_population))
        throw ValidationError("fixed_suburban_population must be >= 0");
    if (config.grid_points < 3) throw ValidationError("grid_points must be >= 3");

    if (config.run == RunKind::sensitivity) {
        const double eta_min = config.city.early_penalty / config.city.vot;
        if (config.eta_grid.steps == 0 || config.xi_grid.steps == 0)
            throw ValidationError("sensitivity grids need at least one step");
        if (!(config.eta_grid.lo > eta_min) || config.eta_grid.hi > 1.0)
            throw ValidationError("eta grid must lie in (beta/alpha, 1] = (" + num(eta_min) + ", 1]");
        if (config.xi_grid.lo < 1.0) throw ValidationError("xi grid must start at >= 1");
        if (config.eta_grid.hi < config.eta_grid.lo || config.xi_grid.hi < config.xi_grid.lo)
            throw ValidationError("grid upper bound below lower bound");
    }
    if (config.run == RunKind::bias_sweep) {
        if (config.bias_list.empty()) throw ValidationError("epsilon list is empty");
        for (double e : config.bias_list) check_bias(e);
    }
    (void)p;
}

// --- runners ----------------------------------------------------------------

const std::vector<ReferenceCase>& reference_cases()
{
    static const std::vector<ReferenceCase> cases = {
        {"base", 1.0, 1.0, 39.8, 30.1, 0.76, 224.0, 27.8, 4.594, 252.2, 26.3, 4.684},
        {"case_i", 0.59, 1.029, 54.8, 26.9, 0.49, 221.2, 31.4, 4.586, 305.5, 27.4, 4.883},
        {"case_ii", 0.76, 1.19, 34.9, 24.8, 0.71, 256.6, 28.1, 4.699, 308.1, 25.4, 4.894},
    };
    return cases;
}

std::vector<Artifact> run_shortrun(const ScenarioConfig& config)
{
    const auto p = apply_av_effects(config.city, config.av);
    const auto eq = solve_shortrun(config.fixed_suburban_population, p);
    Summary s;
    add_av(s, config.av)
        .add("suburban_population", eq.suburban_population)
        .add("theta", eq.theta)
        .add("cost", eq.cost)
        .add("t_s", eq.start)
        .add("t_e", eq.end)
        .add("peak_accumulation", eq.peak_accumulation)
        .add("hypercongested", eq.hypercongested);
    return {s.artifact("shortrun", config.format)};
}

std::vector<Artifact> run_perimeter(const ScenarioConfig& config)
{
    const auto p = apply_av_effects(config.city, config.av);
    const auto eq = solve_perimeter(config.fixed_suburban_population, p, config.mode.bias);
    const auto ue = solve_shortrun(config.fixed_suburban_population, p);
    Summary s;
    add_av(s, config.av)
        .add("epsilon", eq.bias)
        .add("suburban_population", eq.suburban_population)
        .add("theta", eq.theta)
        .add("cost", eq.cost)
        .add("uncontrolled_cost", ue.cost)
        .add("cost_ratio", eq.cost / ue.cost)
        .add("control_inflow", eq.control_inflow)
        .add("controlled_accumulation", eq.controlled_accumulation)
        .add("t_s", eq.start)
        .add("t_s_p", eq.control_start)
        .add("t_e_p", eq.control_end)
        .add("t_e", eq.end)
        .add("peak_queue", peak_queue(eq, p))
        .add("binding", eq.binding);

    return {s.artifact("perimeter", config.format), controlled_trajectory_artifact(eq, p, config)};
}

std::vector<Artifact> run_longrun(const ScenarioConfig& config)
{
    const auto p = apply_av_effects(config.city, config.av);
    const auto sol = solve_longrun(config.city, config.av, config.mode, config.grid_points);
    const auto& eq = sol.equilibrium;
    const auto grad = gradient_checks(sol.profile, p);

    Summary s;
    add_av(s, config.av)
        .add("mode", eq.mode.label())
        .add("epsilon", eq.mode.bias)
        .add("N_d", eq.downtown_population)
        .add("N_s", eq.suburban_population)
        .add("r_s0", eq.rent_premium_edge)
        .add("r_d", eq.downtown_rent_premium)
        .add("x_f", eq.boundary)
        .add("U_star", eq.utility)
        .add("C_bathtub", eq.bathtub_cost)
        .add("theta", eq.theta)
        .add("control_binding", eq.control_binding)
        .add("y_d", eq.downtown_net_income)
        .add("y_s0", eq.suburban_net_income_edge)
        .add("a_d", eq.downtown_lot_size)
        .add("z_d", eq.downtown_consumption)
        .add("z_s0", eq.suburban_consumption_edge)
        .add("population_residual",
             eq.downtown_population + eq.suburban_population - config.city.population)
        .add("max_rent_gradient_error", grad.max_rent_error)
        .add("max_density_gradient_error", grad.max_density_error);

    std::vector<Artifact> out{s.artifact("longrun", config.format)};
    CsvTable table({"x", "rent", "density", "lot_size", "net_income"});
    const auto& pr = sol.profile;
    for (std::size_t i = 0; i < pr.size(); ++i)
        table.add_row({pr.x[i], pr.rent[i], pr.density[i], pr.lot_size[i], pr.net_income[i]});
    out.push_back(table_artifact("profile", table, config.format));
    return out;
}

std::vector<Artifact> run_tables(const ScenarioConfig& config)
{
    CsvTable t1({"case", "eta", "xi", "bathtub_cost", "perimeter_cost", "cost_ratio", "status"});
    CsvTable d1({"case", "quantity", "computed", "reference", "abs_deviation"});
    CsvTable t2({"case", "eta", "xi", "N_s", "C_bathtub", "U_star", "N_s_p", "C_perimeter", "U_star_p",
                 "status"});
    CsvTable d2({"case", "quantity", "computed", "reference", "abs_deviation"});

    auto diff = [](CsvTable& t, const char* name, const char* quantity, double computed, double ref) {
        t.add_row({std::string(name), std::string(quantity), computed, ref, std::abs(computed - ref)});
    };

    for (const auto& ref : reference_cases()) {
        const AvEffects av{ref.eta, ref.xi};
        double c_ue = kNaN, c_pc = kNaN;
        std::string status = "ok";
        try {
            const auto p = apply_av_effects(config.city, av);
            c_ue = solve_shortrun(config.fixed_suburban_population, p).cost;
            c_pc = solve_perimeter(config.fixed_suburban_population, p, 1.0).cost;
        } catch (const std::exception& e) {
            status = e.what();
        }
        t1.add_row({std::string(ref.name), ref.eta, ref.xi, c_ue, c_pc, c_pc / c_ue, status});
        diff(d1, ref.name, "bathtub_cost", c_ue, ref.bathtub_cost);
        diff(d1, ref.name, "perimeter_cost", c_pc, ref.perimeter_cost);
        diff(d1, ref.name, "cost_ratio", c_pc / c_ue, ref.cost_ratio);

        LandUseEquilibrium ue{}, pc{};
        ue.suburban_population = ue.bathtub_cost = ue.utility = kNaN;
        pc = ue;
        status = "ok";
        try {
            const auto p = apply_av_effects(config.city, av);
            ue = solve_land_use(p, CommuteMode::user_equilibrium());
            pc = solve_land_use(p, CommuteMode::perimeter(1.0));
        } catch (const std::exception& e) {
            status = e.what();
        }
        t2.add_row({std::string(ref.name), ref.eta, ref.xi, ue.suburban_population, ue.bathtub_cost,
                    ue.utility, pc.suburban_population, pc.bathtub_cost, pc.utility, status});
        diff(d2, ref.name, "N_s", ue.suburban_population, ref.suburban_ue);
        diff(d2, ref.name, "C_bathtub", ue.bathtub_cost, ref.cost_ue);
        diff(d2, ref.name, "U_star", ue.utility, ref.utility_ue);
        diff(d2, ref.name, "N_s_p", pc.suburban_population, ref.suburban_pc);
        diff(d2, ref.name, "C_perimeter", pc.bathtub_cost, ref.cost_pc);
        diff(d2, ref.name, "U_star_p", pc.utility, ref.utility_pc);
    }

    return {table_artifact("table1", t1, config.format), table_artifact("table1_diff", d1, config.format),
            table_artifact("table2", t2, config.format), table_artifact("table2_diff", d2, config.format)};
}

std::vector<Artifact> run_sensitivity(const ScenarioConfig& config)
{
    const auto cells = sensitivity_grid(config.city, config.eta_grid, config.xi_grid, config.mode.bias);
    CsvTable table({"eta", "xi", "U_ue", "U_pc", "N_s_ue", "N_s_pc", "C_ue", "C_pc", "x_f_ue", "x_f_pc",
                    "status"});
    for (const auto& c : cells) {
        const auto& u = c.uncontrolled;
        const auto& k = c.controlled;
        if (c.ok())
            table.add_row({c.eta, c.xi, u.utility, k.utility, u.suburban_population, k.suburban_population,
                           u.cost, k.cost, u.boundary, k.boundary, c.status});
        else
            table.add_row({c.eta, c.xi, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, c.status});
    }
    return {table_artifact("sensitivity", table, config.format)};
}

std::vector<Artifact> run_bias_sweep(const ScenarioConfig& config)
{
    const auto p = apply_av_effects(config.city, config.av);
    const double n_s = config.fixed_suburban_population;
    CsvTable table({"mode", "epsilon", "cost", "t_s", "t_s_p", "t_e_p", "t_e", "peak_queue", "binding",
                    "status"});

    const auto ue = solve_shortrun(n_s, p);
    table.add_row({std::string("ue"), kNaN, ue.cost, ue.start, kNaN, kNaN, ue.end, 0.0, false,
                   std::string("ok")});

    for (double bias : config.bias_list) {
        try {
            const auto eq = solve_perimeter(n_s, p, bias);
            table.add_row({std::string("perimeter"), bias, eq.cost, eq.start, eq.control_start,
                           eq.control_end, eq.end, peak_queue(eq, p), eq.binding, std::string("ok")});
        } catch (const std::exception& e) {
            table.add_row({std::string("perimeter"), bias, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, false,
                           std::string(e.what())});
        }
    }
    return {table_artifact("bias_sweep", table, config.format)};
}

std::vector<Artifact> run_trajectory(const ScenarioConfig& config)
{
    const auto p = apply_av_effects(config.city, config.av);
    const double n_s = config.fixed_suburban_population;

    if (!config.mode.is_perimeter()) {
        const auto eq = solve_shortrun(n_s, p);
        const auto tr = build_trajectory(eq, p, config.grid_points);
        CsvTable table({"t", "n", "v", "G", "I", "cum_arrivals", "cost_t", "inflow_negative_flag"});
        for (std::size_t i = 0; i < tr.size(); ++i)
            table.add_row({tr.time[i], tr.accumulation[i], tr.speed[i], tr.outflow[i], tr.inflow[i],
                           tr.cumulative_arrivals[i], tr.cost[i], tr.inflow[i] < 0.0});
        return {table_artifact("trajectory", table, config.format)};
    }

    return {controlled_trajectory_artifact(solve_perimeter(n_s, p, config.mode.bias), p, config)};
}

std::vector<Artifact> run_scenario(const ScenarioConfig& config)
{
    validate_config(config);
    switch (config.run) {
    case RunKind::shortrun: return run_shortrun(config);
    case RunKind::perimeter: return run_perimeter(config);
    case RunKind::longrun: return run_longrun(config);
    case RunKind::tables: return run_tables(config);
    case RunKind::sensitivity: return run_sensitivity(config);
    case RunKind::bias_sweep: return run_bias_sweep(config);
    case RunKind::trajectory: return run_trajectory(config);
    }
    throw ValidationError("unknown run kind");
}

} // namespace bathtub
