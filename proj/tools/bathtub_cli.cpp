// bathtub: command-line front end for the scenario runners.
//
//   bathtub <subcommand> [--config file] [--out dir] [--format csv|json] [--grid n]
//                        [--eta a:b:steps | value] [--xi a:b:steps | value]
//                        [--epsilon e1,e2,...] [--mode ue|perimeter] [--set key=value ...]
//
// Exit codes: 0 success, 2 validation error, 3 solver failure.

#include "bathtub/errors.hpp"
#include "bathtub/scenario.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;

struct Options {
    std::string config_path;
    std::string out_dir;
    std::string format;
    std::size_t grid = 0;
    std::string eta;
    std::string xi;
    std::string epsilon;
    std::string mode;
    std::vector<std::string> overrides;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw bathtub::ValidationError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// A bare number sets the scalar factor; a:b:steps sets the sweep axis.
void apply_axis_flag(bathtub::ScenarioConfig& c, const std::string& text, const char* scalar_key,
                     const char* grid_key)
{
    if (text.empty()) return;
    bathtub::apply_setting(c, text.find(':') == std::string::npos ? scalar_key : grid_key, text);
}

bathtub::ScenarioConfig build_config(const Options& o, bathtub::RunKind run)
{
    auto c = o.config_path.empty() ? bathtub::ScenarioConfig{} : bathtub::parse_config(read_file(o.config_path));
    c.run = run;
    for (const auto& kv : o.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw bathtub::ValidationError("--set expects key=value, got '" + kv + "'");
        bathtub::apply_setting(c, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (!o.out_dir.empty()) c.output_dir = o.out_dir;
    if (!o.format.empty()) bathtub::apply_setting(c, "output_format", o.format);
    if (o.grid != 0) c.grid_points = o.grid;
    if (!o.mode.empty()) bathtub::apply_setting(c, "mode", o.mode);
    apply_axis_flag(c, o.eta, "vot_factor", "eta_grid");
    apply_axis_flag(c, o.xi, "capacity_factor", "xi_grid");
    if (!o.epsilon.empty()) {
        c.bias_list = bathtub::parse_number_list(o.epsilon);
        c.mode.bias = c.bias_list.front();
    }
    return c;
}

void write_artifacts(const std::string& dir, const std::vector<bathtub::Artifact>& artifacts)
{
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw bathtub::ValidationError("cannot create output directory '" + dir + "': " + ec.message());
    for (const auto& a : artifacts) {
        const fs::path path = fs::path(dir) / a.filename;
        std::ofstream out(path, std::ios::binary);
        out << a.content;
        if (!out) throw bathtub::ValidationError("cannot write '" + path.string() + "'");
        std::cout << path.string() << '\n';
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Bathtub congestion and land-use equilibrium with autonomous vehicles"};
    app.require_subcommand(1);
    Options opt;

    const std::vector<std::pair<bathtub::RunKind, const char*>> commands = {
        {bathtub::RunKind::shortrun, "Short-run equilibrium at a fixed suburban population"},
        {bathtub::RunKind::perimeter, "Short-run equilibrium under perimeter control, with queue profile"},
        {bathtub::RunKind::longrun, "Long-run land-use equilibrium and spatial profile"},
        {bathtub::RunKind::tables, "Reference cases with deviations from published values"},
        {bathtub::RunKind::sensitivity, "Utility surface over the (eta, xi) grid"},
        {bathtub::RunKind::bias_sweep, "Perimeter control cost over a list of bias values"},
        {bathtub::RunKind::trajectory, "Time series of the rush hour"},
    };

    std::vector<std::pair<CLI::App*, bathtub::RunKind>> subs;
    for (const auto& [kind, help] : commands) {
        auto* sub = app.add_subcommand(std::string(bathtub::to_string(kind)), help);
        sub->add_option("--config", opt.config_path, "Scenario file (key = value)");
        sub->add_option("--out", opt.out_dir, "Output directory");
        sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--grid", opt.grid, "Sample points for profiles and time series");
        sub->add_option("--eta", opt.eta, "VOT factor, or a:b:steps axis for sensitivity");
        sub->add_option("--xi", opt.xi, "Capacity factor, or a:b:steps axis for sensitivity");
        sub->add_option("--epsilon", opt.epsilon, "Comma-separated control bias values");
        sub->add_option("--mode", opt.mode, "ue or perimeter")->check(CLI::IsMember({"ue", "perimeter"}));
        sub->add_option("--set", opt.overrides, "Override a config key (key=value)");
        subs.emplace_back(sub, kind);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    bathtub::RunKind run = bathtub::RunKind::tables;
    for (const auto& [sub, kind] : subs)
        if (sub->parsed()) run = kind;

    try {
        const auto config = build_config(opt, run);
        const auto artifacts = bathtub::run_scenario(config);
        write_artifacts(config.output_dir, artifacts);
    } catch (const bathtub::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const bathtub::SolverError& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kExitSolver;
    }
    return 0;
}
