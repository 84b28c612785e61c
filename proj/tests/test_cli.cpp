#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args)
{
    const std::string cmd = std::string(BATHTUB_CLI) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name)
{
    const auto dir = fs::temp_directory_path() / ("bathtub_cli_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string read(const fs::path& p)
{
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("successful runs write their artifacts")
{
    const auto out = scratch("ok");
    CHECK(run("tables --out " + out.string()) == 0);
    CHECK(fs::exists(out / "table1.csv"));
    CHECK(fs::exists(out / "table2_diff.csv"));

    CHECK(run("bias-sweep --epsilon 0.7,1,1.3 --format json --out " + out.string()) == 0);
    CHECK(read(out / "bias_sweep.json").front() == '[');

    CHECK(run("trajectory --mode perimeter --grid 21 --out " + out.string()) == 0);
    const auto traj = read(out / "controlled_trajectory.csv");
    CHECK(std::count(traj.begin(), traj.end(), '\n') == 22);

    CHECK(run("sensitivity --eta 0.6:1:2 --xi 1:1.2:2 --out " + out.string()) == 0);
    const auto sens = read(out / "sensitivity.csv");
    CHECK(std::count(sens.begin(), sens.end(), '\n') == 5);
    fs::remove_all(out);
}

TEST_CASE("config file and overrides")
{
    const auto out = scratch("cfg");
    fs::create_directories(out);
    {
        std::ofstream cfg(out / "scenario.txt");
        cfg << "# test scenario\nfixed_suburban_population = 150\nvot_factor = 0.8\n";
    }
    CHECK(run("shortrun --config " + (out / "scenario.txt").string() + " --set capacity_factor=1.1 --out " +
              out.string()) == 0);
    const auto csv = read(out / "shortrun.csv");
    CHECK(csv.find("\n0.800000,1.100000,150.000000,") != std::string::npos);
    fs::remove_all(out);
}

TEST_CASE("validation errors exit with 2")
{
    const auto out = scratch("bad");
    CHECK(run("shortrun --eta 0.3 --out " + out.string()) == 2);
    CHECK(run("bias-sweep --epsilon 0.5,2.5 --out " + out.string()) == 2);
    CHECK(run("shortrun --set nonsense=1 --out " + out.string()) == 2);
    CHECK(run("shortrun --config /nonexistent/file --out " + out.string()) == 2);
    CHECK(run("shortrun --format xml") == 2);
    CHECK(run("frobnicate") == 2);
    CHECK(run("") == 2);
    CHECK(run("sensitivity --eta 0.4:1:3 --out " + out.string()) == 2);
    fs::remove_all(out);
}

TEST_CASE("solver failures exit with 3")
{
    // One resident fits downtown at the agricultural rent, so no positive
    // suburban rent premium exists.
    const auto out = scratch("solver");
    CHECK(run("longrun --set population=1 --out " + out.string()) == 3);
    fs::remove_all(out);
}
