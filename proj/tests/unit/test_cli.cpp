#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const std::string kCli = MOBNET_CLI_PATH;
const std::string kSmall = " --nodes 60 --area 8 --radius 2 --energy 200 --rate 0.3 ";

int run_cli(const std::string& args) {
    const std::string cmd = "'" + kCli + "' " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct ScratchDir {
    fs::path path;
    explicit ScratchDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~ScratchDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("run writes byte-identical outputs for the same seed") {
    ScratchDir a("mobnet_cli_a"), b("mobnet_cli_b");
    REQUIRE(run_cli(kSmall + "--seed 9 --runs 2 --out " + a.path.string() + " run") == 0);
    REQUIRE(run_cli(kSmall + "--seed 9 --runs 2 --jobs 2 --out " + b.path.string() + " run") == 0);
    for (const char* file : {"series.csv", "summary.json"}) {
        REQUIRE(fs::exists(a.path / file));
        CHECK(slurp(a.path / file) == slurp(b.path / file));
    }
    const auto doc = nlohmann::json::parse(slurp(a.path / "summary.json"));
    CHECK(doc.at("config").at("seed") == 9);
    CHECK(doc.at("config").at("n_nodes") == 60);
}

TEST_CASE("sweep writes a table per value") {
    ScratchDir dir("mobnet_cli_sweep");
    REQUIRE(run_cli(kSmall + "--runs 2 --out " + dir.path.string() + " sweep rho 0.2,0.4") == 0);
    const std::string csv = slurp(dir.path / "sweep.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    const auto doc = nlohmann::json::parse(slurp(dir.path / "sweep.json"));
    CHECK(doc.at("result").at("rows").size() == 2);
}

TEST_CASE("a config file supplies flags and the command line overrides it") {
    ScratchDir dir("mobnet_cli_config");
    {
        std::ofstream cfg(dir.path / "net.conf");
        cfg << "nodes=60\narea=8\nradius=2\nenergy=200\nrate=0.3\nseed=4\n";
    }
    REQUIRE(run_cli("--config " + (dir.path / "net.conf").string() + " --seed 5 --out " + dir.path.string() +
                    " run") == 0);
    const auto doc = nlohmann::json::parse(slurp(dir.path / "summary.json"));
    CHECK(doc.at("config").at("seed") == 5);
    CHECK(doc.at("config").at("area_side") == 8.0);
}

TEST_CASE("exit codes") {
    ScratchDir dir("mobnet_cli_errors");
    const std::string out = " --out " + dir.path.string() + " ";
    CHECK(run_cli(kSmall + out + "--alpha 1.5 run") == 2);
    CHECK(run_cli(kSmall + out + "sweep temperature 1,2") == 2);
    CHECK(run_cli(kSmall + out + "sweep rho 0.1,abc") == 2);
    CHECK(run_cli(kSmall + out + "frobnicate") == 2);
    CHECK(run_cli("--nodes 4 --area 2 --radius 2 --capacity 100000 --max-steps 200 --runs 3" + out + "critical-rates 0.01 1") == 2);
    // The classifier needs more steps than a 10-step run provides.
    CHECK(run_cli("--nodes 60 --area 8 --max-steps 10 --rate 0" + out + "run") == 3);

    {
        std::ofstream blocker(dir.path / "file");
        blocker << "x";
    }
    CHECK(run_cli(kSmall + "--out " + (dir.path / "file" / "sub").string() + " run") == 4);
}
