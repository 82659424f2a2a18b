#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "henon/checks.hpp"
#include "henon/cli.hpp"

using henon::cli::RunConfig;
namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
    std::string cmd = std::string(HENON_CLI_EXE) + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    fs::path d = fs::temp_directory_path() / ("henon_cli_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("config round trip") {
    RunConfig c;
    c.set("p", "x2-1");
    c.set("a_re", "0.01");
    c.set("nu", "33");
    RunConfig back = RunConfig::parse(c.to_text());
    CHECK(back == c);
    CHECK(back.get("p") == "x2-1");
    CHECK(back.number("a_re") == 0.01);
    CHECK(back.integer("nu") == 33);
    CHECK(RunConfig::known("seed"));
    CHECK_FALSE(RunConfig::known("tol"));
    CHECK(RunConfig::parse("# comment\np = x2\n\n") .get("p") == "x2");
}

TEST_CASE("config rejection") {
    CHECK_THROWS(RunConfig::parse("bogus = 1"));
    CHECK_THROWS(RunConfig::parse("nu = abc"));
    CHECK_THROWS(RunConfig::parse("no equals sign"));
    RunConfig c;
    CHECK_THROWS(c.set("nope", "1"));
}

TEST_CASE("suites") {
    CHECK(henon::checks::check_count() == 10);
    CHECK(henon::checks::suite_checks("all").size() == 10);
    CHECK(henon::checks::suite_checks("core") == std::vector<int>{1, 2});
    CHECK_THROWS(henon::checks::suite_checks("nosuch"));
}

TEST_CASE("exit codes and reports") {
    fs::path d = scratch("exit");
    CHECK(run_cli("verify --suite core --out " + d.string()) == 0);
    CHECK(run_cli("verify --suite nosuch --out " + d.string()) == 2);
    CHECK(run_cli("critlocus --bogus 1 --out " + d.string()) == 2);
    CHECK(run_cli("frobnicate") == 2);
    std::string cmd = std::string(HENON_CLI_EXE) + " critlocus --p x2-1 --a 0.01 --tube-radius 1e-6 --out " +
                      (d / "tube").string() + " > " + (d / "report.json").string();
    int rc = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(rc) == 1);
    auto j = nlohmann::json::parse(slurp(d / "report.json"));
    CHECK(j["status"] == "error");
    CHECK(j["exit_code"] == 1);
    CHECK(j["kind"] == "LeftTube");

    cmd = std::string(HENON_CLI_EXE) + " verify --suite nosuch > " + (d / "bad.json").string();
    rc = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(rc) == 2);
    CHECK(nlohmann::json::parse(slurp(d / "bad.json"))["exit_code"] == 2);
}

TEST_CASE("deterministic output") {
    fs::path a = scratch("det_a"), b = scratch("det_b");
    REQUIRE(run_cli("critlocus --p x2-1 --a 0.01 --out " + a.string()) == 0);
    REQUIRE(run_cli("critlocus --p x2-1 --a 0.01 --out " + b.string()) == 0);
    int files = 0;
    for (auto& e : fs::directory_iterator(a)) {
        CHECK(slurp(e.path()) == slurp(b / e.path().filename()));
        ++files;
    }
    CHECK(files > 0);
}

TEST_CASE("dumped config reloads") {
    fs::path d = scratch("dump");
    std::string cmd = std::string(HENON_CLI_EXE) + " critlocus --p x2+0.1 --a 0.02 --dump-config > " +
                      (d / "run.cfg").string();
    REQUIRE(std::system(cmd.c_str()) == 0);
    RunConfig c = RunConfig::load((d / "run.cfg").string());
    CHECK(c.get("p") == "x2+0.1");
    CHECK(c.number("a_re") == 0.02);
}
