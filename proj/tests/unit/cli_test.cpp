#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vsheet/cli.hpp"
#include "vsheet/io.hpp"

using namespace vsheet;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "vsheet");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
    const auto p = std::filesystem::temp_directory_path() / ("vsheet_cli_test_" + name);
    std::ofstream(p) << text;
    return p;
}

}  // namespace

TEST_CASE("grid parsing") {
    CHECK(parse_grid("0:1:0.25") == std::vector<double>{0, 0.25, 0.5, 0.75, 1.0});
    CHECK(parse_grid("0.1:2.0:0.01").size() == 191);
    CHECK(parse_grid("1,2.5,3") == std::vector<double>{1, 2.5, 3});
    CHECK_THROWS_AS(parse_grid(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("1:0:0.1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("0:1:0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("a,b"), std::invalid_argument);
}

TEST_CASE("analyze: confident Case 1, json fields") {
    const Run r = run({"analyze", "--v", "2", "--samples", "200"});
    REQUIRE(r.code == kExitOk);
    const json j = json::parse(r.out);
    CHECK(j["case_id"] == "Case1");
    CHECK(j["regime"] == "StableLoss1");
    CHECK(j["verdict"]["confident"] == true);
    CHECK(j["roots"].size() == 5);
    CHECK(j["checks"]["samples"] == 200);
}

TEST_CASE("exit codes") {
    CHECK(run({"analyze", "--v", "-1"}).code == kExitBadInput);
    CHECK(run({"analyze", "--f12", "0", "--strict-state"}).code == kExitBadInput);
    CHECK(run({"analyze", "--model", "plasma"}).code == kExitBadInput);
    CHECK(run({"analyze", "--bogus"}).code == kExitBadInput);
    CHECK(run({}).code == kExitBadInput);
    CHECK(run({"--help"}).code == kExitOk);
    CHECK(run({"sweep", "--v-grid", ""}).code == kExitBadInput);
    CHECK(run({"sweep", "--model", "mhd"}).code == kExitBadInput);
    CHECK(run({"probe", "--root", "V7"}).code == kExitBadInput);
    CHECK(run({"probe", "--root", "-v", "--data", "1;0"}).code == kExitBadInput);
    CHECK(run({"verify", "--samples", "100", "--tolerance", "1e-30"}).code == kExitInvariant);
    CHECK(run({"analyze", "--out", "/nonexistent-dir/x.json"}).code == kExitIo);
    CHECK(run({"analyze", "--config", "/nonexistent-dir/c.json"}).code == kExitIo);
}

TEST_CASE("config precedence: flag over config over VSHEET_SEED over default") {
    const auto cfg = temp_file("cfg.json", R"({"seed": 11, "samples": 50, "gamma-min": 0.01})");
    const auto seed_of = [](const Run& r) { return json::parse(r.out)["checks"]["seed"].get<int>(); };

    ::unsetenv("VSHEET_SEED");
    CHECK(seed_of(run({"analyze", "--samples", "50"})) == 1);
    ::setenv("VSHEET_SEED", "5", 1);
    CHECK(seed_of(run({"analyze", "--samples", "50"})) == 5);
    const Run c = run({"analyze", "--config", cfg.string()});
    CHECK(seed_of(c) == 11);
    CHECK(json::parse(c.out)["checks"]["samples"] == 50);
    CHECK(seed_of(run({"analyze", "--config", cfg.string(), "--seed", "13"})) == 13);
    ::setenv("VSHEET_SEED", "x", 1);
    CHECK(run({"analyze", "--samples", "50"}).code == kExitBadInput);
    ::unsetenv("VSHEET_SEED");

    const auto bad = temp_file("bad.json", R"({"nope": 1})");
    CHECK(run({"analyze", "--config", bad.string()}).code == kExitBadInput);
    const auto typed = temp_file("typed.json", R"({"samples": "many"})");
    CHECK(run({"analyze", "--config", typed.string()}).code == kExitBadInput);
}

TEST_CASE("outputs are identical across reruns and worker counts") {
    for (const std::vector<std::string>& base :
         {std::vector<std::string>{"analyze", "--v", "1.5", "--samples", "500"},
          std::vector<std::string>{"verify", "--model", "euler", "--samples", "300", "--format", "csv"},
          std::vector<std::string>{"sweep", "--v-grid", "0.5:2:0.25", "--f12-grid", "0,0.5"}}) {
        auto one = base, three = base;
        one.insert(one.end(), {"--workers", "1"});
        three.insert(three.end(), {"--workers", "3"});
        const Run a = run(one), b = run(one), c = run(three);
        CHECK(a.code == kExitOk);
        CHECK(a.out == b.out);
        CHECK(a.out == c.out);
    }
}

TEST_CASE("sweep and probe formats") {
    const Run s = run({"sweep", "--v-grid", "0.1:2.0:0.01"});
    REQUIRE(s.code == kExitOk);
    std::istringstream is(s.out);
    CHECK(read_sweep_csv(is).size() == 191);

    const Run p = run({"probe", "--v", "2", "--root", "v"});
    REQUIRE(p.code == kExitOk);
    std::istringstream ps(p.out);
    const ProbeTable t = read_probe_csv(ps);
    CHECK(std::abs(t.j_sigma - 1.0) <= 0.15);
    CHECK(t.samples.size() == 17);

    const auto out = std::filesystem::temp_directory_path() / "vsheet_cli_test_out.csv";
    CHECK(run({"sweep", "--v-grid", "1,2", "--out", out.string()}).code == kExitOk);
    std::ifstream f(out);
    std::string header;
    std::getline(f, header);
    CHECK(header == kSweepHeader);
}
