// Copyright 2026 The gmmes Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "gmmes/cli.hpp"
#include "gmmes/io.hpp"

namespace fs = std::filesystem;
using gmmes::ExperimentConfig;
using nlohmann::json;
namespace cli = gmmes::cli;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string> &args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class ScratchDir {
  public:
    ScratchDir() {
        static int counter = 0;
        path_ = fs::temp_directory_path() / ("gmmes_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(path_);
    }
    ~ScratchDir() { fs::remove_all(path_); }
    [[nodiscard]] std::string file(const std::string &name) const { return (path_ / name).string(); }

  private:
    fs::path path_;
};

std::string slurp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("grid parsing") {
    CHECK(cli::parse_grid("0:4:1") == std::vector<double>{0, 1, 2, 3, 4});
    CHECK(cli::parse_grid("1:1:1") == std::vector<double>{1});
    const auto fine = cli::parse_grid("0:16:0.5");
    CHECK(fine.size() == 33);
    CHECK(fine.back() == 16.0);
    CHECK(fine[3] == 1.5);
    CHECK(cli::parse_grid("0:1:0.3").size() == 4);
    for (const char *bad : {"0:4", "0:4:0", "4:0:1", "-1:2:1", "a:b:c", "0:1:1:1", ""}) {
        CHECK_THROWS_AS(cli::parse_grid(bad), cli::UsageError);
    }
}

TEST_CASE("key-value config") {
    ExperimentConfig c;
    cli::apply_config_text("# scan setup\n n = 5\nN_grid = 0:2:1\nconstraint_mode=average\n"
                           "restarts = 3 # trailing comment\nseed = 99\nwarm_start = false\n"
                           "penalty_schedule = 10, 1000\nthreads = 2\n\n",
                           c);
    CHECK(c.n == 5);
    CHECK(c.excitation_grid == std::vector<double>{0, 1, 2});
    CHECK(c.constraint_mode == gmmes::ConstraintMode::Average);
    CHECK(c.restarts == 3);
    CHECK(c.seed == 99);
    CHECK_FALSE(c.warm_start);
    CHECK(c.penalty_schedule == std::vector<double>{10, 1000});
    CHECK(c.threads == 2);
    cli::apply_config_text("N_grid = 0.5, 1.5", c);
    CHECK(c.excitation_grid == std::vector<double>{0.5, 1.5});

    CHECK_THROWS_AS(cli::apply_config_text("colour = blue", c), cli::UsageError);
    CHECK_THROWS_AS(cli::apply_config_text("restarts = many", c), cli::UsageError);
    CHECK_THROWS_AS(cli::apply_config_text("restarts", c), cli::UsageError);
    CHECK_THROWS_AS(cli::apply_config_text("warm_start = maybe", c), cli::UsageError);
}

TEST_CASE("JSON config and manifests") {
    ExperimentConfig c;
    cli::apply_config_text(R"({"n": 3, "restarts": 2})", c);
    CHECK(c.n == 3);
    CHECK(c.restarts == 2);
    CHECK(c.seed == 7);

    ExperimentConfig source;
    source.n = 6;
    source.seed = 1234;
    const json manifest = cli::make_manifest("scan", source, {"a.csv"});
    CHECK(manifest.at("tool") == "gmmes");
    CHECK(manifest.at("command") == "scan");
    CHECK(manifest.at("seed") == 1234);
    CHECK(manifest.at("artifacts") == json::array({"a.csv"}));
    CHECK(manifest.contains("version"));
    CHECK(manifest.contains("timestamp"));
    ExperimentConfig restored;
    cli::apply_config_text(manifest.dump(), restored);
    CHECK(json(restored) == json(source));
}

TEST_CASE("verify passes and reports as JSON") {
    const Run text = run({"verify", "--samples", "200"});
    CHECK(text.code == cli::kExitOk);
    CHECK(text.out.find("PASS twin-beam-purity") != std::string::npos);
    CHECK(text.out.find("FAIL") == std::string::npos);

    const Run machine = run({"verify", "--json", "--samples", "200"});
    CHECK(machine.code == cli::kExitOk);
    const json report = json::parse(machine.out);
    CHECK(report.at("passed") == true);
    for (const auto &check : report.at("checks")) {
        CHECK(check.contains("observed"));
        CHECK(check.at("passed") == true);
    }
}

TEST_CASE("verify names the purity check on an injected fault") {
    const Run r = run({"verify", "--inject-fault", "--samples", "200"});
    CHECK(r.code == cli::kExitCheckFailed);
    CHECK(r.err.find("twin-beam-purity") != std::string::npos);
    CHECK(r.out.find("FAIL twin-beam-purity") != std::string::npos);
}

TEST_CASE("oracle subcommand") {
    const Run r = run({"oracle", "--samples", "200"});
    CHECK(r.code == cli::kExitOk);
    const json report = json::parse(r.out);
    CHECK(report.at("checks").size() >= 3);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({}).code == cli::kExitUsage);
    CHECK(run({"frobnicate"}).code == cli::kExitUsage);
    CHECK(run({"optimize", "--modes", "1"}).code == cli::kExitUsage);
    CHECK(run({"optimize", "--modes", "x"}).code == cli::kExitUsage);
    CHECK(run({"optimize", "--constraint", "total"}).code == cli::kExitUsage);
    CHECK(run({"optimize", "--excitations", "-1"}).code == cli::kExitUsage);
    CHECK(run({"scan", "--grid", "0:4"}).code == cli::kExitUsage);
    CHECK(run({"scan", "--config", "/nonexistent/gmmes.cfg"}).code == cli::kExitUsage);
    CHECK(run({"--help"}).code == cli::kExitOk);
    CHECK(run({"--version"}).code == cli::kExitOk);
}

TEST_CASE("optimize writes a result and a manifest") {
    ScratchDir dir;
    const std::string out = dir.file("n2.json");
    const Run r = run({"optimize", "--modes", "2", "--excitations", "0", "--restarts", "2", "--out", out});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out.find("chi_min = ") != std::string::npos);
    CHECK(r.out.find("feasible = true") != std::string::npos);
    const json result = json::parse(slurp(out));
    CHECK(result.at("best_chi").get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(result.at("report").at("per_partition").size() == 2);
    const json manifest = json::parse(slurp(out + ".manifest.json"));
    CHECK(manifest.at("config").at("restarts") == 2);
    CHECK(manifest.at("artifacts")[0] == out);
}

TEST_CASE("flags override the config file") {
    ScratchDir dir;
    const std::string cfg = dir.file("run.cfg");
    std::ofstream(cfg) << "n = 3\nrestarts = 1\nseed = 5\nN_grid = 0\n";
    const std::string out = dir.file("r.json");
    CHECK(run({"optimize", "--config", cfg, "--restarts", "2", "--out", out}).code == cli::kExitOk);
    const json manifest = json::parse(slurp(out + ".manifest.json"));
    CHECK(manifest.at("config").at("n") == 3);
    CHECK(manifest.at("config").at("restarts") == 2);
    CHECK(manifest.at("seed") == 5);
}

TEST_CASE("scan output and manifest replay") {
    ScratchDir dir;
    const std::string out = dir.file("scan.csv");
    const Run r = run({"scan", "--modes", "2", "--grid", "0:1:0.5", "--restarts", "1", "--out", out});
    CHECK(r.code == cli::kExitOk);
    const std::string csv = slurp(out);
    CHECK(csv.rfind("n,N,chi_min,delta_chi,feasible,restarts,seed\n2,0,", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    CHECK(fs::exists(out + ".jsonl"));

    const std::string replay = dir.file("replay.csv");
    CHECK(run({"scan", "--config", out + ".manifest.json", "--out", replay}).code == cli::kExitOk);
    CHECK(slurp(replay) == csv);
    CHECK(slurp(replay + ".jsonl") == slurp(out + ".jsonl"));

    const Run to_stdout = run({"scan", "--modes", "2", "--grid", "0:1:0.5", "--restarts", "1", "--threads", "3"});
    CHECK(to_stdout.out == csv);
}

} // TEST_SUITE
