// Copyright 2026 The qsdc developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "qsdc/serialize.hpp"

using namespace qsdc;
namespace fs = std::filesystem;

namespace {

const char* cli_path() { return std::getenv("QSDC_CLI"); }

int run(const std::string& args) {
    const std::string cmd = std::string(cli_path()) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

fs::path temp_dir() {
    const fs::path dir = fs::temp_directory_path() / "qsdc_cli_test";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) { return read_file(p); }

} // namespace

TEST_CASE("cli is available to the test run", "[cli]") {
    REQUIRE(cli_path() != nullptr);
    REQUIRE(fs::exists(cli_path()));
}

TEST_CASE("witness command emits the reference table", "[cli]") {
    const fs::path out = temp_dir() / "witness.json";
    REQUIRE(run("witness --d 2 --output " + out.string()) == 0);
    const std::string text = slurp(out);
    REQUIRE(text.find("\"chi_crit_sdc_isotropic\": 0.333333333333") != std::string::npos);
    REQUIRE(text.find("\"chi_crit_steering_isotropic\": 0.5") != std::string::npos);
    REQUIRE(text.find("\"alpha_crit_steering_werner\": 0.666666666667") != std::string::npos);
}

TEST_CASE("simulate reports the success probability of a stored protocol", "[cli]") {
    const fs::path dir = temp_dir();
    const ProtocolPair pair = canonical_sdc_protocol(2, 2, 2);
    write_file(dir / "canonical.json", protocol_to_json({pair.family, {pair.povm}}));

    REQUIRE(run("simulate --protocol " + (dir / "canonical.json").string() + " --output " +
                (dir / "canon").string()) == 0);
    const std::string summary = slurp(dir / "canon.summary.json");
    REQUIRE(summary.find("\"p_suc\": 1.0") != std::string::npos);
    REQUIRE(summary.find("\"bound\": 1.0") != std::string::npos);
    const std::string csv = slurp(dir / "canon.behavior.csv");
    REQUIRE(csv.find("b,x,y,p\n") != std::string::npos);
}

TEST_CASE("vn command reports the saturating construction", "[cli]") {
    const fs::path out = temp_dir() / "vn.json";
    REQUIRE(run("vn --d 2 --n 4 --output " + out.string()) == 0);
    const std::string text = slurp(out);
    REQUIRE(text.find("\"v_n\": 6.0") != std::string::npos);
    REQUIRE(text.find("\"saturated\": true") != std::string::npos);
    REQUIRE(text.find("\"purity\": 0.25") != std::string::npos);
}

TEST_CASE("seesaw artifacts re-simulate to the reported value", "[cli]") {
    const fs::path dir = temp_dir();
    const std::string prefix = (dir / "ss").string();
    REQUIRE(run("seesaw --family isotropic --d 2 --chi 0.8 --restarts 2 --seed 5 --output " +
                prefix) == 0);

    // the saved protocol reproduces best_value through the simulate command
    REQUIRE(run("simulate --protocol " + prefix + ".protocol.json --output " +
                (dir / "resim").string()) == 0);
    const std::string result = slurp(prefix + ".result.json");
    const std::string resim = slurp(dir / "resim.summary.json");

    auto grab = [](const std::string& text, const std::string& key) {
        const auto pos = text.find('"' + key + '"');
        REQUIRE(pos != std::string::npos);
        const auto colon = text.find(':', pos);
        return std::strtod(text.c_str() + colon + 1, nullptr);
    };
    const double best = grab(result, "best_value");
    const double replayed = grab(resim, "p_suc");
    REQUIRE(best == Catch::Approx(replayed).margin(1e-8));

    // byte-for-byte reproducibility of every artifact
    const std::string prefix2 = (dir / "ss2").string();
    REQUIRE(run("seesaw --family isotropic --d 2 --chi 0.8 --restarts 2 --seed 5 --output " +
                prefix2) == 0);
    REQUIRE(slurp(prefix + ".result.json") == slurp(prefix2 + ".result.json"));
    REQUIRE(slurp(prefix + ".trace.csv") == slurp(prefix2 + ".trace.csv"));
    REQUIRE(slurp(prefix + ".protocol.json") == slurp(prefix2 + ".protocol.json"));
}

TEST_CASE("sweep emits one row per grid point", "[cli]") {
    const fs::path out = temp_dir() / "sweep.csv";
    REQUIRE(run("sweep --family isotropic --d 2 --param-min 0.2 --param-max 0.4 "
                "--param-step 0.1 --restarts 2 --output " +
                out.string()) == 0);
    const std::string text = slurp(out);
    REQUIRE(text.find("param,p_suc,p_suc_rescaled,classical_bound") != std::string::npos);
    REQUIRE(text.find("\n0.2,") != std::string::npos);
    REQUIRE(text.find("\n0.3,") != std::string::npos);
    REQUIRE(text.find("\n0.4,") != std::string::npos);
}

TEST_CASE("malformed input exits with code two", "[cli]") {
    const fs::path dir = temp_dir();
    REQUIRE(run("simulate --protocol " + (dir / "missing.json").string()) == 2);
    write_file(dir / "broken.json", "{ not json");
    REQUIRE(run("simulate --protocol " + (dir / "broken.json").string()) == 2);
    REQUIRE(run("nonsense-subcommand") == 2);
}

TEST_CASE("invalid protocol content exits with code three", "[cli]") {
    const fs::path dir = temp_dir();
    // valid JSON, invalid state: trace far from one
    write_file(dir / "invalid.json",
               R"({"shared_state":{"d_a":2,"d_b":2,"re":[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]],"im":[[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]},"encodings":[],"povms":[]})");
    REQUIRE(run("simulate --protocol " + (dir / "invalid.json").string()) == 3);
}
