#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int status = -1;
    std::string out;

    nlohmann::json result() const {
        const auto pos = out.rfind("RESULT ");
        REQUIRE(pos != std::string::npos);
        return nlohmann::json::parse(out.substr(pos + 7, out.find('\n', pos) - pos - 7));
    }
    bool has(const std::string& text) const { return out.find(text) != std::string::npos; }
};

Run run(const std::string& args) {
    const std::string cmd = std::string(RAINBOWCC_CLI) + " " + args + " 2>&1";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    while (auto n = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string data(const std::string& name) { return std::string(RAINBOWCC_DATA_DIR) + "/" + name; }

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "rainbowcc_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("build subcommands") {
    auto r = run("build man --K 4 --t 2");
    CHECK(r.status == 0);
    CHECK(r.has("K=4 F=6 M/N=0.5"));
    CHECK(r.result()["params"]["rate"] == "2/3");

    r = run("build rainbow-3ap --explicit " + data("ap_m4.json"));
    CHECK(r.status == 0);
    CHECK(r.has("K=4 F=4 colors=6"));
    CHECK(r.has("strict_rainbow=no"));

    r = run("build pda-import " + data("bad.pda"));
    CHECK(r.status == 1);
    CHECK(r.result()["error"] == "PDA_INVALID");

    r = run("build linear-block --generator '1,0,1;0,1,1' --q 2");
    CHECK(r.status == 0);
    CHECK(r.result()["kind"] == "linear-block");

    r = run("build man --K 4 --t 4");
    CHECK(r.status == 1);
    CHECK(r.result()["error"] == "RANGE");
}

TEST_CASE("scheme files feed simulate") {
    const auto path = scratch("cyclic4.scheme.json").string();
    auto r = run("build cyclic --n 4 -o " + path);
    REQUIRE(r.status == 0);
    const auto csv = scratch("cyclic4.csv").string();
    r = run("simulate " + path + " --N 4 --policy exhaustive --csv " + csv);
    CHECK(r.status == 0);
    CHECK(r.has("R=0.75"));
    CHECK(r.result()["all_pass"] == true);
    std::ifstream in(csv);
    std::size_t lines = 0;
    for (std::string line; std::getline(in, line);) ++lines;
    CHECK(lines == 257);

    r = run("simulate " + path + " --N 1");
    CHECK(r.status == 0);

    r = run("validate " + path);
    CHECK(r.status == 0);
    CHECK(r.has("valid cyclic"));
}

TEST_CASE("bad input exits with code 2") {
    const auto path = scratch("corrupt.json").string();
    std::ofstream(path) << "{\"A\": [1,";
    auto r = run("simulate " + path + " --N 2");
    CHECK(r.status == 2);
    CHECK(r.result()["error"] == "PARSE");
    CHECK(run("").status == 2);
    CHECK(run("build man --K x --t 1").status == 2);
}

TEST_CASE("mapreduce subcommand") {
    auto r = run("mapreduce " + data("cyclic4.json") + " --compare");
    CHECK(r.status == 0);
    CHECK(r.has("r=2 L=0.25"));
    CHECK(r.has("node 1 sends"));
    const auto j = r.result();
    CHECK(j["m_prime"] == 4);
    CHECK(j["reduce_pass"] == true);

    r = run("mapreduce --cyclic 6");
    CHECK(r.status == 0);
    CHECK(r.has("L=0.1389"));

    r = run("mapreduce --cyclic 4 --Q 6");
    CHECK(r.status == 1);
    CHECK(r.result()["error"] == "DIVISIBILITY");

    r = run("mapreduce " + data("full_storage.json"));
    CHECK(r.status == 0);
    CHECK(r.has("L=0"));
}

TEST_CASE("bounds and search") {
    auto r = run("bounds --K 4 --N 4 --M 2 --r 2");
    CHECK(r.status == 0);
    const auto j = r.result();
    CHECK(j["cutset"]["exact"] == "1/2");
    CHECK(j["man"]["exact"] == "2/3");
    CHECK(j["cdc"]["exact"] == "1/4");

    r = run("search-rainbow --m 4 --strategy exact");
    CHECK(r.status == 0);
    CHECK(r.result()["n"] == 8);

    r = run("search-rainbow --m 20 --strategy exact");
    CHECK(r.status == 1);
    CHECK(r.result()["error"] == "DOMAIN_TOO_LARGE");

    r = run("--seed 3 simulate " + data("cyclic4.json") + " --N 3 --policy random --count 5");
    CHECK(r.status == 0);
    CHECK(r.result()["seed"] == 3);
}
