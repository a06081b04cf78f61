#include "doctest.h"

#include "nonsmooth/certificate_io.hpp"
#include "nonsmooth/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace fs = std::filesystem;
using nonsmooth::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "nonsmooth_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("count-n") {
    auto r = call({"count-n", "--p", "11", "--weight=-1,1,2"});
    CHECK(r.code == 0);
    CHECK(r.out == "1\n");
    r = call({"count-n", "--p", "13", "--weight=-1,0,1", "--format", "json"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["N"] == 3);
    CHECK(j["closed_form"] == 3);
    CHECK(call({"count-n", "--p", "9", "--weight=-1,0,1"}).code == 2);
    CHECK(call({"count-n", "--p", "7", "--weight=0,7,1"}).code == 2);
    CHECK(call({"count-n", "--p", "7", "--weight=a,b"}).code == 2);
    CHECK(call({"count-n", "--p", "7"}).code == 2);
    CHECK(call({"bogus"}).code == 2);
}

TEST_CASE("fixed-points") {
    auto r = call({"fixed-points", "--p", "7", "--weight=-1,0,1"});
    CHECK(r.code == 0);
    CHECK(r.out == "CP2#0[1,0,0] (1,2) reverse (1,5)\n"
                   "CP2#0[0,1,0] (1,6) reverse (1,1)\n"
                   "CP2#0[0,0,1] (1,2) reverse (1,5)\n");
    r = call({"fixed-points", "--p", "7", "--weight=1,2", "--format", "json"});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out).size() == 2);
    r = call({"fixed-points", "--p", "11", "--weight=-1,1,2", "--kind", "cp2bar"});
    CHECK(r.code == 0);
    CHECK(r.out.find("CP2bar#0") != std::string::npos);
}

TEST_CASE("certify, verify and tamper") {
    const auto path = scratch("k3.json");
    auto r = call({"certify", "--b2plus", "3", "--b2minus", "19", "--p", "11", "--strategy",
                   "thm14", "--out", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("dim 6") != std::string::npos);
    const std::string text = slurp(path);
    CHECK(nonsmooth::verify_certificate_json(text).accepted);

    r = call({"verify", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out == "accepted\n");

    auto j = nlohmann::json::parse(text);
    j["index"]["dim"] = 2;
    const auto bad = scratch("k3_bad.json");
    spit(bad, j.dump(2));
    r = call({"verify", bad.string()});
    CHECK(r.code == 1);
    CHECK(r.out.find("IndexMismatch") != std::string::npos);

    spit(bad, "{ not json");
    CHECK(call({"verify", bad.string()}).code == 2);
    CHECK(call({"verify", scratch("missing.json").string()}).code == 2);

    r = call({"verify", path.string(), "--format", "json"});
    CHECK(nlohmann::json::parse(r.out)["accepted"] == true);
}

TEST_CASE("certify on stdout and refusals") {
    auto r = call({"certify", "--b2plus", "3", "--b2minus", "19", "--p", "127"});
    CHECK(r.code == 0);
    CHECK(nonsmooth::verify_certificate_json(r.out).accepted);

    r = call({"certify", "--b2plus", "3", "--b2minus", "19", "--p", "11"});
    CHECK(r.code == 1);
    CHECK(r.err.find("no certificate") != std::string::npos);

    r = call({"certify", "--b2plus", "1", "--b2minus", "1", "--p", "11"});
    CHECK(r.code == 1);
    CHECK(r.err.find("ExcludedManifold") != std::string::npos);

    CHECK(call({"certify", "--b2plus", "3", "--b2minus", "4", "--p", "11"}).code == 2);
    CHECK(call({"certify", "--b2plus", "3", "--b2minus", "19", "--p", "11", "--strategy", "x"}).code == 2);

    r = call({"certify", "--b2plus", "3", "--b2minus", "19", "--p", "11", "--strategy", "bounded",
              "--pool-limit", "5", "--format", "text"});
    CHECK(r.code == 0);
    CHECK(r.out.find("certified") != std::string::npos);
}

TEST_CASE("realize-check") {
    const auto cfg = scratch("cfg.json");
    nlohmann::ordered_json j;
    j["p"] = 11;
    j["manifold"] = {{"b2_plus", 3}, {"b2_minus", 19}, {"spin", true}};
    j["config"] = {{"m", 0}, {"m_prime", 16}, {"r", 0}, {"s", 12}};
    j["cp2_weights"] = nlohmann::json::array();
    j["cp2bar_weights"] = nlohmann::json::array();
    const std::vector<std::vector<int>> cycle = {{-1, 1, 2}, {-1, 2, 3}, {-1, 3, 4}, {-2, 2, 4}};
    for (int i = 0; i < 16; ++i) j["cp2bar_weights"].push_back(cycle[i % 4]);
    j["s4_weights"] = nlohmann::json::array();
    spit(cfg, j.dump());
    auto r = call({"realize-check", cfg.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("matching of 12 pairs") != std::string::npos);

    j["config"]["s"] = 13;
    spit(cfg, j.dump());
    r = call({"realize-check", cfg.string(), "--format", "json"});
    CHECK(r.code == 1);
    CHECK(nlohmann::json::parse(r.out)["realizable"] == false);
}

TEST_CASE("sweep") {
    auto r = call({"sweep", "--b2plus", "2", "--b2minus", "2", "--primes", "5..13", "--strategy",
                   "thm13", "--no-timing"});
    CHECK(r.code == 0);
    CHECK(r.out == "p,found,dim,family,runtime_ms\n"
                   "5,false,0,thm13,\n"
                   "7,true,2,thm13,\n"
                   "11,true,2,thm13,\n"
                   "13,true,2,thm13,\n");
    // Byte-stable without timing.
    CHECK(call({"sweep", "--b2plus", "2", "--b2minus", "2", "--primes", "5..13", "--strategy",
                "thm13", "--no-timing"})
              .out == r.out);
    r = call({"sweep", "--b2plus", "3", "--b2minus", "19", "--primes", "110..130", "--format", "json"});
    CHECK(r.code == 0);
    const auto rows = nlohmann::json::parse(r.out);
    CHECK(rows.size() == 2);
    CHECK(rows[0].contains("runtime_ms"));
    CHECK(call({"sweep", "--b2plus", "2", "--b2minus", "2", "--primes", "13..5"}).code == 2);
    CHECK(call({"sweep", "--b2plus", "2", "--b2minus", "2", "--primes", "5-13"}).code == 2);

    const auto csv = scratch("sweep.csv");
    r = call({"sweep", "--b2plus", "2", "--b2minus", "2", "--primes", "5..13", "--strategy", "thm13",
              "--no-timing", "--out", csv.string()});
    CHECK(r.out.empty());
    CHECK(slurp(csv).rfind("p,found", 0) == 0);
}

TEST_CASE("reproduce") {
    auto r = call({"reproduce", "--no-timing"});
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(r.out.find("all blocks PASS") != std::string::npos);
    CHECK(call({"reproduce", "--no-timing"}).out == r.out);
}

TEST_CASE("help") {
    auto r = call({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("count-n") != std::string::npos);
}

}
