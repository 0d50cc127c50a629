#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <string>

namespace {

int run(const std::string& args) {
    std::string cmd = std::string(VERIFY_BIN) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

nlohmann::json load(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    nlohmann::json j;
    in >> j;
    return j;
}

void scrub_ms(nlohmann::json& j) {
    for (auto& rep : j["reports"]) rep.erase("ms");
}

} // namespace

TEST_CASE("exit code contract") {
    CHECK(run("--type A1 --suite serre-sym --serre-k 2") == 0);
    CHECK(run("--type A1 --suite heisenberg --modes 1 --degree 1") == 0);
    // a failing check
    CHECK(run("--type A1 --suite heisenberg --modes 1 --degree 1 --mutate heis-drop-half") == 1);
    // configuration errors
    const std::string bad = "/tmp/qtor_cli_bad.json";
    {
        std::ofstream f(bad);
        f << R"({"matrix": [[2,-1],[0,2]]})";
    }
    CHECK(run("--cartan " + bad) == 2);
    CHECK(run("--cartan /tmp/qtor_cli_missing.json --suite cocycle") == 2);
    CHECK(run("--type A1 --suite no-such-suite") == 2);
    CHECK(run("--type Q7 --suite cocycle") == 2);
    CHECK(run("--suite cocycle") == 2);             // neither --type nor --cartan
    CHECK(run("--type A1 --cartan " + bad) == 2);   // both
    CHECK(run("--type A1 --suite delta --alpha0 1,2,3") == 2); // wrong arity
}

TEST_CASE("explicit matrix from file") {
    const std::string good = "/tmp/qtor_cli_a2.json";
    {
        std::ofstream f(good);
        f << R"({"matrix": [[2,-1],[-1,2]]})";
    }
    CHECK(run("--cartan " + good + " --suite cocycle") == 0);
}

TEST_CASE("report schema and determinism") {
    const std::string r1 = "/tmp/qtor_cli_r1.json", r2 = "/tmp/qtor_cli_r2.json";
    const std::string args =
        "--type A2 --suite heisenberg,cocycle,series-oracle --modes 2 --degree 2 --out ";
    REQUIRE(run(args + r1) == 0);
    REQUIRE(run(args + r2) == 0);
    nlohmann::json a = load(r1), b = load(r2);
    CHECK(a["version"] == "1");
    CHECK(a["config"]["cartan"] == "A2");
    CHECK(a["config"]["modes"] == 2);
    REQUIRE(a["reports"].is_array());
    CHECK(a["reports"].size() == 3);
    CHECK(a["summary"]["pass"] == 3);
    CHECK(a["summary"]["fail"] == 0);
    CHECK(a["summary"]["beyond_paper"] == 0);
    for (auto& rep : a["reports"]) {
        CHECK(rep.contains("suite"));
        CHECK(rep.contains("params"));
        CHECK(rep.contains("status"));
        CHECK(rep.contains("ms"));
    }
    // identical config -> byte-identical JSON modulo the elapsed-time field
    scrub_ms(a);
    scrub_ms(b);
    CHECK(a.dump() == b.dump());
}

TEST_CASE("witness appears in the report") {
    const std::string rp = "/tmp/qtor_cli_rw.json";
    CHECK(run("--type A1 --suite delta --modes 1 --degree 1 --mutate delta-unit-scalar --out " +
              rp) == 1);
    nlohmann::json j = load(rp);
    CHECK(j["summary"]["fail"] == 1);
    bool found = false;
    for (auto& rep : j["reports"])
        if (rep.contains("witness")) {
            found = true;
            CHECK(rep["witness"].contains("modes"));
            CHECK(rep["witness"].contains("state"));
            CHECK(rep["witness"].contains("expected"));
            CHECK(rep["witness"].contains("actual"));
        }
    CHECK(found);
}

TEST_CASE("beyond-paper cases do not affect the exit code") {
    const std::string rp = "/tmp/qtor_cli_bp.json";
    CHECK(run("--type A2 --suite delta --modes 1 --degree 1 --alpha0 auto --out " + rp) == 0);
    nlohmann::json j = load(rp);
    CHECK(j["summary"]["beyond_paper"] == 1);
    CHECK(j["summary"]["fail"] == 0);
    bool labeled = false;
    for (auto& rep : j["reports"])
        if (rep["status"] == "beyond-paper") labeled = true;
    CHECK(labeled);
}

TEST_CASE("thread cap does not change the report") {
    const std::string r1 = "/tmp/qtor_cli_t1.json", r2 = "/tmp/qtor_cli_t2.json";
    REQUIRE(run("--type A1 --suite delta,heisenberg --modes 2 --degree 2 --threads 1 --out " +
                r1) == 0);
    REQUIRE(run("--type A1 --suite delta,heisenberg --modes 2 --degree 2 --threads 4 --out " +
                r2) == 0);
    nlohmann::json a = load(r1), b = load(r2);
    scrub_ms(a);
    scrub_ms(b);
    a.erase("config");
    b.erase("config");
    CHECK(a.dump() == b.dump());
}
