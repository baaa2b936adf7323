#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

struct Run {
    int status;
    std::string out;
};

Run cli(const std::string& args) {
    std::string cmd = std::string(ISX_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    int raw = pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

nlohmann::ordered_json parse(const Run& r) { return nlohmann::ordered_json::parse(r.out); }

}  // namespace

TEST_CASE("constant cheeger on the exponential measure") {
    Run r = cli("constant cheeger --measure exponential --no-timestamp");
    CHECK(r.status == 0);
    auto j = parse(r);
    CHECK(std::fabs(j["result"]["value"].get<double>() - 1.0) <= 1e-6);
    CHECK(j["schema"] == "report/v1");
}

TEST_CASE("identical commands give byte-identical reports") {
    const char* commands[] = {"transfer os-to-iso --N power:2 --q 2 --D 1 --no-timestamp",
                              "transfer qls --q 1.5 --D 1 --no-timestamp",
                              "tensor last-thing --profile-from exponential --no-timestamp",
                              "verify mazya-duality --measure exponential --N power:3 --a 0.1 --no-timestamp"};
    for (const char* c : commands) {
        INFO(c);
        Run a = cli(c), b = cli(c);
        CHECK(a.status == 0);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("transfer os-to-iso reports a ledger with citations") {
    auto j = parse(cli("transfer os-to-iso --N power:2 --q 2 --D 1 --no-timestamp"));
    REQUIRE(j["constants_ledger"].size() == 1);
    for (const auto& f : j["constants_ledger"][0]["factors"]) CHECK_FALSE(f["citation"].get<std::string>().empty());
    CHECK(j["constants_ledger"][0]["audit"] == true);
}

TEST_CASE("profile writes csv when the output ends in .csv") {
    std::string path = "cli_profile_test.csv";
    Run r = cli("profile --measure gaussian --out " + path);
    CHECK(r.status == 0);
    std::ifstream f(path);
    std::string header;
    std::getline(f, header);
    CHECK(header == "t,J(t)");
    std::remove(path.c_str());
}

TEST_CASE("verify passes a Maz'ya duality instance") {
    Run r = cli("verify mazya-duality --measure gaussian --N phi:2 --a 0.25 --no-timestamp");
    CHECK(r.status == 0);
    CHECK(parse(r)["result"]["pass"] == true);
}

TEST_CASE("computation errors exit with status 1 and are serialized") {
    Run r = cli("constant closed-form --alpha 0.25 --q 1 --no-timestamp");
    CHECK(r.status == 1);
    CHECK(parse(r)["diagnostics"][0]["error"] == "AlphaTooSmall");
}

TEST_CASE("usage errors exit with status 1") {
    CHECK(cli("profile --measur gaussian").status == 1);
    CHECK(cli("frobnicate").status == 1);
    CHECK(cli("verify no-such-suite").status == 1);
    CHECK(cli("profile --measure laplace --no-timestamp").status == 1);
}

TEST_CASE("a failed verification exits with status 2") {
    // the exponential measure is log-concave, so it is not a counterexample
    Run r = cli("verify counterexample --measure exponential --no-timestamp");
    CHECK(r.status == 2);
    CHECK(parse(r)["result"]["pass"] == false);
}
