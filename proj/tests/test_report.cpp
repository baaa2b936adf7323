#include "doctest.h"

#include <cmath>

#include "isoperimetrix/hierarchy.hpp"
#include "isoperimetrix/report.hpp"

using namespace isx;

TEST_CASE("report keys come in a fixed order") {
    Report r;
    r.command = {"constant", "cheeger"};
    r.result["value"] = 1.0;
    Json j = Json::parse(render_report(r, {}, false));
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"schema", "version", "command", "config", "config_hash", "inputs",
                                           "result", "constants_ledger", "diagnostics"});
    CHECK(j["schema"] == "report/v1");
    Json stamped = Json::parse(render_report(r, {}, true));
    CHECK(stamped.contains("generated_at"));
}

TEST_CASE("rendering without a timestamp is deterministic") {
    Report r;
    r.command = {"x"};
    r.result["pi"] = M_PI;
    CHECK(render_report(r, {}, false) == render_report(r, {}, false));
}

TEST_CASE("config hash tracks every setting") {
    QuadratureConfig a, b;
    CHECK(config_hash(a) == config_hash(b));
    b.max_subdivisions += 1;
    CHECK(config_hash(a) != config_hash(b));
    CHECK(config_hash(a).size() == 16);
}

TEST_CASE("non-finite numbers become strings") {
    CHECK(number(kInf) == "inf");
    CHECK(number(-kInf) == "-inf");
    CHECK(number(std::nan("")) == "nan");
    CHECK(number(0.5) == 0.5);
}

TEST_CASE("ledger json carries factors, citations and the audit") {
    ConstantLedger l;
    l.instance = "demo";
    l.seed = l.lo = l.hi = 2.0;
    l.apply({"quarter", 0.25, "Prop Capq-Lq"});
    Json j = ledger_to_json(l);
    CHECK(j["lo"] == 0.5);
    CHECK(j["factors"][0]["citation"] == "Prop Capq-Lq");
    CHECK(j["audit"] == true);
}
