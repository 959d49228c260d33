#include "doctest.h"

#include <set>

#include "bfk/scenarios.hpp"

using namespace bfk;

TEST_CASE("registry covers the required scenarios") {
    std::set<std::string> ids;
    for (const auto& s : scenarios()) {
        CHECK_FALSE(s.statement.empty());
        CHECK(ids.insert(s.id).second);
    }
    for (const char* id : {"factorization", "f_N-idempotents", "compose-oracle-agreement", "delta-nul", "geometric",
                           "y-identity", "brat", "caract", "shift-rational", "mur-kill", "prn1-ranks", "kmod-dims",
                           "coker-dims", "units-report"})
        CHECK_MESSAGE(ids.count(id) == 1, id);
    REQUIRE(find_scenario("mur") != nullptr);
    CHECK(find_scenario("mur")->id == "mur-kill");
    CHECK(find_scenario("nope") == nullptr);
}

TEST_CASE("small scenarios pass and report json") {
    for (const char* id : {"delta-nul", "geometric", "y-identity", "mur-kill", "prn1-ranks", "negative-controls"}) {
        const Scenario* s = find_scenario(id);
        REQUIRE(s);
        const ScenarioResult r = run_scenario(*s, {});
        CHECK_MESSAGE(r.passed, id);
        CHECK_FALSE(r.lines.empty());
        const Json j = report_json(*s, {}, r);
        CHECK(j["scenario"] == id);
        CHECK(j["passed"] == r.passed);
    }
}

TEST_CASE("parameters override defaults") {
    const Scenario* s = find_scenario("factorization");
    REQUIRE(s);
    ScenarioParams prm;
    prm.max_order = 16;
    const ScenarioResult small = run_scenario(*s, prm);
    CHECK(small.passed);
    prm.p = 3;
    prm.max_order = 27;
    const ScenarioResult odd = run_scenario(*s, prm);
    CHECK(odd.passed);
    CHECK(small.details["classes"] != odd.details["classes"]);
}

TEST_CASE("seeded runs are reproducible") {
    const Scenario* s = find_scenario("compose-oracle-agreement");
    REQUIRE(s);
    ScenarioParams prm;
    prm.max_order = 16;
    prm.seed = 7;
    const ScenarioResult a = run_scenario(*s, prm);
    const ScenarioResult b = run_scenario(*s, prm);
    CHECK(a.passed);
    CHECK(a.lines == b.lines);
    CHECK(a.details.dump() == b.details.dump());
}

TEST_CASE("y-identity at p = 3 is over the product cap") {
    const Scenario* s = find_scenario("y-identity");
    REQUIRE(s);
    ScenarioParams prm;
    prm.p = 3;
    CHECK_THROWS_AS(run_scenario(*s, prm), CapExceeded);
}

TEST_CASE("p = 3 only runs") {
    ScenarioParams prm;
    prm.p = 3;
    for (const char* id : {"delta-nul", "geometric", "brat", "caract"}) {
        const ScenarioResult r = run_scenario(*find_scenario(id), prm);
        CHECK_MESSAGE(r.passed, id);
    }
}
