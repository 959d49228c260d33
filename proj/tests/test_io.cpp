#include "doctest.h"

#include "bfk/burnside.hpp"
#include "bfk/io.hpp"
#include "bfk/rational.hpp"

using namespace bfk;

namespace {

Subgroup order_two(const GroupPtr& g) {
    for (const auto& c : g->subgroup_classes())
        if (c.rep.size() == 2)
            return c.rep;
    FAIL("no subgroup of order 2");
    return {};
}

// Round trip through text, not just through the Json value.
Json reparse(const Json& j) { return parse_json(j.dump()); }

} // namespace

TEST_CASE("group json round trip") {
    for (const char* name : {"C1", "C4", "D8", "Q16", "C3xC3", "X3"}) {
        auto g = build_group(name);
        const Json j = group_to_json(g);
        CHECK(j["kind"] == "group");
        CHECK(j["order"] == g->order());
        auto back = group_from_json(reparse(j));
        CHECK(back->name() == g->name());
        CHECK(is_isomorphic(*back, *g));
    }
}

TEST_CASE("group json rejects inconsistent fields") {
    Json j = group_to_json(build_group("D8"));
    j["order"] = 16;
    CHECK_THROWS_AS(group_from_json(j), JsonError);
    try {
        group_from_json(j);
    } catch (const JsonError& e) {
        CHECK(e.path() == "$.order");
    }
    Json k = group_to_json(build_group("D8"));
    k["kind"] = "morphism";
    CHECK_THROWS_AS(group_from_json(k), JsonError);
    Json u = group_to_json(build_group("D8"));
    u["name"] = "Z7";
    CHECK_THROWS_AS(group_from_json(u), JsonError);
}

TEST_CASE("delta round trips as a Burnside element and as a morphism") {
    const DeltaContext& ctx = delta_context(2);
    const Json b = burnside_to_json(ctx.delta);
    CHECK(b["kind"] == "burnside_element");
    CHECK(burnside_from_json(reparse(b)) == ctx.delta);
    const Json m = morphism_to_json(ctx.delta);
    CHECK(m["source"] == "C1");
    CHECK(morphism_from_json(reparse(m)) == ctx.delta);
    const Morphism op = opposite(ctx.delta);
    CHECK(morphism_from_json(reparse(morphism_to_json(op))) == op);
}

TEST_CASE("restriction from C4 to C2 round trips") {
    auto c4 = build_group("C4");
    const Morphism r = res(c4, order_two(c4));
    const Json j = morphism_to_json(r);
    CHECK(j["source"] == "C4");
    CHECK(j["terms"].size() == 1);
    const Morphism back = morphism_from_json(reparse(j));
    CHECK(back == r);
    // still behaves like restriction: Res(C4/1) = 2 C2/1
    const Morphism x = compose(back, Morphism::burnside(c4, c4->trivial()));
    CHECK(x == Morphism::burnside(back.target(), back.target()->trivial(), 2));
}

TEST_CASE("corrupted class index is rejected with its path") {
    auto c4 = build_group("C4");
    Json j = morphism_to_json(res(c4, order_two(c4)));
    j["terms"].push_back({{"class", 0}, {"coeff", 1}});
    j["terms"][1]["class"] = 999;
    try {
        morphism_from_json(j);
        FAIL("accepted a bad class index");
    } catch (const JsonError& e) {
        CHECK(e.path() == "$.terms[1].class");
        CHECK(std::string(e.what()).find("out of range") != std::string::npos);
    }
    j["terms"][1]["class"] = -1;
    CHECK_THROWS_AS(morphism_from_json(j), JsonError);
    j["terms"][1]["class"] = "zero";
    CHECK_THROWS_AS(morphism_from_json(j), JsonError);
}

TEST_CASE("missing fields and bad syntax") {
    Json j = morphism_to_json(Morphism::identity(build_group("C2")));
    j.erase("terms");
    try {
        morphism_from_json(j);
        FAIL("accepted a morphism without terms");
    } catch (const JsonError& e) {
        CHECK(e.path() == "$");
    }
    CHECK_THROWS_AS(parse_json("{\"kind\": "), JsonError);
    Json b = burnside_to_json(Morphism::burnside(build_group("C2"), build_group("C2")->trivial()));
    b["terms"][0]["coeff"] = "12x";
    CHECK_THROWS_AS(burnside_from_json(b), JsonError);
}

TEST_CASE("large coefficients survive as strings") {
    auto c2 = build_group("C2");
    const Integer big("123456789012345678901234567890");
    const Morphism x = Morphism::burnside(c2, c2->whole(), big);
    const Json j = burnside_to_json(x);
    CHECK(j["terms"][0]["coeff"].is_string());
    CHECK(burnside_from_json(reparse(j)) == x);
    CHECK(integer_from_json(integer_to_json(Integer(-7)), "$") == -7);
}

TEST_CASE("coefficients on the same class add up") {
    auto c2 = build_group("C2");
    Json j = burnside_to_json(Morphism::burnside(c2, c2->trivial(), 3));
    j["terms"].push_back(j["terms"][0]);
    j["terms"][1]["coeff"] = -1;
    CHECK(burnside_from_json(j) == Morphism::burnside(c2, c2->trivial(), 2));
}
