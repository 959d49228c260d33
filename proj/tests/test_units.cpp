#include "doctest.h"

#include <set>

#include "bfk/units.hpp"

using namespace bfk;

namespace {

// Every +-1 mark vector, solved over the rationals.
std::set<std::uint64_t> units_by_hand(const GroupPtr& p) {
    const Matrix& m = marks_matrix(p);
    const std::size_t n = m.nrows();
    std::set<std::uint64_t> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        // x M = v with M lower triangular: back substitution in mpq
        std::vector<mpq_class> x(n);
        bool integral = true;
        for (std::size_t c = n; c-- > 0;) {
            mpq_class v = (mask >> c) & 1 ? -1 : 1;
            for (std::size_t q = c + 1; q < n; ++q)
                v -= x[q] * mpq_class(m.rows[q][c]);
            x[c] = v / mpq_class(m.rows[c][c]);
            x[c].canonicalize();
            integral = integral && x[c].get_den() == 1;
        }
        if (integral)
            out.insert(mask);
    }
    return out;
}

} // namespace

TEST_CASE("units match exhaustive search") {
    for (const char* name : {"C1", "C2", "C4", "C2xC2", "C8", "C4xC2", "D8", "Q8", "C3", "C9", "E9", "D16", "SD16",
                             "Q16", "C2xC2xC2"}) {
        auto p = build_group(name);
        INFO(name);
        const auto us = units(p);
        std::set<std::uint64_t> masks;
        for (const auto& u : us) {
            masks.insert(u.signs);
            // marks are the advertised signs
            const Vec mk = marks(Morphism::from_dense(p, trivial_group(), u.coeffs));
            for (std::size_t r = 0; r < mk.size(); ++r)
                CHECK(mk[r] == (((u.signs >> r) & 1) ? -1 : 1));
        }
        CHECK(masks.size() == us.size());
        CHECK(masks == units_by_hand(p));
        // a group under componentwise product
        for (auto a : masks)
            for (auto b : masks)
                CHECK(masks.count(a ^ b) == 1);
    }
    CHECK(units(trivial_group()).size() == 2);
    CHECK(units(build_group("C2")).size() == 4);
    CHECK(units(build_group("C3")).size() == 2);
    CHECK(units(build_group("X3")).size() == 2);
    CHECK_THROWS_AS(units(build_group("D8xC2")), UnitsError);
}

TEST_CASE("sign exponential candidates") {
    const SignExpImage t = sign_exp_image(trivial_group());
    CHECK(t.units_dim == 1);
    CHECK(t.image_dim == 1);
    CHECK(t.coker_dim() == 0);
    const SignExpImage c2 = sign_exp_image(build_group("C2"));
    CHECK(c2.units_dim == 2);
    CHECK(c2.image_dim == 1);
    CHECK(c2.coker_dim() == 1);
    for (const char* name : {"C4", "D8", "D16", "C2xC2", "Q8"}) {
        INFO(name);
        const SignExpImage s = sign_exp_image(build_group(name));
        CHECK(s.candidates_are_units);
        CHECK(s.image_dim <= s.units_dim);
    }
}

TEST_CASE("coker report") {
    std::vector<GroupPtr> universe;
    for (const char* name : {"C4", "D8", "D16", "SD16", "Q16", "D32", "D8xC2"})
        universe.push_back(build_group(name));
    const auto rows = coker_report(universe);
    REQUIRE(rows.size() == universe.size());
    for (const auto& r : rows) {
        INFO(r.group);
        CHECK(r.matches());
    }
    CHECK(rows[0].d == 0);
    CHECK(rows[2].d == 1);
    CHECK(rows[2].kmod == std::vector<Integer>{2});
    CHECK(rows[5].d == 2);
    CHECK(rows[5].kmod == std::vector<Integer>{2, 2});
    CHECK(rows[2].units_computed);
    CHECK_FALSE(rows[6].units_computed);
}
