#include "bfk/units.hpp"

#include <algorithm>

#include "bfk/genetics.hpp"
#include "bfk/rational.hpp"

namespace bfk {

namespace {

// Fills x from the top class down; m is lower triangular with m[q][r] != 0 only for r <= q.
void search(const Matrix& m, std::size_t n, std::size_t r, std::uint64_t signs, Vec& x,
            std::vector<UnitElement>& out) {
    if (r == 0) {
        out.push_back({x, signs});
        return;
    }
    const std::size_t c = r - 1;
    Integer rest = 0;
    for (std::size_t q = c + 1; q < n; ++q)
        rest += x[q] * m.rows[q][c];
    for (int s : {1, -1}) {
        const Integer num = Integer(s) - rest;
        if (num % m.rows[c][c] != 0)
            continue;
        x[c] = num / m.rows[c][c];
        search(m, n, c, s < 0 ? signs | (std::uint64_t{1} << c) : signs, x, out);
    }
    x[c] = 0;
}

std::size_t f2_rank(std::vector<std::uint64_t> rows) {
    std::size_t rank = 0;
    for (int bit = 63; bit >= 0; --bit) {
        const std::uint64_t mask = std::uint64_t{1} << bit;
        auto pivot = std::find_if(rows.begin() + static_cast<long>(rank), rows.end(),
                                  [&](std::uint64_t v) { return (v & mask) != 0; });
        if (pivot == rows.end())
            continue;
        std::swap(*pivot, rows[rank]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != rank && (rows[i] & mask))
                rows[i] ^= rows[rank];
        ++rank;
    }
    return rank;
}

} // namespace

std::vector<UnitElement> units(const GroupPtr& p) {
    const std::size_t n = p->subgroup_classes().size();
    if (n > kUnitsClassBound)
        throw UnitsError(p->name() + " has " + std::to_string(n) + " subgroup classes, over the bound " +
                         std::to_string(kUnitsClassBound));
    const Matrix& m = marks_matrix(p);
    Vec x(n);
    std::vector<UnitElement> out;
    search(m, n, n, 0, x, out);
    std::sort(out.begin(), out.end(), [](const UnitElement& a, const UnitElement& b) { return a.signs < b.signs; });
    return out;
}

SignExpImage sign_exp_image(const GroupPtr& p) {
    const auto all = units(p);
    SignExpImage out;
    while ((std::size_t{1} << out.units_dim) < all.size())
        ++out.units_dim;
    const Matrix& m = marks_matrix(p);
    out.candidates_are_units = true;
    for (const auto& row : m.rows) {
        std::uint64_t signs = 0;
        for (std::size_t r = 0; r < row.size(); ++r)
            if (mpz_odd_p(row[r].get_mpz_t()))
                signs |= std::uint64_t{1} << r;
        out.candidates.push_back(signs);
        const bool found = std::any_of(all.begin(), all.end(), [&](const UnitElement& u) { return u.signs == signs; });
        out.candidates_are_units = out.candidates_are_units && found;
    }
    out.image_dim = f2_rank(out.candidates);
    return out;
}

bool CokerRow::matches() const { return kmod == std::vector<Integer>(static_cast<std::size_t>(d), 2); }

std::vector<CokerRow> coker_report(const std::vector<GroupPtr>& universe) {
    std::vector<CokerRow> out;
    for (const auto& p : universe) {
        CokerRow row;
        row.group = p->name();
        row.d = genetic_basis(p).d;
        row.kmod = k_mod_delta(p).invariants;
        if (p->subgroup_classes().size() <= kUnitsClassBound) {
            const SignExpImage s = sign_exp_image(p);
            row.units_computed = true;
            row.units_order = std::size_t{1} << s.units_dim;
            row.image_order = std::size_t{1} << s.image_dim;
        }
        out.push_back(std::move(row));
    }
    return out;
}

} // namespace bfk
