#include "bfk/identities.hpp"

namespace bfk {

bool DeltaNulReport::passed() const {
    for (bool z : gamma_zero)
        if (!z)
            return false;
    for (const auto& row : products)
        if (!row.ok)
            return false;
    return !gamma_zero.empty();
}

DeltaNulReport delta_nul_check(int p) {
    const DeltaContext& ctx = delta_context(p);
    const GroupPtr& x = ctx.x;
    DeltaNulReport out;
    out.p = p;
    const Morphism dop = opposite(ctx.delta);
    const GeneticBasis basis = genetic_basis(x);
    out.basis_size = basis.entries.size();
    for (const auto& e : basis.entries)
        out.gamma_zero.push_back(compose(dop, gamma(x, e.local.q)).is_zero());

    const Subgroup iz = x->generate(ctx.i, ctx.z), jz = x->generate(ctx.j, ctx.z);
    const Morphism diag = twisted_diagonal_class(x, iz, ctx.i);
    auto left = [&](const Subgroup& s) { return opposite(Morphism::burnside(x, s)); };
    const Integer pm1 = p - 1;
    const Integer pp = p;
    const std::vector<std::tuple<std::string, Subgroup, Morphism>> cases{
        {"I\\X", ctx.i, left(ctx.i) + pm1 * left(iz)},
        {"IZ\\X", iz, pp * left(iz)},
        {"J\\X", ctx.j, left(ctx.i)},
        {"JZ\\X", jz, left(iz)},
    };
    for (const auto& [label, s, expected] : cases) {
        ProductRow row;
        row.label = label;
        row.got = compose(left(s), diag);
        row.expected = expected;
        row.ok = row.got == row.expected && compose(left(s), diag, ComposeMethod::Orbit) == row.expected;
        out.products.push_back(std::move(row));
    }
    return out;
}

bool GeometricReport::passed() const {
    const std::size_t n = static_cast<std::size_t>(p * p + p + 1);
    return points == n && lines == n && fixed_points == 1 && fixed_lines == 1 && labeling_found;
}

namespace {

int fixed_count(const std::vector<std::vector<int>>& action) {
    int n = 0;
    for (std::size_t pt = 0; pt < action.front().size(); ++pt) {
        bool fixed = true;
        for (const auto& g : action)
            fixed = fixed && g[pt] == static_cast<int>(pt);
        n += fixed ? 1 : 0;
    }
    return n;
}

} // namespace

GeometricReport geometric_check(int p) {
    const ProjectivePlane plane = projective_plane_data(p);
    const GroupPtr& s = plane.group;
    GeometricReport out;
    out.p = p;
    out.points = plane.points.front().size();
    out.lines = plane.lines.front().size();
    out.fixed_points = fixed_count(plane.points);
    out.fixed_lines = fixed_count(plane.lines);
    out.point_set = decompose_action(s, plane.points);
    out.line_set = decompose_action(s, plane.lines);
    const Subgroup z = s->center();
    std::vector<Subgroup> noncentral;
    for (const auto& c : s->subgroup_classes())
        if (c.rep.size() == p && !(c.rep == z))
            noncentral.push_back(c.rep);
    const Morphism top = Morphism::burnside(s, s->whole());
    for (const auto& i : noncentral)
        for (const auto& j : noncentral) {
            if (i == j || out.labeling_found)
                continue;
            const Subgroup iz = s->generate(i, z), jz = s->generate(j, z);
            const Morphism pts = top + Morphism::burnside(s, jz) + Morphism::burnside(s, i);
            const Morphism lns = top + Morphism::burnside(s, iz) + Morphism::burnside(s, j);
            if (out.point_set == pts && out.line_set == lns && out.point_set - out.line_set == delta_element(s, i, j)) {
                out.labeling_found = true;
                out.i = i;
                out.j = j;
            }
        }
    return out;
}

namespace {

struct YData {
    Subgroup y;
    bool closed = true;
    Morphism lhs;
};

// Y = {(x y^-1 phi(x), x, y) : x y^-1 in IZ} and (X^3/Y) o (delta x delta).
YData y_composite(const GroupPtr& x, const GroupPtr& x2, const GroupPtr& x3, const Subgroup& i, const Subgroup& j,
                  const Morphism& dd) {
    const int n = x->order();
    const Subgroup iz = x->generate(i, x->center());
    // phi : X -> J with kernel IZ, sending g^k IZ to j^k
    int g = 0;
    while (iz.contains(g))
        ++g;
    int jgen = 0;
    for (int e : j.elements())
        if (e != 0)
            jgen = e;
    std::vector<int> phi(static_cast<std::size_t>(n), -1);
    int gk = 0, jk = 0;
    for (int k = 0; k < x->prime(); ++k) {
        for (int m : iz.elements())
            phi[static_cast<std::size_t>(x->mul(gk, m))] = jk;
        gk = x->mul(gk, g);
        jk = x->mul(jk, jgen);
    }
    YData out;
    out.y = Subgroup(x3->order());
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const int ab = x->mul(a, x->inv(b));
            if (iz.contains(ab))
                out.y.insert(x->mul(ab, phi[static_cast<std::size_t>(a)]) * x2->order() + a * n + b);
        }
    const auto els = out.y.elements();
    for (int u : els)
        for (int v : els)
            out.closed = out.closed && out.y.contains(x3->mul(u, v));
    if (out.closed)
        out.lhs = compose(Morphism::transitive(x2, x, out.y), dd);
    return out;
}

} // namespace

YReport y_identity_check(int p) {
    const DeltaContext& ctx = delta_context(p);
    const GroupPtr& x = ctx.x;
    const int n = x->order();
    if (static_cast<std::size_t>(n) * n * n > product_cap())
        throw CapExceeded("y_identity_check: X^3 has order " + std::to_string(n * n * n) + ", over the cap " +
                          std::to_string(product_cap()));
    const GroupPtr x2 = direct_product(x, x, product_cap());
    const GroupPtr x3 = direct_product(x, x2, product_cap());

    // delta x delta does not depend on the sign of delta, hence on the labeling
    Morphism dd = Morphism::burnside(x2, x2->trivial(), 0);
    for (const auto& [a, ca] : ctx.delta.terms())
        for (const auto& [b, cb] : ctx.delta.terms()) {
            Subgroup ab(x2->order());
            for (int s : a.elements())
                for (int t : b.elements())
                    ab.insert(s * n + t);
            dd += Morphism::burnside(x2, ab, ca * cb);
        }

    YReport out;
    out.p = p;
    const YData literal = y_composite(x, x2, x3, ctx.i, ctx.j, dd);
    out.y_order = literal.y.size();
    out.expected_order = static_cast<std::size_t>(x->generate(ctx.i, ctx.z).size()) * static_cast<std::size_t>(n);
    out.y_closed = literal.closed;
    if (!out.y_closed)
        return out;
    out.lhs = literal.lhs;
    out.literal_holds = literal.lhs == ctx.delta;
    out.swapped_holds = literal.lhs == delta_element(x, ctx.j, ctx.i);

    std::vector<Subgroup> noncentral;
    for (const auto& c : x->subgroup_classes())
        if (c.rep.size() == p && !(c.rep == ctx.z))
            for (const auto& m : x->class_members(c.index))
                noncentral.push_back(m);
    for (const auto& i : noncentral)
        for (const auto& j : noncentral) {
            if (x->are_conjugate(i, j))
                continue;
            ++out.labelings;
            const YData d = y_composite(x, x2, x3, i, j, dd);
            if (d.closed && d.lhs == delta_element(x, j, i))
                ++out.labelings_swapped;
        }
    return out;
}

} // namespace bfk
