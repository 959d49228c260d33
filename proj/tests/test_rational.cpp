#include "doctest.h"

#include <random>

#include "bfk/rational.hpp"

using namespace bfk;

namespace {

int cyclic_class_count(const Group& g) {
    int n = 0;
    for (const auto& c : g.subgroup_classes())
        n += g.is_cyclic(c.rep) ? 1 : 0;
    return n;
}

// Every row of a - b lies in the relations of target.
bool congruent(const Matrix& a, const Matrix& b, const PresentedAb& target) {
    if (a.nrows() != b.nrows())
        return false;
    const Lattice rel = target.relation_lattice();
    for (std::size_t i = 0; i < a.nrows(); ++i) {
        Vec d = a.rows[i];
        for (std::size_t j = 0; j < d.size(); ++j)
            d[j] -= b.rows[i][j];
        if (!rel.contains(d))
            return false;
    }
    return true;
}

Morphism bsum(const GroupPtr& g, const std::vector<std::pair<Subgroup, int>>& terms) {
    Morphism m = Morphism::burnside(g, g->trivial(), 0);
    for (const auto& [s, c] : terms)
        m += Morphism::burnside(g, s, c);
    return m;
}

std::vector<Subgroup> reflections(const GroupPtr& r) {
    std::vector<Subgroup> out;
    for (const auto& c : r->subgroup_classes())
        if (c.rep.size() == 2 && !(c.rep == r->center()))
            out.push_back(c.rep);
    return out;
}

// Faithful elements of K(P) as a lattice in B(P).
Lattice faithful_K(const GroupPtr& p) {
    auto k = make_K();
    const FaithfulPart fp = faithful_part(*k, p);
    return Lattice::from_rows(multiply(fp.idempotent, kernel_K(p).basis()));
}

Morphism random_transitive(std::mt19937& rng, const GroupPtr& src, const GroupPtr& tgt) {
    const Morphism proto(src, tgt);
    const auto& cl = proto.ambient()->subgroup_classes();
    std::uniform_int_distribution<std::size_t> pick(0, cl.size() - 1);
    return Morphism::transitive(src, tgt, cl[pick(rng)].rep);
}

} // namespace

TEST_CASE("delta context") {
    for (int p : {2, 3}) {
        const DeltaContext& ctx = delta_context(p);
        const auto& x = ctx.x;
        CHECK(x->order() == p * p * p);
        CHECK(ctx.i.intersect(ctx.z).size() == 1);
        CHECK(ctx.j.intersect(ctx.z).size() == 1);
        CHECK_FALSE(x->are_conjugate(ctx.i, ctx.j));
        CHECK(ctx.delta.terms().size() == 4);
        CHECK(ctx.delta.cardinality() == 0);
        CHECK(is_zero(cyclic_marks(ctx.delta)));
        // coefficients +1 on I, JZ and -1 on IZ, J
        const Subgroup iz = x->generate(ctx.i, ctx.z), jz = x->generate(ctx.j, ctx.z);
        const Vec v = ctx.delta.dense();
        CHECK(v[static_cast<std::size_t>(x->class_of(ctx.i))] == 1);
        CHECK(v[static_cast<std::size_t>(x->class_of(iz))] == -1);
        CHECK(v[static_cast<std::size_t>(x->class_of(ctx.j))] == -1);
        CHECK(v[static_cast<std::size_t>(x->class_of(jz))] == 1);
    }
    // delta_R on D8 agrees with the p = 2 delta up to swapping I and J
    auto d8 = build_group("D8");
    const auto w = reflections(d8);
    const Morphism a = delta_element(d8, w[0], w[1]);
    const Morphism& d = delta_context(2).delta;
    CHECK((a == d || a == Morphism::burnside(d8, d8->trivial(), 0) - d));
    CHECK_THROWS_AS(delta_R(d8), BisetError);
    CHECK_THROWS_AS(delta_R(build_group("SD16")), BisetError);
    CHECK(delta_R(build_group("D16")).terms().size() == 4);
}

TEST_CASE("B_delta fast path matches full enumeration") {
    const DeltaContext& c2 = delta_context(2);
    for (const auto& name : catalog_names(2, 16)) {
        auto p = build_group(name);
        INFO(name);
        CHECK(subfunctor_eval(c2.x, c2.delta, p) == subfunctor_eval_full(c2.x, c2.delta, p));
    }
    const DeltaContext& c3 = delta_context(3);
    for (const char* name : {"C1", "C3", "C9", "E9"}) {
        auto p = build_group(name);
        INFO(name);
        CHECK(subfunctor_eval(c3.x, c3.delta, p) == subfunctor_eval_full(c3.x, c3.delta, p));
    }
    // epsilon too
    auto e = build_group("C2xC2");
    for (const char* name : {"C2xC2", "D8", "C4xC2"}) {
        auto p = build_group(name);
        CHECK(subfunctor_eval(e, epsilon(e), p) == subfunctor_eval_full(e, epsilon(e), p));
    }
}

TEST_CASE("B_delta lattices") {
    auto c4 = build_group("C4");
    CHECK(b_delta(c4).rank() == 0);
    for (const auto& name : catalog_names(2, 16)) {
        auto p = build_group(name);
        INFO(name);
        CHECK(b_delta(p).ambient() == p->subgroup_classes().size());
        CHECK(kernel_K(p).contains(b_delta(p)));
        CHECK(b_delta(p).contains(b_epsilon(p)));
        // cyclic groups have K = 0
        if (p->is_cyclic(p->whole()))
            CHECK(b_delta(p).rank() == 0);
    }
    // odd p: K = B_delta
    for (const char* name : {"C3", "C9", "C27", "E9", "X3"}) {
        auto p = build_group(name);
        INFO(name);
        CHECK(b_delta(p) == kernel_K(p));
        CHECK(kernel_K(p).rank() == p->subgroup_classes().size() - static_cast<std::size_t>(cyclic_class_count(*p)));
    }
    // E: B_delta(E) is spanned by epsilon
    auto e = build_group("C2xC2");
    CHECK(b_delta(e) == b_epsilon(e));
    CHECK(b_epsilon(e).contains(epsilon(e).dense()));
    // X itself contains delta
    CHECK(b_delta(delta_context(2).x).contains(delta_context(2).delta.dense()));
}

TEST_CASE("B_delta is an ideal") {
    std::mt19937 rng(7);
    auto c2 = build_group("C2");
    auto c4 = build_group("C4");
    auto e = build_group("C2xC2");
    auto one = trivial_group();
    const std::vector<GroupPtr> groups{one, c2, c4, e};
    for (int round = 0; round < 40; ++round) {
        std::uniform_int_distribution<std::size_t> pick(0, groups.size() - 1);
        const GroupPtr p = groups[pick(rng)], q = groups[pick(rng)], r = groups[pick(rng)];
        const GroupPtr qp = direct_product(q, p, product_cap());
        const Lattice& lat = b_delta(qp);
        if (lat.rank() == 0)
            continue;
        std::uniform_int_distribution<std::size_t> row(0, lat.rank() - 1);
        const Morphism f = Morphism::from_dense(p, q, lat.basis().rows[row(rng)]);
        const Morphism a = random_transitive(rng, q, r);
        const Morphism b = random_transitive(rng, r, p);
        const Morphism left = compose(a, f);
        const Morphism right = compose(f, b);
        CHECK(b_delta(left.ambient()).contains(left.dense()));
        CHECK(b_delta(right.ambient()).contains(right.dense()));
    }
}

TEST_CASE("K / B_delta") {
    auto check = [](const char* name, std::vector<Integer> expected) {
        INFO(name);
        const KModDelta k = k_mod_delta(build_group(name));
        CHECK(k.invariants == expected);
        CHECK(k.images_in_k);
        CHECK(k.images_span);
    };
    check("D8", {});
    check("D16", {2});
    check("SD16", {});
    check("Q16", {});
    check("D32", {2, 2});
    check("D8xC2", {});
    // invariant factors are d(P) copies of 2
    for (const auto& name : catalog_names(2, 16)) {
        auto p = build_group(name);
        INFO(name);
        CHECK(k_mod_delta(p).invariants == std::vector<Integer>(static_cast<std::size_t>(genetic_basis(p).d), 2));
    }
    auto d16 = build_group("D16");
    const Vec dr = delta_R(d16).dense();
    CHECK(kernel_K(d16).contains(dr));
    CHECK_FALSE(b_delta(d16).contains(dr));
    Vec twice = dr;
    for (auto& x : twice)
        x *= 2;
    CHECK(b_delta(d16).contains(twice));
    const KModDelta k = k_mod_delta(d16);
    REQUIRE(k.basis_images.size() == 1);
    CHECK(k.basis_images[0] == delta_R(d16));
}

TEST_CASE("faithful parts of K") {
    auto k = make_K();
    for (const char* name : {"C8", "Q8", "Q16", "C4", "C1"}) {
        INFO(name);
        const FaithfulPart fp = faithful_part(*k, build_group(name));
        CHECK(fp.part.is_zero());
        CHECK(fp.matches_deflation_kernels);
    }
    // SD16: rank one, generated by Ind eps = -2(R/W - R/WZ) + (R/1 - R/Z)
    auto sd = build_group("SD16");
    const FaithfulPart fsd = faithful_part(*k, sd);
    CHECK(fsd.matches_deflation_kernels);
    CHECK(fsd.part.invariants() == std::vector<Integer>{0});
    const auto wsd = reflections(sd);
    REQUIRE(wsd.size() == 1);
    const Subgroup z = sd->center();
    const Subgroup wz = sd->generate(wsd[0], z);
    const Morphism gen = bsum(sd, {{wsd[0], -2}, {wz, 2}, {sd->trivial(), 1}, {z, -1}});
    Matrix gsd(sd->subgroup_classes().size());
    gsd.push(gen.dense());
    CHECK(faithful_K(sd) == Lattice::from_rows(gsd));
    const Section wzsec = make_section(sd, wz, sd->trivial());
    CHECK(compose(indinf(sd, wzsec), epsilon(wzsec.quotient)) == gen);
    // D16: rank two, Ind eps and delta_R
    auto d16 = build_group("D16");
    const FaithfulPart fd = faithful_part(*k, d16);
    CHECK(fd.matches_deflation_kernels);
    CHECK(fd.part.invariants() == std::vector<Integer>{0, 0});
    const auto w = reflections(d16);
    REQUIRE(w.size() == 2);
    Matrix gens(d16->subgroup_classes().size());
    const Subgroup wz16 = d16->generate(w[0], d16->center());
    const Section s16 = make_section(d16, wz16, d16->trivial());
    gens.push(compose(indinf(d16, s16), epsilon(s16.quotient)).dense());
    gens.push(delta_R(d16).dense());
    CHECK(faithful_K(d16) == Lattice::from_rows(gens));
    // E: faithful part of K is spanned by epsilon
    auto e = build_group("C2xC2");
    CHECK(faithful_K(e) == b_epsilon(e));
}

TEST_CASE("functor laws") {
    std::mt19937 rng(11);
    const std::vector<GroupPtr> groups{trivial_group(), build_group("C2"), build_group("C4"), build_group("C2xC2"),
                                       build_group("D8")};
    for (const char* spec : {"B", "K", "RQ", "BmodBdelta", "shift:C2", "shift:C2:B"}) {
        INFO(spec);
        auto f = make_functor(spec);
        for (const auto& g : groups) {
            const AbMap id = f->act(Morphism::identity(g));
            CHECK(id.well_defined());
            CHECK(congruent(id.matrix, Matrix::identity(f->eval(g).gens), f->eval(g)));
            CHECK(f->generator_labels(g).size() == f->eval(g).gens);
        }
        for (int round = 0; round < 12; ++round) {
            std::uniform_int_distribution<std::size_t> pick(0, groups.size() - 1);
            const GroupPtr a = groups[pick(rng)], b = groups[pick(rng)], c = groups[pick(rng)];
            if (std::string(spec).rfind("shift", 0) == 0 && a->order() * b->order() > 16)
                continue;
            const Morphism u = random_transitive(rng, a, b);
            const Morphism v = random_transitive(rng, b, c);
            const AbMap fu = f->act(u), fv = f->act(v);
            CHECK(fu.well_defined());
            CHECK(congruent(f->act(compose(v, u)).matrix, multiply(fu.matrix, fv.matrix), f->eval(c)));
        }
    }
    CHECK(make_B()->eval(build_group("C2")).invariants() == std::vector<Integer>{0, 0});
    CHECK(make_shift(make_B(), build_group("C2"))->eval(build_group("C2")).invariants().size() == 5);
    auto x3 = build_group("X3");
    const PresentedAb q = make_quotient_BmodBdelta()->eval(x3);
    CHECK(q.invariants() == std::vector<Integer>(static_cast<std::size_t>(cyclic_class_count(*x3)), 0));
    CHECK(q.invariants().size() == 6);
    CHECK(make_functor("BmodBdelta")->label() == "BmodBdelta");
    CHECK_THROWS_AS(make_functor("nope"), std::invalid_argument);
}

TEST_CASE("rationality") {
    auto q = make_quotient_BmodBdelta();
    for (const char* name : {"C1", "C2", "C4", "C2xC2", "D8", "Q8", "C4xC2", "D16", "SD16", "C3", "E9", "X3"}) {
        INFO(name);
        CHECK(rationality_check(*q, build_group(name)).rational);
    }
    auto b = make_B();
    auto e = build_group("C2xC2");
    const RationalityReport rb = rationality_check(*b, e);
    CHECK_FALSE(rb.rational);
    CHECK(rb.basis_size == 4);
    CHECK(rb.kernel.empty());
    CHECK(rb.cokernel == std::vector<Integer>{0});
    // the faithful parts add up to rank 4 against rank 5
    std::size_t total = 0;
    for (const auto& entry : genetic_basis(e).entries)
        total += faithful_part(*b, genetic_section(e, entry.local.q).quotient).part.free_rank();
    CHECK(total == 4);
    CHECK(b->eval(e).free_rank() == 5);
    // cyclic groups: every functor is rational there
    CHECK(rationality_check(*b, build_group("C8")).rational);
    // shifted quotient
    auto s = make_shift(q, build_group("C2"));
    for (const char* name : {"C1", "C2", "C2xC2", "D8"}) {
        INFO(name);
        CHECK(rationality_check(*s, build_group(name)).rational);
    }
    // the answer does not depend on the genetic basis
    for (const char* name : {"D8", "X3", "C2xC2"}) {
        auto p = build_group(name);
        const auto parts = linkage_classes(p);
        for (std::size_t k = 0; k < parts.size(); ++k)
            for (int alt : parts[k]) {
                std::vector<int> choice;
                for (std::size_t j = 0; j < parts.size(); ++j)
                    choice.push_back(j == k ? alt : parts[j].front());
                const GeneticBasis basis = genetic_basis_from(p, choice);
                CHECK(rationality_check(*q, basis).rational);
                CHECK(rationality_check(*b, basis).rational == rationality_check(*b, p).rational);
                CHECK(rationality_check(*b, basis).cokernel == rationality_check(*b, p).cokernel);
            }
    }
}

TEST_CASE("gamma idempotents and the left inverse on rational evaluations") {
    auto q = make_quotient_BmodBdelta();
    for (const char* name : {"C2xC2", "D8", "C4xC2", "D16", "X3", "E9"}) {
        auto p = build_group(name);
        INFO(name);
        const PresentedAb& fp = q->eval(p);
        Matrix sum(fp.gens, fp.gens);
        for (const auto& entry : genetic_basis(p).entries) {
            const Matrix m = q->act(gamma(p, entry.local.q)).matrix;
            for (std::size_t i = 0; i < fp.gens; ++i)
                for (std::size_t j = 0; j < fp.gens; ++j)
                    sum.rows[i][j] += m.rows[i][j];
            // b o indinf is the identity on the faithful part of F(N/Q)
            const Section sec = genetic_section(p, entry.local.q);
            const FaithfulPart part = faithful_part(*q, sec.quotient);
            const Matrix round = multiply(
                multiply(part.idempotent, q->act(indinf_map(p, entry.local.q)).matrix),
                q->act(b_map(p, entry.local.q)).matrix);
            CHECK(congruent(round, part.idempotent, q->eval(sec.quotient)));
        }
        CHECK(congruent(sum, Matrix::identity(fp.gens), fp));
    }
    // B is not rational at E, and the gamma sum is not the identity there
    auto b = make_B();
    auto e = build_group("C2xC2");
    Matrix sum(5, 5);
    for (const auto& entry : genetic_basis(e).entries) {
        const Matrix m = b->act(gamma(e, entry.local.q)).matrix;
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j)
                sum.rows[i][j] += m.rows[i][j];
    }
    CHECK_FALSE(sum == Matrix::identity(5));
}

TEST_CASE("caract") {
    auto q = make_quotient_BmodBdelta();
    std::vector<GroupPtr> universe;
    for (const auto& name : catalog_names(2, 8))
        universe.push_back(build_group(name));
    for (const char* name : {"C9", "E9", "X3"})
        universe.push_back(build_group(name));
    const CaractReport rq = caract_check(*q, universe);
    CHECK(rq.passed());
    int pairs = 0;
    for (const auto& row : rq.rows)
        pairs += row.pairs;
    CHECK(pairs > 0);
    auto e = build_group("C2xC2");
    const CaractReport rb = caract_check(*make_B(), {e});
    CHECK_FALSE(rb.rows[0].center_cyclic);
    CHECK_FALSE(rb.rows[0].condition_i);
    const CaractReport rk = caract_check(*make_K(), {e});
    CHECK_FALSE(rk.rows[0].condition_i);
    CHECK_FALSE(rk.passed());
    // D8: K fails condition (ii) although the center is cyclic
    auto d8 = build_group("D8");
    const CaractReport rk8 = caract_check(*make_K(), {d8});
    CHECK(rk8.rows[0].center_cyclic);
    CHECK(rk8.rows[0].pairs == 2);
}

TEST_CASE("rat bounds") {
    auto b = make_B();
    auto q = make_quotient_BmodBdelta();
    const RatBounds r1 = rat_bounds(*b, trivial_group());
    CHECK(r1.rat_quotient.invariants() == std::vector<Integer>{0});
    for (const char* name : {"C1", "C2", "C4", "C2xC2", "D8"}) {
        auto p = build_group(name);
        INFO(name);
        const RatBounds rb = rat_bounds(*b, p);
        CHECK(rb.rat_quotient.invariants() == q->eval(p).invariants());
        const RatBounds rq = rat_bounds(*q, p);
        CHECK(rq.rat_quotient.invariants() == q->eval(p).invariants());
        CHECK(rq.rat_sub == q->eval(p).invariants());
        CHECK(rb.rat_sub.empty());
    }
    // the two constructions give the same quotient of B(X)
    auto x = delta_context(2).x;
    const RatBounds rx = rat_bounds(*b, x);
    CHECK(rx.rat_quotient.invariants() == q->eval(x).invariants());
    CHECK(Lattice::from_rows(rx.rat_quotient.rels) == b_delta(x));
}

TEST_CASE("mur kill") {
    auto q = make_quotient_BmodBdelta();
    auto b = make_B();
    auto one = trivial_group();
    auto c2 = build_group("C2");
    auto c4 = build_group("C4");
    auto x = delta_context(2).x;
    for (auto [p, target] : std::vector<std::pair<GroupPtr, GroupPtr>>{{one, x}, {c2, c2}, {c2, c4}, {one, c2}}) {
        const MurReport r = mur_kill_check(*q, p, target);
        CHECK(r.nonzero == 0);
    }
    const MurReport rc = mur_kill_check(*q, c2, c2);
    CHECK(rc.generators > 0);
    const MurReport neg = mur_kill_check(*b, one, x);
    CHECK(neg.generators > 0);
    CHECK(neg.nonzero > 0);
    // delta as a morphism 1 -> X is zero on the quotient but not on B
    CHECK(q->act(delta_context(2).delta).is_zero());
    CHECK_FALSE(b->act(delta_context(2).delta).is_zero());
    CHECK(q->act(delta_context(3).delta).is_zero());
    // delta^op : X -> 1 already kills B, since delta has no cyclic marks
    CHECK(b->act(opposite(delta_context(2).delta)).is_zero());
}
