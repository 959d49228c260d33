#include "doctest.h"

#include <random>

#include "bfk/burnside.hpp"

using namespace bfk;

namespace {

Subgroup gen(const GroupPtr& g, std::vector<int> els) { return g->generate(els); }

Morphism random_morphism(std::mt19937& rng, const GroupPtr& src, const GroupPtr& tgt, int terms) {
    Morphism m(src, tgt);
    const auto& cl = m.ambient()->subgroup_classes();
    std::uniform_int_distribution<std::size_t> pick(0, cl.size() - 1);
    std::uniform_int_distribution<int> coef(-2, 2);
    for (int i = 0; i < terms; ++i)
        m.add(cl[pick(rng)].rep, coef(rng));
    return m;
}

// Fixed points of R on an explicit action.
long fixed_points(const std::vector<std::vector<int>>& action, const Subgroup& r) {
    long count = 0;
    for (std::size_t x = 0; x < action[0].size(); ++x) {
        bool fixed = true;
        for (int a : r.elements())
            fixed = fixed && action[static_cast<std::size_t>(a)][x] == static_cast<int>(x);
        count += fixed ? 1 : 0;
    }
    return count;
}

} // namespace

TEST_CASE("table of marks") {
    auto c2 = build_group("C2");
    CHECK(marks_matrix(c2) == Matrix::from_ints({{2, 0}, {1, 1}}, 2));
    CHECK(marks_matrix(trivial_group()) == Matrix::from_ints({{1}}, 1));
    auto d8 = build_group("D8");
    const int z = d8->class_of(d8->center());
    CHECK(marks_matrix(d8).at(static_cast<std::size_t>(z), static_cast<std::size_t>(z)) == 4);
    // brute-force fixed points of every class on every transitive set
    for (const char* name : {"D8", "Q8", "C4xC2", "X3", "SD16"}) {
        auto g = build_group(name);
        const auto& cl = g->subgroup_classes();
        const Matrix& m = marks_matrix(g);
        for (const auto& q : cl) {
            // left action of g on cosets of q
            std::vector<int> coset(static_cast<std::size_t>(g->order()), -1);
            std::vector<int> reps;
            for (int x = 0; x < g->order(); ++x) {
                if (coset[static_cast<std::size_t>(x)] >= 0)
                    continue;
                for (int y : q.rep.elements())
                    coset[static_cast<std::size_t>(g->mul(x, y))] = static_cast<int>(reps.size());
                reps.push_back(x);
            }
            std::vector<std::vector<int>> action(static_cast<std::size_t>(g->order()));
            for (int a = 0; a < g->order(); ++a)
                for (int r : reps)
                    action[static_cast<std::size_t>(a)].push_back(coset[static_cast<std::size_t>(g->mul(a, r))]);
            for (const auto& r : cl)
                CHECK(m.at(static_cast<std::size_t>(q.index), static_cast<std::size_t>(r.index)) == fixed_points(action, r.rep));
            // decomposition of the coset action returns the class itself
            CHECK(decompose_action(g, action) == Morphism::burnside(g, q.rep));
        }
    }
}

TEST_CASE("cyclic marks and K") {
    auto c2 = build_group("C2");
    CHECK(cyclic_marks(Morphism::burnside(c2, c2->trivial())) == Vec{Integer(2), Integer(0)});
    CHECK(kernel_K(build_group("C8")).rank() == 0);
    CHECK(kernel_K(build_group("C27")).rank() == 0);
    CHECK(kernel_K(build_group("D8")).rank() == 3);
    CHECK(kernel_K(build_group("Q8")).rank() == 1);
    for (const char* name : {"D8", "Q8", "D16", "C2xC2", "X3"}) {
        auto g = build_group(name);
        const Lattice& k = kernel_K(g);
        CHECK(k.rank() == g->subgroup_classes().size() - cyclic_classes(*g).size());
        for (const auto& row : k.basis().rows)
            CHECK(Morphism::from_dense(trivial_group(), g, row).cardinality() == 0);
        // virtual cardinality is the mark at the trivial subgroup
        for (const auto& row : marks_matrix(g).rows)
            CHECK(row[0] > 0);
    }
}

TEST_CASE("epsilon") {
    auto e = build_group("C2xC2");
    auto eps = epsilon(e);
    Vec expect{Integer(1), Integer(-1), Integer(-1), Integer(-1), Integer(2)};
    CHECK(eps.dense() == expect);
    CHECK(is_zero(cyclic_marks(eps)));
    CHECK(compose(faithful_idempotent(e, e->trivial()), Morphism::burnside(e, e->trivial())) == eps);
    auto e9 = build_group("E9");
    CHECK(is_zero(cyclic_marks(epsilon(e9))));
    CHECK(compose(faithful_idempotent(e9, e9->trivial()), Morphism::burnside(e9, e9->trivial())) == epsilon(e9));
    CHECK_THROWS_AS(epsilon(build_group("C4")), BisetError);
}

TEST_CASE("action decomposition") {
    auto d8 = build_group("D8");
    std::vector<int> invol;
    for (int a = 0; a < d8->order(); ++a)
        if (d8->elem_order(a) == 2)
            invol.push_back(a);
    REQUIRE(invol.size() == 5);
    std::vector<std::vector<int>> action(8);
    for (int g = 0; g < 8; ++g)
        for (int x : invol) {
            const int y = d8->conj(x, d8->inv(g));
            action[static_cast<std::size_t>(g)].push_back(static_cast<int>(std::find(invol.begin(), invol.end(), y) - invol.begin()));
        }
    const Morphism m = decompose_action(d8, action);
    CHECK(m.terms().size() == 3);
    int kleins = 0;
    for (const auto& [l, c] : m.terms()) {
        if (l.size() == 8)
            CHECK(c == 1);
        if (l.size() == 4) {
            CHECK(c == 1);
            CHECK_FALSE(d8->is_cyclic(l));
            ++kleins;
        }
    }
    CHECK(kleins == 2);
    auto c2 = build_group("C2");
    CHECK(decompose_action(c2, {{0, 1}, {1, 0}}) == Morphism::burnside(c2, c2->trivial()));
    CHECK_THROWS_AS(decompose_action(c2, {{1, 0}, {1, 0}}), BisetError);
}

TEST_CASE("orbit and Mackey compositions agree on small transitive pairs") {
    const std::vector<const char*> names{"C1", "C2", "C4", "C2xC2", "C3"};
    for (const char* kn : names)
        for (const char* hn : names)
            for (const char* gn : names) {
                auto k = build_group(kn), h = build_group(hn), g = build_group(gn);
                if (k->prime() != h->prime() && k->order() > 1 && h->order() > 1)
                    continue;
                if (h->prime() != g->prime() && h->order() > 1 && g->order() > 1)
                    continue;
                if (k->prime() != g->prime() && k->order() > 1 && g->order() > 1)
                    continue;
                Morphism proto_v(h, k), proto_u(g, h);
                for (const auto& lc : proto_v.ambient()->subgroup_classes())
                    for (const auto& mc : proto_u.ambient()->subgroup_classes()) {
                        auto v = Morphism::transitive(h, k, lc.rep);
                        auto u = Morphism::transitive(g, h, mc.rep);
                        auto a = compose_orbit(v, u);
                        auto b = compose_mackey(v, u);
                        CHECK(a == b);
                    }
            }
}

TEST_CASE("identity, associativity, opposite") {
    std::mt19937 rng(5);
    const std::vector<const char*> names{"C2", "C4", "D8", "C2xC2", "Q8"};
    for (int trial = 0; trial < 25; ++trial) {
        std::uniform_int_distribution<std::size_t> pick(0, names.size() - 1);
        auto a = build_group(names[pick(rng)]), b = build_group(names[pick(rng)]),
             c = build_group(names[pick(rng)]), d = build_group(names[pick(rng)]);
        auto u = random_morphism(rng, a, b, 3);
        auto v = random_morphism(rng, b, c, 3);
        auto w = random_morphism(rng, c, d, 2);
        CHECK(compose(Morphism::identity(b), u) == u);
        CHECK(compose(u, Morphism::identity(a)) == u);
        CHECK(compose(w, compose(v, u)) == compose(compose(w, v), u, ComposeMethod::Orbit));
        CHECK(opposite(opposite(u)) == u);
        CHECK(opposite(compose(v, u)) == compose(opposite(u), opposite(v)));
    }
}

TEST_CASE("elementary morphisms") {
    auto c4 = build_group("C4");
    const Subgroup c2 = gen(c4, {2});
    // Res then Ind sends C4/C4 to C4/C2
    auto top = Morphism::burnside(c4, c4->whole());
    CHECK(compose(ind(c4, c2), compose(res(c4, c2), top)) == Morphism::burnside(c4, c2));
    // Indinf_{T/S}^G is the (G, T/S)-biset G/S: evaluated on the point gives G/T
    auto d16 = build_group("D16");
    for (const auto& t : d16->subgroup_classes())
        for (const auto& s : d16->normal_subgroups()) {
            if (!s.is_subset_of(t.rep))
                continue;
            auto sec = make_section(d16, t.rep, s);
            auto point = Morphism::burnside(sec.quotient, sec.quotient->whole());
            CHECK(compose(indinf(d16, sec), point) == Morphism::burnside(d16, t.rep));
            CHECK(opposite(indinf(d16, sec)) == defres(d16, sec));
        }
    // Iso with a non-homomorphism is rejected
    CHECK_THROWS_AS(iso(c4, c4, {0, 2, 1, 3}), BisetError);
    CHECK_THROWS_AS(iso(c4, c4, {0, 1, 1, 3}), BisetError);
    auto inv_map = std::vector<int>{0, 3, 2, 1};
    CHECK(compose(iso(c4, c4, inv_map), iso(c4, c4, inv_map)) == Morphism::identity(c4));
    // Ind_T^R eps_T for R = D16, T a Klein subgroup containing Z, A noncentral in T
    const Subgroup z = d16->center();
    for (const auto& t : d16->subgroup_classes()) {
        if (t.rep.size() != 4 || d16->is_cyclic(t.rep) || !z.is_subset_of(t.rep))
            continue;
        auto sec = make_section(d16, t.rep, d16->trivial());
        auto lhs = compose(ind(d16, t.rep), epsilon(sec.quotient));
        Subgroup a(16);
        for (int x : t.rep.elements())
            if (x != 0 && !z.contains(x)) {
                a = gen(d16, {x});
                break;
            }
        auto rhs = Morphism::burnside(d16, d16->trivial()) - 2 * Morphism::burnside(d16, a) -
                   Morphism::burnside(d16, z) + 2 * Morphism::burnside(d16, t.rep);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("factorization recomposes") {
    for (auto [hn, gn] : std::vector<std::pair<const char*, const char*>>{{"D8", "C4"}, {"C2", "D8"}, {"Q8", "C2"}, {"C3", "C3"}}) {
        auto h = build_group(hn), g = build_group(gn);
        Morphism proto(g, h);
        for (const auto& c : proto.ambient()->subgroup_classes()) {
            auto f = factorize(h, g, c.rep);
            CHECK(f.recompose(h, g) == Morphism::transitive(g, h, c.rep));
        }
    }
    auto d8 = build_group("D8");
    auto f = factorize(d8, d8, Morphism::identity(d8).terms().begin()->first);
    CHECK(f.k1.size() == 1);
    CHECK(f.p1.size() == 8);
}

TEST_CASE("faithful idempotents") {
    for (const char* name : {"C2", "C4", "D8", "Q8", "C2xC2", "C3"}) {
        auto g = build_group(name);
        const auto normals = g->normal_subgroups();
        Morphism sum(g, g);
        for (const auto& n : normals) {
            auto fn = faithful_idempotent(g, n);
            CHECK(compose(fn, fn) == fn);
            for (const auto& m : normals)
                if (!(m == n))
                    CHECK(compose(fn, faithful_idempotent(g, m)).is_zero());
            sum += fn;
        }
        CHECK(sum == Morphism::identity(g));
        CHECK(faithful_idempotent_center(g) == faithful_idempotent(g, g->trivial()));
    }
    auto c2 = build_group("C2");
    Morphism point(c2, c2);
    point.add(point.ambient()->whole(), 1);
    CHECK(faithful_idempotent(c2, c2->trivial()) == Morphism::identity(c2) - point);
    auto d8 = build_group("D8");
    CHECK_THROWS_AS(faithful_idempotent(d8, gen(d8, {4})), BisetError);
}

TEST_CASE("twisted diagonals") {
    auto d8 = build_group("D8");
    CHECK(twisted_diagonal(*d8, d8->whole(), d8->trivial()) == Morphism::identity(d8).terms().begin()->first);
    const Subgroup z = d8->center();
    CHECK(twisted_diagonal_class(d8, d8->whole(), z) == compose(inf(d8, z), def(d8, z)));
}

TEST_CASE("shift") {
    auto c2 = build_group("C2");
    CHECK(shift(Morphism::identity(c2), c2) == Morphism::identity(direct_product(c2, c2)));
    std::mt19937 rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        auto a = build_group(trial % 2 ? "C4" : "C2xC2");
        auto b = build_group(trial % 3 ? "C2" : "D8");
        auto u = random_morphism(rng, a, b, 2);
        auto v = random_morphism(rng, b, c2, 2);
        CHECK(shift(compose(v, u), c2) == compose(shift(v, c2), shift(u, c2)));
        CHECK(shift(u + u, c2) == shift(u, c2) + shift(u, c2));
    }
}

TEST_CASE("U x_X T^op = pi_Q(T) x U~") {
    auto q = build_group("C2"), p = build_group("C2"), x = build_group("D8");
    const GroupPtr px = direct_product(p, x);
    Morphism proto(px, q);
    std::mt19937 rng(1);
    const auto& classes = proto.ambient()->subgroup_classes();
    Morphism tproto(x, trivial_group());
    for (std::size_t i = 0; i < classes.size(); i += 7) {
        auto u = Morphism::transitive(px, q, classes[i].rep);
        for (const auto& tc : tproto.ambient()->subgroup_classes()) {
            auto t = Morphism::transitive(x, trivial_group(), tc.rep);
            auto lhs = compose(curry(u, p, x), opposite(t));
            auto rhs = compose(shift(t, q), tilde(u, p, x));
            // lhs lives in B(Q x P), rhs in Hom(P, Q): same indices
            REQUIRE(lhs.terms().size() == rhs.terms().size());
            auto it = rhs.terms().begin();
            for (const auto& [l, c] : lhs.terms()) {
                CHECK(l == it->first);
                CHECK(c == it->second);
                ++it;
            }
        }
    }
}
