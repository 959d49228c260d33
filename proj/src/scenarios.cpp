#include "bfk/scenarios.hpp"

#include <random>
#include <sstream>

#include "bfk/identities.hpp"
#include "bfk/units.hpp"

namespace bfk {

void ScenarioResult::check(bool ok, const std::string& line) {
    lines.push_back((ok ? "ok   " : "FAIL ") + line);
    passed = passed && ok;
}

std::vector<GroupPtr> catalog_universe(int p, int max_order) {
    std::vector<GroupPtr> out;
    for (const auto& name : catalog_names(p, max_order))
        out.push_back(build_group(name, product_cap()));
    return out;
}

namespace {

std::string inv(const std::vector<Integer>& v) { return to_string(v); }

// Schema JSON when the groups have catalog names, else a description.
Json element_json(const Morphism& m) {
    try {
        return m.source()->order() == 1 ? burnside_to_json(m) : morphism_to_json(m);
    } catch (const JsonError&) {
        return {{"source", m.source()->name()}, {"target", m.target()->name()}, {"value", m.describe()}};
    }
}

std::vector<int> primes_of(const ScenarioParams& p) {
    if (p.p == 0)
        return {2, 3};
    return {p.p};
}

bool compatible(const GroupPtr& a, const GroupPtr& b) {
    return a->order() == 1 || b->order() == 1 || a->prime() == b->prime();
}

// Catalog groups for the selected primes, trivial group once.
std::vector<GroupPtr> mixed_universe(const ScenarioParams& prm, int max_order) {
    std::vector<GroupPtr> out;
    for (int p : primes_of(prm))
        for (const auto& g : catalog_universe(p, max_order))
            if (out.empty() || g->order() > 1)
                out.push_back(g);
    return out;
}

ScenarioResult compose_referee(const ScenarioParams& prm) {
    ScenarioResult r;
    const auto groups = mixed_universe(prm, prm.max_order);
    long pairs = 0, bad = 0;
    for (const auto& g : groups)
        for (const auto& h : groups)
            for (const auto& k : groups) {
                if (!compatible(g, h) || !compatible(h, k) || !compatible(g, k))
                    continue;
                if (static_cast<long>(k->order()) * h->order() * g->order() > prm.max_order)
                    continue;
                const Morphism pv(h, k), pu(g, h);
                std::vector<Morphism> us;
                for (const auto& mc : pu.ambient()->subgroup_classes())
                    us.push_back(Morphism::transitive(g, h, mc.rep));
                for (const auto& lc : pv.ambient()->subgroup_classes()) {
                    const Morphism v = Morphism::transitive(h, k, lc.rep);
                    for (const auto& u : us) {
                        ++pairs;
                        if (!(compose_orbit(v, u) == compose_mackey(v, u)))
                            ++bad;
                    }
                }
            }
    r.check(bad == 0, "exhaustive: " + std::to_string(pairs) + " transitive pairs with |K x H x G| <= " +
                          std::to_string(prm.max_order) + ", " + std::to_string(bad) + " disagreements");

    // random pairs with |K x H|, |H x G| <= 2 max_order
    const long big = 2L * prm.max_order;
    const auto pool = mixed_universe(prm, prm.max_order / 2);
    std::mt19937_64 rng(prm.seed);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    long rpairs = 0, rbad = 0;
    while (rpairs < 500) {
        const GroupPtr g = pool[pick(rng)], h = pool[pick(rng)], k = pool[pick(rng)];
        if (!compatible(g, h) || !compatible(h, k) || !compatible(g, k))
            continue;
        if (static_cast<long>(k->order()) * h->order() > big || static_cast<long>(h->order()) * g->order() > big)
            continue;
        const Morphism pv(h, k), pu(g, h);
        const auto& lv = pv.ambient()->subgroup_classes();
        const auto& lu = pu.ambient()->subgroup_classes();
        std::uniform_int_distribution<std::size_t> iv(0, lv.size() - 1), iu(0, lu.size() - 1);
        const Morphism v = Morphism::transitive(h, k, lv[iv(rng)].rep);
        const Morphism u = Morphism::transitive(g, h, lu[iu(rng)].rep);
        ++rpairs;
        if (!(compose_orbit(v, u) == compose_mackey(v, u)))
            ++rbad;
    }
    r.check(rbad == 0, "random: " + std::to_string(rpairs) + " pairs with ambient orders <= " + std::to_string(big) +
                           " (seed " + std::to_string(prm.seed) + "), " + std::to_string(rbad) + " disagreements");
    r.details = {{"exhaustive_pairs", pairs}, {"exhaustive_disagreements", bad}, {"random_pairs", rpairs},
                 {"random_disagreements", rbad}};
    return r;
}

ScenarioResult factorization(const ScenarioParams& prm) {
    ScenarioResult r;
    const auto groups = mixed_universe(prm, prm.max_order);
    long classes = 0, bad = 0;
    for (const auto& h : groups)
        for (const auto& g : groups) {
            if (!compatible(g, h) || static_cast<long>(h->order()) * g->order() > prm.max_order)
                continue;
            const Morphism proto(g, h);
            for (const auto& c : proto.ambient()->subgroup_classes()) {
                ++classes;
                if (!(factorize(h, g, c.rep).recompose(h, g) == Morphism::transitive(g, h, c.rep)))
                    ++bad;
            }
        }
    r.check(bad == 0, std::to_string(classes) + " classes L <= H x G with |H x G| <= " +
                          std::to_string(prm.max_order) + " recompose, " + std::to_string(bad) + " failures");
    r.details = {{"classes", classes}, {"failures", bad}};
    return r;
}

ScenarioResult idempotents(const ScenarioParams& prm) {
    ScenarioResult r;
    Json rows = Json::array();
    for (const auto& g : mixed_universe(prm, prm.max_order)) {
        const auto normals = g->normal_subgroups();
        bool idem = true, orth = true;
        Morphism sum(g, g);
        std::vector<Morphism> fs;
        for (const auto& n : normals)
            fs.push_back(faithful_idempotent(g, n));
        for (std::size_t a = 0; a < fs.size(); ++a) {
            idem = idem && compose(fs[a], fs[a]) == fs[a];
            for (std::size_t b = 0; b < fs.size(); ++b)
                if (a != b)
                    orth = orth && compose(fs[a], fs[b]).is_zero();
            sum += fs[a];
        }
        const bool total = sum == Morphism::identity(g);
        const bool center = faithful_idempotent_center(g) == faithful_idempotent(g, g->trivial());
        r.check(idem && orth && total && center,
                g->name() + ": " + std::to_string(normals.size()) + " normal subgroups; idempotent " +
                    (idem ? "yes" : "no") + ", orthogonal " + (orth ? "yes" : "no") + ", sum is identity " +
                    (total ? "yes" : "no") + ", center formula " + (center ? "agrees" : "differs"));
        rows.push_back({{"group", g->name()}, {"normals", normals.size()}, {"idempotent", idem},
                        {"orthogonal", orth}, {"sum_identity", total}, {"center_formula", center}});
    }
    r.details = {{"groups", rows}};
    return r;
}

ScenarioResult delta_nul(const ScenarioParams& prm) {
    ScenarioResult r;
    Json out = Json::array();
    for (int p : primes_of(prm)) {
        const DeltaNulReport d = delta_nul_check(p);
        int zeros = 0;
        for (bool z : d.gamma_zero)
            zeros += z ? 1 : 0;
        r.check(zeros == static_cast<int>(d.gamma_zero.size()) && zeros > 0,
                "p=" + std::to_string(p) + ": delta^op o gamma_Y = 0 for " + std::to_string(zeros) + " of " +
                    std::to_string(d.basis_size) + " basis entries");
        Json prods = Json::array();
        for (const auto& row : d.products) {
            r.check(row.ok, "p=" + std::to_string(p) + ": " + row.label + " x_X (X x X)/Delta_{IZ,I} = " +
                                row.got.describe() + " (expected " + row.expected.describe() + ")");
            prods.push_back({{"left", row.label}, {"got", element_json(row.got)}, {"ok", row.ok}});
        }
        out.push_back({{"p", p}, {"basis_size", d.basis_size}, {"gamma_zero", d.gamma_zero}, {"products", prods}});
    }
    r.details = {{"primes", out}};
    return r;
}

ScenarioResult geometric(const ScenarioParams& prm) {
    ScenarioResult r;
    Json out = Json::array();
    for (int p : primes_of(prm)) {
        const GeometricReport g = geometric_check(p);
        const std::string tag = "p=" + std::to_string(p) + ": ";
        r.check(g.points == g.lines && g.points == static_cast<std::size_t>(p * p + p + 1),
                tag + std::to_string(g.points) + " points, " + std::to_string(g.lines) + " lines");
        r.check(g.fixed_points == 1 && g.fixed_lines == 1, tag + "one fixed point and one fixed line");
        r.check(g.labeling_found, tag + "points = " + g.point_set.describe() + ", lines = " + g.line_set.describe() +
                                      ", points - lines = delta for a labeling of I, J");
        out.push_back({{"p", p}, {"points", element_json(g.point_set)}, {"lines", element_json(g.line_set)},
                       {"passed", g.passed()}});
    }
    r.details = {{"primes", out}};
    return r;
}

ScenarioResult y_identity(const ScenarioParams& prm) {
    ScenarioResult r;
    const YReport y = y_identity_check(prm.p);
    r.check(y.y_closed && y.y_order == y.expected_order,
            "Y is a subgroup of X^3 of order " + std::to_string(y.y_order) + " = |IZ| |X|");
    r.check(y.swapped_holds && y.labelings_swapped == y.labelings,
            "(X^3/Y) o (delta x delta) = delta_{X,J,I} for " + std::to_string(y.labelings_swapped) + " of " +
                std::to_string(y.labelings) + " choices of (I, J)");
    r.note(std::string("against delta_{X,I,J} itself: ") + (y.literal_holds ? "equal" : "the negative"));
    r.details = {{"p", y.p}, {"y_order", y.y_order}, {"lhs", element_json(y.lhs)},
                 {"literal", y.literal_holds}, {"swapped", y.swapped_holds}};
    return r;
}

std::vector<GroupPtr> brat_universe(int p, int max_order) {
    if (p == 2)
        return catalog_universe(2, max_order);
    std::vector<GroupPtr> out;
    for (const char* name : {"C3", "C9", "C27", "E3_2", "X3"}) {
        auto g = build_group(name, product_cap());
        if (g->order() <= std::max(max_order, 27))
            out.push_back(g);
    }
    return out;
}

ScenarioResult brat(const ScenarioParams& prm) {
    ScenarioResult r;
    auto q = make_quotient_BmodBdelta();
    Json rows = Json::array();
    for (int p : primes_of(prm))
        for (const auto& g : brat_universe(p, prm.max_order)) {
            const RationalityReport rep = rationality_check(*q, g);
            r.check(rep.rational, g->name() + ": I_G over " + std::to_string(rep.basis_size) +
                                      " genetic subgroups, kernel " + inv(rep.kernel) + ", cokernel " +
                                      inv(rep.cokernel));
            rows.push_back({{"group", g->name()}, {"rational", rep.rational}, {"kernel", invariants_to_json(rep.kernel)},
                            {"cokernel", invariants_to_json(rep.cokernel)}});
        }
    r.details = {{"functor", q->label()}, {"groups", rows}};
    return r;
}

ScenarioResult caract(const ScenarioParams& prm) {
    ScenarioResult r;
    auto q = make_quotient_BmodBdelta();
    std::vector<GroupPtr> universe;
    for (int p : primes_of(prm))
        for (const auto& g : brat_universe(p, prm.max_order))
            universe.push_back(g);
    const CaractReport rep = caract_check(*q, universe);
    Json rows = Json::array();
    for (const auto& row : rep.rows) {
        r.check(row.condition_i && row.condition_ii,
                row.group + ": center " + (row.center_cyclic ? "cyclic" : "noncyclic, faithful part zero " +
                                                                            std::string(row.condition_i ? "yes" : "no")) +
                    "; " + std::to_string(row.pairs) + " (E, Z) pairs injective " + (row.condition_ii ? "yes" : "no"));
        rows.push_back({{"group", row.group}, {"center_cyclic", row.center_cyclic}, {"condition_i", row.condition_i},
                        {"pairs", row.pairs}, {"condition_ii", row.condition_ii}});
    }
    r.details = {{"functor", q->label()}, {"groups", rows}};
    return r;
}

ScenarioResult shift_rational(const ScenarioParams& prm) {
    ScenarioResult r;
    auto s = make_shift(make_quotient_BmodBdelta(), build_group("C2"));
    Json rows = Json::array();
    for (const auto& g : catalog_universe(2, prm.max_order)) {
        const RationalityReport rep = rationality_check(*s, g);
        r.check(rep.rational, s->label() + " at " + g->name() + ": kernel " + inv(rep.kernel) + ", cokernel " +
                                  inv(rep.cokernel));
        rows.push_back({{"group", g->name()}, {"rational", rep.rational}});
    }
    r.details = {{"functor", s->label()}, {"groups", rows}};
    return r;
}

ScenarioResult mur_kill(const ScenarioParams&) {
    ScenarioResult r;
    auto q = make_quotient_BmodBdelta();
    auto b = make_B();
    auto one = trivial_group();
    auto c2 = build_group("C2");
    auto c4 = build_group("C4");
    auto x = delta_context(2).x;
    Json rows = Json::array();
    for (auto [p, target] : std::vector<std::pair<GroupPtr, GroupPtr>>{{one, x}, {c2, c2}, {c2, c4}}) {
        const MurReport m = mur_kill_check(*q, p, target);
        r.check(m.nonzero == 0 && m.generators > 0,
                "B/B_delta, P=" + p->name() + ", Q=" + target->name() + ": " + std::to_string(m.generators) +
                    " generators of B_delta(Q x P), " + std::to_string(m.nonzero) + " act nonzero");
        rows.push_back({{"P", p->name()}, {"Q", target->name()}, {"generators", m.generators}, {"nonzero", m.nonzero}});
    }
    const MurReport neg = mur_kill_check(*b, one, x);
    r.check(neg.nonzero > 0, "negative control on B, P=1, Q=" + x->name() + ": " + std::to_string(neg.nonzero) +
                                 " of " + std::to_string(neg.generators) + " generators act nonzero");
    r.details = {{"cases", rows}, {"control_nonzero", neg.nonzero}};
    return r;
}

Lattice faithful_k_lattice(const GroupPtr& p) {
    const FaithfulPart fp = faithful_part(*make_K(), p);
    return Lattice::from_rows(multiply(fp.idempotent, kernel_K(p).basis()));
}

ScenarioResult prn1_ranks(const ScenarioParams&) {
    ScenarioResult r;
    auto k = make_K();
    Json rows = Json::array();
    auto rank_row = [&](const char* name, std::size_t expected) {
        auto g = build_group(name);
        const FaithfulPart fp = faithful_part(*k, g);
        const auto rank = fp.part.free_rank();
        r.check(rank == expected && fp.part.invariants().size() == rank && fp.matches_deflation_kernels,
                std::string("rank of the faithful part of K(") + name + ") = " + std::to_string(rank) +
                    ", free, equal to the deflation kernel");
        rows.push_back({{"group", name}, {"rank", rank}});
        return g;
    };
    rank_row("C8", 0);
    rank_row("Q8", 0);
    rank_row("Q16", 0);
    auto sd = rank_row("SD16", 1);
    auto d16 = rank_row("D16", 2);
    auto ind_eps = [](const GroupPtr& g, const Subgroup& w) {
        const Subgroup wz = g->generate(w, g->center());
        const Section sec = make_section(g, wz, g->trivial());
        return compose(indinf(g, sec), epsilon(sec.quotient)).dense();
    };
    auto refl = [](const GroupPtr& g) {
        std::vector<Subgroup> out;
        for (const auto& c : g->subgroup_classes())
            if (c.rep.size() == 2 && !(c.rep == g->center()))
                out.push_back(c.rep);
        return out;
    };
    Matrix gs(sd->subgroup_classes().size());
    gs.push(ind_eps(sd, refl(sd).front()));
    r.check(faithful_k_lattice(sd) == Lattice::from_rows(gs), "SD16: generated by Ind_{WZ} eps_{WZ}");
    Matrix gd(d16->subgroup_classes().size());
    gd.push(ind_eps(d16, refl(d16).front()));
    gd.push(delta_R(d16).dense());
    r.check(faithful_k_lattice(d16) == Lattice::from_rows(gd), "D16: generated by Ind_{WZ} eps_{WZ} and delta_R");
    r.details = {{"groups", rows}};
    return r;
}

ScenarioResult kmod_dims(const ScenarioParams& prm) {
    ScenarioResult r;
    Json rows = Json::array();
    const DeltaContext& ctx = delta_context(2);
    for (const auto& g : catalog_universe(2, prm.max_order)) {
        const KModDelta k = k_mod_delta(g);
        const int d = genetic_basis(g).d;
        const bool ok = k.invariants == std::vector<Integer>(static_cast<std::size_t>(d), 2) && k.images_span;
        std::string line = g->name() + ": K/B_delta = " + inv(k.invariants) + ", d = " + std::to_string(d) +
                           ", Indinf delta images span " + (k.images_span ? "yes" : "no");
        bool oracle = true;
        if (g->order() <= 16) {
            oracle = subfunctor_eval_full(ctx.x, ctx.delta, g) == b_delta(g);
            line += ", B_delta matches full enumeration " + std::string(oracle ? "yes" : "no");
        }
        r.check(ok && oracle, line);
        rows.push_back({{"group", g->name()}, {"invariants", invariants_to_json(k.invariants)}, {"d", d}});
    }
    const std::vector<std::pair<const char*, std::size_t>> named{
        {"D16", 1}, {"SD16", 0}, {"Q16", 0}, {"D32", 2}, {"D8xC2", 0}};
    for (const auto& [name, twos] : named) {
        auto g = build_group(name, product_cap());
        if (g->order() > prm.max_order)
            continue;
        const auto got = k_mod_delta(g).invariants;
        r.check(got == std::vector<Integer>(twos, 2), std::string(name) + ": K/B_delta = " + inv(got));
    }
    auto d16 = build_group("D16");
    r.check(!b_delta(d16).contains(delta_R(d16).dense()), "delta_{D16} is not in B_delta(D16)");
    r.details = {{"groups", rows}};
    return r;
}

ScenarioResult coker_dims(const ScenarioParams& prm) {
    ScenarioResult r;
    Json rows = Json::array();
    for (const auto& row : coker_report(catalog_universe(2, prm.max_order))) {
        std::ostringstream s;
        s << row.group << ": d = " << row.d << ", K/B_delta = " << inv(row.kmod);
        if (row.units_computed)
            s << ", |B^x| = " << row.units_order << ", |candidate exp image| = " << row.image_order;
        r.check(row.matches(), s.str());
        Json j = {{"group", row.group}, {"d", row.d}, {"kmod", invariants_to_json(row.kmod)}};
        if (row.units_computed) {
            j["units_order"] = row.units_order;
            j["exp_image_order"] = row.image_order;
        }
        rows.push_back(j);
    }
    r.details = {{"groups", rows}};
    return r;
}

ScenarioResult units_report(const ScenarioParams& prm) {
    ScenarioResult r;
    Json rows = Json::array();
    for (int p : primes_of(prm))
        for (const auto& g : catalog_universe(p, prm.max_order)) {
            if (p != 2 && g->order() == 1)
                continue;
            if (g->subgroup_classes().size() > kUnitsClassBound) {
                r.note(g->name() + ": " + std::to_string(g->subgroup_classes().size()) +
                       " classes, over the search bound");
                continue;
            }
            const auto us = units(g);
            bool closed = true;
            for (const auto& a : us)
                for (const auto& b : us)
                    closed = closed && std::any_of(us.begin(), us.end(),
                                                   [&](const UnitElement& c) { return c.signs == (a.signs ^ b.signs); });
            if (p != 2) {
                // odd order: only +-1
                r.check(closed && us.size() == 2, g->name() + ": |B^x| = " + std::to_string(us.size()));
                rows.push_back({{"group", g->name()}, {"units", us.size()}});
                continue;
            }
            const SignExpImage s = sign_exp_image(g);
            r.check(closed && s.candidates_are_units,
                    g->name() + ": |B^x| = " + std::to_string(us.size()) + ", candidate exp image of dimension " +
                        std::to_string(s.image_dim) + ", cokernel dimension " + std::to_string(s.coker_dim()));
            rows.push_back({{"group", g->name()}, {"units", us.size()}, {"image_dim", s.image_dim},
                            {"coker_dim", s.coker_dim()}});
        }
    r.details = {{"groups", rows}};
    return r;
}

ScenarioResult odd_k(const ScenarioParams&) {
    ScenarioResult r;
    Json rows = Json::array();
    for (const auto& g : brat_universe(3, 27)) {
        const bool eq = kernel_K(g) == b_delta(g);
        r.check(eq, g->name() + ": K and B_delta are equal lattices of rank " + std::to_string(kernel_K(g).rank()));
        rows.push_back({{"group", g->name()}, {"rank", kernel_K(g).rank()}, {"equal", eq}});
    }
    r.details = {{"groups", rows}};
    return r;
}

ScenarioResult negative_controls(const ScenarioParams&) {
    ScenarioResult r;
    auto e = build_group("C2xC2");
    auto b = make_B();
    const RationalityReport rb = rationality_check(*b, e);
    std::size_t total = 0;
    for (const auto& entry : genetic_basis(e).entries)
        total += faithful_part(*b, genetic_section(e, entry.local.q).quotient).part.free_rank();
    r.check(!rb.rational && total == 4 && b->eval(e).free_rank() == 5,
            "B at C2xC2 is not rational: faithful parts of rank " + std::to_string(total) + " against rank " +
                std::to_string(b->eval(e).free_rank()) + ", cokernel " + inv(rb.cokernel));
    const CaractReport cb = caract_check(*b, {e});
    r.check(!cb.rows[0].condition_i, "B fails condition (i) at C2xC2");
    const CaractReport ck = caract_check(*make_K(), {e});
    r.check(!ck.rows[0].condition_i, "K fails condition (i) at C2xC2");
    r.details = {{"B_rational", rb.rational}, {"faithful_rank_sum", total}};
    return r;
}

std::vector<Scenario> build_registry() {
    return {
        {"compose-oracle-agreement", "orbit and Mackey composition agree", {0, 64, 1}, compose_referee},
        {"factorization", "transitive bisets factor as Ind Inf Iso Def Res", {0, 64, 1}, factorization},
        {"f_N-idempotents", "the f_N are orthogonal idempotents summing to the identity", {0, 16, 1}, idempotents},
        {"delta-nul", "delta^op kills every gamma_Y of a genetic basis of X", {0, 0, 1}, delta_nul},
        {"geometric", "points minus lines of the projective plane is delta", {0, 0, 1}, geometric},
        {"y-identity", "(X^3/Y) o (delta x delta) = delta", {2, 0, 1}, y_identity},
        {"brat", "B/B_delta is rational", {0, 16, 1}, brat},
        {"caract", "B/B_delta satisfies the two rationality conditions", {0, 16, 1}, caract},
        {"shift-rational", "shifting B/B_delta by C2 keeps it rational", {2, 8, 1}, shift_rational},
        {"mur-kill", "B_delta morphisms act as zero on B/B_delta", {2, 0, 1}, mur_kill},
        {"prn1-ranks", "faithful parts of K at groups of normal p-rank one", {2, 0, 1}, prn1_ranks},
        {"kmod-dims", "K/B_delta is d(P) copies of Z/2", {2, 32, 1}, kmod_dims},
        {"coker-dims", "K/B_delta dimension equals d(P), with the units probe", {2, 32, 1}, coker_dims},
        {"units-report", "Burnside unit groups and candidate exponential images", {0, 16, 1}, units_report},
        {"odd-k", "K = B_delta for odd p", {3, 27, 1}, odd_k},
        {"negative-controls", "B and K are not rational at C2xC2", {2, 0, 1}, negative_controls},
    };
}

} // namespace

const std::vector<Scenario>& scenarios() {
    static const std::vector<Scenario> registry = build_registry();
    return registry;
}

const Scenario* find_scenario(std::string_view id) {
    if (id == "mur")
        id = "mur-kill";
    for (const auto& s : scenarios())
        if (s.id == id)
            return &s;
    return nullptr;
}

ScenarioResult run_scenario(const Scenario& s, const ScenarioParams& params) {
    ScenarioParams merged = s.defaults;
    if (params.p != 0)
        merged.p = params.p;
    if (params.max_order != 0)
        merged.max_order = params.max_order;
    if (params.seed != 0)
        merged.seed = params.seed;
    return s.run(merged);
}

Json report_json(const Scenario& s, const ScenarioParams& params, const ScenarioResult& r) {
    return {{"scenario", s.id},
            {"params", {{"p", params.p}, {"max_order", params.max_order}, {"seed", params.seed}}},
            {"passed", r.passed},
            {"details", r.details}};
}

} // namespace bfk
