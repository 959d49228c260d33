#include "bfk/biset.hpp"

#include <sstream>

namespace bfk {

bool same_group(const Group& a, const Group& b) {
    return &a == &b || (a.order() == b.order() && a.fingerprint() == b.fingerprint());
}

Morphism::Morphism(GroupPtr source, GroupPtr target)
    : source_(std::move(source)), target_(std::move(target)) {
    ambient_ = direct_product(target_, source_, product_cap());
}

Morphism Morphism::transitive(GroupPtr source, GroupPtr target, const Subgroup& l, const Integer& coeff) {
    Morphism m(std::move(source), std::move(target));
    m.add(l, coeff);
    return m;
}

Morphism Morphism::burnside(GroupPtr g, const Subgroup& q, const Integer& coeff) {
    return transitive(trivial_group(), std::move(g), q, coeff);
}

Morphism Morphism::identity(GroupPtr g) {
    const int n = g->order();
    Morphism m(g, g);
    Subgroup d(m.ambient_->order());
    for (int x = 0; x < n; ++x)
        d.insert(x * n + x);
    m.add(d, 1);
    return m;
}

Morphism Morphism::from_dense(GroupPtr source, GroupPtr target, const Vec& v) {
    Morphism m(std::move(source), std::move(target));
    const auto& classes = m.ambient_->subgroup_classes();
    if (v.size() != classes.size())
        throw BisetError("dense vector length does not match the class count");
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0)
            m.terms_.emplace(classes[i].rep, v[i]);
    return m;
}

void Morphism::add(const Subgroup& l, const Integer& coeff) {
    if (coeff == 0)
        return;
    if (l.universe() != ambient_->order() || !l.contains(0))
        throw BisetError("subgroup does not live in the ambient group " + ambient_->name());
    auto accumulate = [&](const Subgroup& c) {
        auto it = terms_.find(c);
        if (it == terms_.end()) {
            terms_.emplace(c, coeff);
            return;
        }
        it->second += coeff;
        if (it->second == 0)
            terms_.erase(it);
    };
    if (ambient_->classes_ready())
        accumulate(ambient_->subgroup_classes()[static_cast<std::size_t>(ambient_->class_of(l))].rep);
    else
        accumulate(ambient_->canonical(l));
}

void Morphism::check_compatible(const Morphism& o) const {
    if (!same_group(*source_, *o.source_) || !same_group(*target_, *o.target_))
        throw BisetError("adding morphisms between different groups");
}

Morphism& Morphism::operator+=(const Morphism& o) {
    check_compatible(o);
    for (const auto& [l, c] : o.terms_)
        add(l, c);
    return *this;
}

Morphism& Morphism::operator-=(const Morphism& o) {
    check_compatible(o);
    for (const auto& [l, c] : o.terms_)
        add(l, -c);
    return *this;
}

Morphism& Morphism::operator*=(const Integer& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [l, v] : terms_)
        v *= c;
    return *this;
}

bool Morphism::operator==(const Morphism& o) const {
    return same_group(*source_, *o.source_) && same_group(*target_, *o.target_) && terms_ == o.terms_;
}

Vec Morphism::dense() const {
    const auto& classes = ambient_->subgroup_classes();
    Vec v(classes.size());
    for (const auto& [l, c] : terms_)
        v[static_cast<std::size_t>(ambient_->class_of(l))] = c;
    return v;
}

Integer Morphism::cardinality() const {
    Integer out = 0;
    for (const auto& [l, c] : terms_)
        out += c * (ambient_->order() / l.size());
    return out;
}

std::string Morphism::describe() const {
    std::ostringstream os;
    if (terms_.empty())
        return "0";
    bool first = true;
    for (const auto& [l, c] : terms_) {
        os << (first ? "" : " + ") << c.get_str() << "*[" << ambient_->class_of(l) << "]";
        first = false;
    }
    return os.str();
}

Subgroup first_projection(const Group&, const Group& b, const Subgroup& l) {
    Subgroup out(l.universe() / b.order());
    for (int x : l.elements())
        out.insert(x / b.order());
    return out;
}

Subgroup second_projection(const Group&, const Group& b, const Subgroup& l) {
    Subgroup out(b.order());
    for (int x : l.elements())
        out.insert(x % b.order());
    return out;
}

Subgroup first_kernel(const Group&, const Group& b, const Subgroup& l) {
    Subgroup out(l.universe() / b.order());
    for (int x : l.elements())
        if (x % b.order() == 0)
            out.insert(x / b.order());
    return out;
}

Subgroup second_kernel(const Group&, const Group& b, const Subgroup& l) {
    Subgroup out(b.order());
    for (int x : l.elements())
        if (x < b.order())
            out.insert(x);
    return out;
}

Subgroup star(const Group& k, const Group& h, const Group& g, const Subgroup& a, const Subgroup& b) {
    const int nh = h.order(), ng = g.order();
    std::vector<std::vector<int>> by_middle(static_cast<std::size_t>(nh));
    for (int e : a.elements())
        by_middle[static_cast<std::size_t>(e % nh)].push_back(e / nh);
    Subgroup out(k.order() * ng);
    for (int e : b.elements()) {
        const int x = e / ng, y = e % ng;
        for (int kk : by_middle[static_cast<std::size_t>(x)])
            out.insert(kk * ng + y);
    }
    return out;
}

namespace {

// Left cosets x L: coset_of[element] and one representative per coset.
void cosets(const Group& g, const Subgroup& l, std::vector<int>& coset_of, std::vector<int>& rep) {
    coset_of.assign(static_cast<std::size_t>(g.order()), -1);
    rep.clear();
    thread_local std::vector<int> el;
    l.elements_into(el);
    for (int x = 0; x < g.order(); ++x) {
        if (coset_of[static_cast<std::size_t>(x)] >= 0)
            continue;
        const int id = static_cast<int>(rep.size());
        rep.push_back(x);
        for (int y : el)
            coset_of[static_cast<std::size_t>(g.mul(x, y))] = id;
    }
}

// Scratch space reused across calls; composition runs millions of small pairs.
struct OrbitScratch {
    // V-side data depends on (K x H, H, L) only; kept for the last v seen.
    const Group* v_kh = nullptr;
    const Group* v_h = nullptr;
    std::pair<std::uint64_t, std::uint64_t> v_fp;
    Subgroup v_l;
    std::vector<int> cv, rv, cu, ru;
    std::vector<int> vrep, vtrans; // v -> index of its H-orbit representative, t with t.v = rep
    std::vector<int> reps, stab;   // representatives; stabilizer elements, concatenated
    std::vector<int> stab_start;
    std::vector<int> label, queue;
    std::vector<std::pair<int, int>> label_rep; // (rep index, u)
    std::vector<char> seen;
};

void check_chain(const Morphism& v, const Morphism& u) {
    if (!same_group(*v.source(), *u.target()))
        throw BisetError("cannot compose: " + v.source()->name() + " does not match " + u.target()->name());
}

// H-orbits on V = (K x H)/L with transporters and stabilizers.
void v_orbits(OrbitScratch& w, const Group& kh, const Group& h, const Subgroup& l, int nh) {
    const int nv = static_cast<int>(w.rv.size());
    auto hv = [&](int x, int v) { return w.cv[static_cast<std::size_t>(kh.mul(x, w.rv[static_cast<std::size_t>(v)]))]; };
    const std::vector<int>& hgens = h.generators();
    w.vrep.assign(static_cast<std::size_t>(nv), -1);
    w.vtrans.assign(static_cast<std::size_t>(nv), 0);
    w.reps.clear();
    w.stab.clear();
    w.stab_start.clear();
    for (int v0 = 0; v0 < nv; ++v0) {
        if (w.vrep[static_cast<std::size_t>(v0)] >= 0)
            continue;
        const int r = static_cast<int>(w.reps.size());
        w.reps.push_back(v0);
        w.vrep[static_cast<std::size_t>(v0)] = r;
        w.queue.assign(1, v0);
        for (std::size_t i = 0; i < w.queue.size(); ++i) {
            const int v = w.queue[i];
            for (int x : hgens) {
                const int v2 = hv(x, v);
                if (w.vrep[static_cast<std::size_t>(v2)] < 0) {
                    w.vrep[static_cast<std::size_t>(v2)] = r;
                    w.vtrans[static_cast<std::size_t>(v2)] = h.mul(w.vtrans[static_cast<std::size_t>(v)], h.inv(x));
                    w.queue.push_back(v2);
                }
            }
        }
        w.stab_start.push_back(static_cast<int>(w.stab.size()));
        const int orbit = static_cast<int>(w.queue.size());
        for (int x = 0; x < nh && static_cast<int>(w.stab.size()) - w.stab_start.back() < nh / orbit; ++x)
            if (hv(x, v0) == v0)
                w.stab.push_back(x);
    }
    w.stab_start.push_back(static_cast<int>(w.stab.size()));
    w.v_kh = &kh;
    w.v_h = &h;
    w.v_fp = {kh.fingerprint(), h.fingerprint()};
    w.v_l = l;
}

// (K x H)/L composed with (H x G)/M by explicit orbit decomposition of V x U
// under H.  Each H-orbit of V x U meets {v0} x U for v0 the representative of
// its V-component, in a single Stab_H(v0)-orbit.
void orbit_pair(const Group& kh, const Group& hg, const Group& kg, const Group& h, int nk, int nh, int ng,
                const Subgroup& l, const Subgroup& m, const Integer& coeff, Morphism& out) {
    thread_local OrbitScratch w;
    const bool fresh_v = w.v_kh != &kh || w.v_h != &h ||
                         w.v_fp != std::make_pair(kh.fingerprint(), h.fingerprint()) || !(w.v_l == l);
    if (fresh_v)
        cosets(kh, l, w.cv, w.rv);
    cosets(hg, m, w.cu, w.ru);
    const int nu = static_cast<int>(w.ru.size());
    // (x, 1) u for x in H; (k, 1) v and (1, g) u.
    auto hu = [&](int x, int u) { return w.cu[static_cast<std::size_t>(hg.mul(x * ng, w.ru[static_cast<std::size_t>(u)]))]; };
    auto kv = [&](int k, int v) { return w.cv[static_cast<std::size_t>(kh.mul(k * nh, w.rv[static_cast<std::size_t>(v)]))]; };
    auto gu = [&](int g, int u) { return w.cu[static_cast<std::size_t>(hg.mul(g, w.ru[static_cast<std::size_t>(u)]))]; };

    if (fresh_v)
        v_orbits(w, kh, h, l, nh);

    // Stab_H(v0)-orbits on U, one block of labels per representative.
    const int nreps = static_cast<int>(w.reps.size());
    w.label.assign(static_cast<std::size_t>(nreps) * static_cast<std::size_t>(nu), -1);
    w.label_rep.clear();
    for (int r = 0; r < nreps; ++r) {
        int* lab = w.label.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(nu);
        for (int u0 = 0; u0 < nu; ++u0) {
            if (lab[u0] >= 0)
                continue;
            const int id = static_cast<int>(w.label_rep.size());
            w.label_rep.emplace_back(r, u0);
            for (int i = w.stab_start[static_cast<std::size_t>(r)]; i < w.stab_start[static_cast<std::size_t>(r) + 1]; ++i)
                lab[hu(w.stab[static_cast<std::size_t>(i)], u0)] = id;
        }
    }
    // K x G acts on the labels through (k, g).(v0, u) = ((k, 1) v0, (1, g) u).
    auto act_kg = [&](int e, int id) {
        const auto [r, u] = w.label_rep[static_cast<std::size_t>(id)];
        const int v2 = kv(e / ng, w.reps[static_cast<std::size_t>(r)]);
        const int u2 = gu(e % ng, u);
        const int r2 = w.vrep[static_cast<std::size_t>(v2)];
        return w.label[static_cast<std::size_t>(r2) * static_cast<std::size_t>(nu) +
                       static_cast<std::size_t>(hu(w.vtrans[static_cast<std::size_t>(v2)], u2))];
    };
    const std::vector<int>& gens = kg.generators();
    w.seen.assign(w.label_rep.size(), 0);
    for (std::size_t id = 0; id < w.label_rep.size(); ++id) {
        if (w.seen[id])
            continue;
        w.queue.assign(1, static_cast<int>(id));
        w.seen[id] = 1;
        for (std::size_t i = 0; i < w.queue.size(); ++i)
            for (int gen : gens) {
                const int nid = act_kg(gen, w.queue[i]);
                if (!w.seen[static_cast<std::size_t>(nid)]) {
                    w.seen[static_cast<std::size_t>(nid)] = 1;
                    w.queue.push_back(nid);
                }
            }
        Subgroup stab(kg.order());
        for (int e = 0; e < kg.order(); ++e)
            if (act_kg(e, static_cast<int>(id)) == static_cast<int>(id))
                stab.insert(e);
        out.add(stab, coeff);
    }
    (void)nk;
}

} // namespace

Morphism compose_orbit(const Morphism& v, const Morphism& u) {
    check_chain(v, u);
    Morphism out(u.source(), v.target());
    const Group& kh = *v.ambient();
    const Group& hg = *u.ambient();
    const Group& kg = *out.ambient();
    const int nk = v.target()->order(), nh = u.target()->order(), ng = u.source()->order();
    for (const auto& [l, a] : v.terms())
        for (const auto& [m, b] : u.terms())
            orbit_pair(kh, hg, kg, *u.target(), nk, nh, ng, l, m, a * b, out);
    return out;
}

Morphism compose_mackey(const Morphism& v, const Morphism& u) {
    check_chain(v, u);
    Morphism out(u.source(), v.target());
    const Group& k = *v.target();
    const Group& h = *u.target();
    const Group& g = *u.source();
    const int nh = h.order(), ng = g.order(), nkg = k.order() * ng;
    thread_local std::vector<std::vector<int>> by_middle;
    thread_local std::vector<char> marked;
    thread_local std::vector<int> pa_el, pb_el, m_el, l_el;
    for (const auto& [l, a] : v.terms()) {
        second_projection(k, h, l).elements_into(pa_el);
        by_middle.resize(static_cast<std::size_t>(nh));
        for (auto& bucket : by_middle)
            bucket.clear();
        l.elements_into(l_el);
        for (int e : l_el)
            by_middle[static_cast<std::size_t>(e % nh)].push_back(e / nh);
        for (const auto& [m, b] : u.terms()) {
            first_projection(h, g, m).elements_into(pb_el);
            m.elements_into(m_el);
            const Integer ab = a * b;
            marked.assign(static_cast<std::size_t>(nh), 0);
            for (int x = 0; x < nh; ++x) {
                if (marked[static_cast<std::size_t>(x)])
                    continue;
                for (int s : pa_el)
                    for (int t : pb_el)
                        marked[static_cast<std::size_t>(h.mul(h.mul(s, x), t))] = 1;
                // L * (x, 1) M (x, 1)^-1
                const int xi = h.inv(x);
                Subgroup st(nkg);
                for (int e : m_el) {
                    const int y = e % ng;
                    for (int kk : by_middle[static_cast<std::size_t>(h.mul(h.mul(x, e / ng), xi))])
                        st.insert(kk * ng + y);
                }
                out.add(st, ab);
            }
        }
    }
    return out;
}

Morphism compose(const Morphism& v, const Morphism& u, ComposeMethod method) {
    switch (method) {
    case ComposeMethod::Orbit:
        return compose_orbit(v, u);
    case ComposeMethod::Mackey:
        return compose_mackey(v, u);
    case ComposeMethod::Both:
        break;
    }
    Morphism a = compose_orbit(v, u);
    Morphism b = compose_mackey(v, u);
    if (!(a == b))
        throw BisetError("orbit and Mackey compositions disagree: " + a.describe() + " vs " + b.describe());
    return a;
}

Morphism opposite(const Morphism& u) {
    Morphism out(u.target(), u.source());
    const int nh = u.target()->order(), ng = u.source()->order();
    for (const auto& [l, c] : u.terms()) {
        Subgroup s(nh * ng);
        for (int e : l.elements())
            s.insert((e % ng) * nh + e / ng);
        out.add(s, c);
    }
    return out;
}

Morphism shift(const Morphism& u, const GroupPtr& hs) {
    const GroupPtr src = direct_product(u.source(), hs, product_cap());
    const GroupPtr tgt = direct_product(u.target(), hs, product_cap());
    Morphism out(src, tgt);
    const int ng = u.source()->order(), n = hs->order();
    const int nsrc = ng * n;
    for (const auto& [l, c] : u.terms()) {
        Subgroup s(out.ambient()->order());
        for (int e : l.elements()) {
            const int k = e / ng, g = e % ng;
            for (int x = 0; x < n; ++x)
                s.insert((k * n + x) * nsrc + (g * n + x));
        }
        out.add(s, c);
    }
    return out;
}

Morphism indinf(const GroupPtr& g, const Section& sec) {
    Morphism out(sec.quotient, g);
    const int nq = sec.quotient->order();
    Subgroup s(g->order() * nq);
    for (int t : sec.top.elements())
        s.insert(t * nq + sec.proj[static_cast<std::size_t>(t)]);
    out.add(s, 1);
    return out;
}

Morphism defres(const GroupPtr& g, const Section& sec) {
    Morphism out(g, sec.quotient);
    const int ng = g->order();
    Subgroup s(ng * sec.quotient->order());
    for (int t : sec.top.elements())
        s.insert(sec.proj[static_cast<std::size_t>(t)] * ng + t);
    out.add(s, 1);
    return out;
}

Morphism ind(const GroupPtr& g, const Subgroup& t) { return indinf(g, make_section(g, t, g->trivial())); }
Morphism res(const GroupPtr& g, const Subgroup& t) { return defres(g, make_section(g, t, g->trivial())); }
Morphism inf(const GroupPtr& g, const Subgroup& n) { return indinf(g, quotient(g, n)); }
Morphism def(const GroupPtr& g, const Subgroup& n) { return defres(g, quotient(g, n)); }

Morphism iso(const GroupPtr& g, const GroupPtr& h, const std::vector<int>& phi) {
    if (static_cast<int>(phi.size()) != g->order() || g->order() != h->order())
        throw BisetError("iso: map size does not match the groups");
    std::vector<char> hit(static_cast<std::size_t>(h->order()), 0);
    for (int x : phi) {
        if (x < 0 || x >= h->order() || hit[static_cast<std::size_t>(x)])
            throw BisetError("iso: map is not a bijection");
        hit[static_cast<std::size_t>(x)] = 1;
    }
    for (int a = 0; a < g->order(); ++a)
        for (int b = 0; b < g->order(); ++b)
            if (phi[static_cast<std::size_t>(g->mul(a, b))] != h->mul(phi[static_cast<std::size_t>(a)], phi[static_cast<std::size_t>(b)]))
                throw BisetError("iso: map is not a homomorphism");
    Morphism out(g, h);
    const int ng = g->order();
    Subgroup s(h->order() * ng);
    for (int x = 0; x < ng; ++x)
        s.insert(phi[static_cast<std::size_t>(x)] * ng + x);
    out.add(s, 1);
    return out;
}

FactorizationData factorize(const GroupPtr& h, const GroupPtr& g, const Subgroup& l) {
    FactorizationData f;
    f.l = l;
    f.p1 = first_projection(*h, *g, l);
    f.k1 = first_kernel(*h, *g, l);
    f.p2 = second_projection(*h, *g, l);
    f.k2 = second_kernel(*h, *g, l);
    f.upper = make_section(h, f.p1, f.k1);
    f.lower = make_section(g, f.p2, f.k2);
    f.phi.assign(static_cast<std::size_t>(f.lower.quotient->order()), -1);
    const int ng = g->order();
    for (int e : l.elements())
        f.phi[static_cast<std::size_t>(f.lower.proj[static_cast<std::size_t>(e % ng)])] =
            f.upper.proj[static_cast<std::size_t>(e / ng)];
    return f;
}

Morphism FactorizationData::recompose(const GroupPtr& h, const GroupPtr& g) const {
    const Morphism a = indinf(h, upper);
    const Morphism b = iso(lower.quotient, upper.quotient, phi);
    const Morphism c = defres(g, lower);
    return compose(a, compose(b, c));
}

Subgroup twisted_diagonal(const Group& g, const Subgroup& b, const Subgroup& a) {
    const int n = g.order();
    Subgroup out(n * n);
    const auto bel = b.elements();
    for (int u : bel)
        for (int v : bel)
            if (a.contains(g.mul(u, g.inv(v))))
                out.insert(u * n + v);
    return out;
}

Morphism twisted_diagonal_class(const GroupPtr& g, const Subgroup& b, const Subgroup& a) {
    Morphism out(g, g);
    out.add(twisted_diagonal(*g, b, a), 1);
    return out;
}

Morphism faithful_idempotent(const GroupPtr& g, const Subgroup& n) {
    if (!g->is_subgroup(n) || !g->is_normal(n))
        throw BisetError("faithful_idempotent: subgroup is not normal");
    std::vector<Subgroup> above;
    above.push_back(n);
    for (const auto& m : g->normal_subgroups())
        if (n.is_subset_of(m) && !(m == n))
            above.push_back(m);
    std::vector<std::vector<bool>> leq(above.size(), std::vector<bool>(above.size()));
    for (std::size_t i = 0; i < above.size(); ++i)
        for (std::size_t j = 0; j < above.size(); ++j)
            leq[i][j] = above[i].is_subset_of(above[j]);
    const FinitePoset pos(std::move(leq));
    Morphism out(g, g);
    const Subgroup whole = g->whole();
    for (std::size_t j = 0; j < above.size(); ++j)
        out.add(twisted_diagonal(*g, whole, above[j]), Integer(static_cast<long>(pos.mobius(0, j))));
    return out;
}

Morphism faithful_idempotent_center(const GroupPtr& g) {
    const int p = g->prime();
    Subgroup omega(g->order());
    for (int z : g->center().elements())
        if (g->power(z, p) == 0)
            omega.insert(z);
    // every subgroup of a central subgroup is normal
    std::vector<Subgroup> subs;
    for (const auto& m : g->normal_subgroups())
        if (m.is_subset_of(omega))
            subs.push_back(m);
    std::vector<std::vector<bool>> leq(subs.size(), std::vector<bool>(subs.size()));
    for (std::size_t i = 0; i < subs.size(); ++i)
        for (std::size_t j = 0; j < subs.size(); ++j)
            leq[i][j] = subs[i].is_subset_of(subs[j]);
    const FinitePoset pos(std::move(leq));
    Morphism out(g, g);
    const Subgroup whole = g->whole();
    for (std::size_t j = 0; j < subs.size(); ++j)
        out.add(twisted_diagonal(*g, whole, subs[j]), Integer(static_cast<long>(pos.mobius(0, j))));
    return out;
}

Morphism curry(const Morphism& u, const GroupPtr& p, const GroupPtr& x) {
    const GroupPtr px = direct_product(p, x, product_cap());
    if (!same_group(*u.source(), *px))
        throw BisetError("curry: source is not P x X");
    Morphism out(x, direct_product(u.target(), p, product_cap()));
    for (const auto& [l, c] : u.terms())
        out.add(l, c);
    return out;
}

Morphism tilde(const Morphism& u, const GroupPtr& p, const GroupPtr& x) {
    const GroupPtr px = direct_product(p, x, product_cap());
    if (!same_group(*u.source(), *px))
        throw BisetError("tilde: source is not P x X");
    const GroupPtr& q = u.target();
    Morphism out(p, direct_product(x, q, product_cap()));
    const int np = p->order(), nx = x->order(), nq = q->order();
    for (const auto& [l, c] : u.terms()) {
        Subgroup s(out.ambient()->order());
        for (int e : l.elements()) {
            const int h = e / (np * nx), g = (e / nx) % np, xx = e % nx;
            s.insert((xx * nq + h) * np + g);
        }
        out.add(s, c);
    }
    return out;
}

} // namespace bfk
