#include "bfk/rational.hpp"

#include <algorithm>
#include <stdexcept>

namespace bfk {

namespace {

std::vector<Subgroup> all_subgroups(const Group& g) {
    std::vector<Subgroup> out;
    for (const auto& c : g.subgroup_classes())
        for (const auto& m : g.class_members(c.index))
            out.push_back(m);
    return out;
}

// Subgroups of order p in the center.
std::vector<Subgroup> central_order_p(const GroupPtr& g) {
    std::vector<Subgroup> out;
    const int p = g->prime();
    for (int z : g->center().elements()) {
        if (g->elem_order(z) != p)
            continue;
        const std::vector<int> gens{z};
        const Subgroup s = g->generate(gens);
        if (std::find(out.begin(), out.end(), s) == out.end())
            out.push_back(s);
    }
    return out;
}

// Row i: image of the class of G/Q_i.
Matrix burnside_action(const Morphism& u) {
    Matrix m(u.target()->subgroup_classes().size());
    for (const auto& c : u.source()->subgroup_classes())
        m.push(compose(u, Morphism::burnside(u.source(), c.rep)).dense());
    return m;
}

struct Piece {
    GroupPtr quotient;
    Morphism value;
};

// Nonzero Defres_{B/A} elem over sections (B, A) with B a class representative.
std::vector<Piece> defres_pieces(const GroupPtr& g0, const Morphism& elem) {
    std::vector<Piece> out;
    const auto subs = all_subgroups(*g0);
    for (const auto& c : g0->subgroup_classes())
        for (const auto& a : subs) {
            if (!a.is_subset_of(c.rep) || !g0->normalizes(c.rep, a))
                continue;
            const Section sec = make_section(g0, c.rep, a);
            Morphism v = compose(defres(g0, sec), elem);
            if (!v.is_zero())
                out.push_back({sec.quotient, std::move(v)});
        }
    return out;
}

template <class T>
class GroupMemo {
public:
    template <class Make>
    const T& get(const GroupPtr& g, Make make) {
        const auto key = std::make_pair(g->fingerprint(), g->order());
        {
            std::lock_guard lock(mutex_);
            if (auto it = values_.find(key); it != values_.end())
                return *it->second;
        }
        auto value = std::make_unique<T>(make());
        std::lock_guard lock(mutex_);
        auto [it, fresh] = values_.emplace(key, std::move(value));
        return *it->second;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<std::uint64_t, int>, std::unique_ptr<T>> values_;
};

GroupMemo<Lattice> b_delta_cache;

class BurnsideFunctor : public Functor {
public:
    std::string label() const override { return "B"; }
    std::vector<std::string> generator_labels(const GroupPtr& g) const override {
        std::vector<std::string> out;
        for (const auto& c : g->subgroup_classes())
            out.push_back(g->name() + "/[" + std::to_string(c.index) + "]");
        return out;
    }
    AbMap act(const Morphism& u) const override {
        return AbMap{eval(u.source()), eval(u.target()), burnside_action(u)};
    }

protected:
    PresentedAb compute_eval(const GroupPtr& g) const override {
        return PresentedAb(g->subgroup_classes().size());
    }
};

class KFunctor : public Functor {
public:
    std::string label() const override { return "K"; }
    std::vector<std::string> generator_labels(const GroupPtr& g) const override {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < kernel_K(g).rank(); ++i)
            out.push_back("k" + std::to_string(i));
        return out;
    }
    AbMap act(const Morphism& u) const override {
        const Lattice& ks = kernel_K(u.source());
        const Lattice& kt = kernel_K(u.target());
        const Matrix images = multiply(ks.basis(), burnside_action(u));
        Matrix m(kt.rank());
        for (const auto& row : images.rows)
            m.push(kt.coordinates(row));
        return AbMap{eval(u.source()), eval(u.target()), std::move(m)};
    }

protected:
    PresentedAb compute_eval(const GroupPtr& g) const override { return PresentedAb(kernel_K(g).rank()); }
};

class QuotientFunctor : public BurnsideFunctor {
public:
    std::string label() const override { return "BmodBdelta"; }

protected:
    PresentedAb compute_eval(const GroupPtr& g) const override {
        const Lattice& d = b_delta(g);
        return PresentedAb(g->subgroup_classes().size(), d.basis());
    }
};

class RationalImageFunctor : public BurnsideFunctor {
public:
    std::string label() const override { return "RQ"; }

protected:
    PresentedAb compute_eval(const GroupPtr& g) const override {
        return PresentedAb(g->subgroup_classes().size(), kernel_K(g).basis());
    }
};

class ShiftFunctor : public Functor {
public:
    ShiftFunctor(FunctorPtr inner, GroupPtr h) : inner_(std::move(inner)), h_(std::move(h)) {}
    std::string label() const override { return "shift(" + inner_->label() + "," + h_->name() + ")"; }
    std::vector<std::string> generator_labels(const GroupPtr& g) const override {
        return inner_->generator_labels(direct_product(g, h_, product_cap()));
    }
    AbMap act(const Morphism& u) const override { return inner_->act(shift(u, h_)); }

protected:
    PresentedAb compute_eval(const GroupPtr& g) const override {
        return inner_->eval(direct_product(g, h_, product_cap()));
    }

private:
    FunctorPtr inner_;
    GroupPtr h_;
};

} // namespace

const DeltaContext& delta_context(int p) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<DeltaContext>> cache;
    std::lock_guard lock(mutex);
    if (auto it = cache.find(p); it != cache.end())
        return *it->second;
    auto ctx = std::make_unique<DeltaContext>();
    ctx->p = p;
    ctx->x = build_group(p == 2 ? std::string("D8") : "X" + std::to_string(p), product_cap());
    ctx->z = ctx->x->center();
    std::vector<Subgroup> noncentral;
    for (const auto& c : ctx->x->subgroup_classes())
        if (c.rep.size() == p && !(c.rep == ctx->z))
            noncentral.push_back(c.rep);
    if (noncentral.size() < 2)
        throw std::logic_error("delta_context: X has fewer than two noncentral classes of order p");
    ctx->i = noncentral[0];
    ctx->j = noncentral[1];
    ctx->delta = delta_element(ctx->x, ctx->i, ctx->j);
    if (!is_zero(cyclic_marks(ctx->delta)) || ctx->delta.cardinality() != 0)
        throw std::logic_error("delta_context: delta is not in K(X)");
    return *cache.emplace(p, std::move(ctx)).first->second;
}

Morphism delta_element(const GroupPtr& g, const Subgroup& i, const Subgroup& j) {
    const Subgroup z = g->center();
    return Morphism::burnside(g, i) - Morphism::burnside(g, g->generate(i, z)) - Morphism::burnside(g, j) +
           Morphism::burnside(g, g->generate(j, z));
}

Morphism delta_R(const GroupPtr& r) {
    if (classify_rank1(*r) != Rank1Type::Dihedral)
        throw BisetError("delta_R needs a dihedral group of order at least 16");
    std::vector<Subgroup> w;
    for (const auto& c : r->subgroup_classes())
        if (c.rep.size() == 2 && !(c.rep == r->center()))
            w.push_back(c.rep);
    if (w.size() != 2)
        throw std::logic_error("delta_R: expected two classes of reflections");
    return delta_element(r, w[0], w[1]);
}

Lattice subfunctor_eval(const GroupPtr& g0, const Morphism& elem, const GroupPtr& p) {
    const auto pieces = defres_pieces(g0, elem);
    Lattice out(p->subgroup_classes().size());
    const auto subs = all_subgroups(*p);
    std::map<std::pair<std::size_t, const Group*>, std::vector<std::vector<int>>> isos;
    for (const auto& c : p->subgroup_classes())
        for (const auto& s : subs) {
            if (!s.is_subset_of(c.rep) || !p->normalizes(c.rep, s))
                continue;
            const Section sec = make_section(p, c.rep, s);
            const GroupPtr& qt = sec.quotient;
            for (std::size_t k = 0; k < pieces.size(); ++k) {
                if (pieces[k].quotient->order() != qt->order())
                    continue;
                auto key = std::make_pair(k, qt.get());
                auto it = isos.find(key);
                if (it == isos.end())
                    it = isos.emplace(key, all_isomorphisms(*pieces[k].quotient, *qt)).first;
                for (const auto& phi : it->second) {
                    Vec v(out.ambient());
                    for (const auto& [l, coeff] : pieces[k].value.terms()) {
                        Subgroup img(qt->order());
                        for (int x : l.elements())
                            img.insert(phi[static_cast<std::size_t>(x)]);
                        v[static_cast<std::size_t>(p->class_of(sec.preimage(img)))] += coeff;
                    }
                    out.insert(v);
                }
            }
        }
    return out;
}

Lattice subfunctor_eval_full(const GroupPtr& g0, const Morphism& elem, const GroupPtr& p) {
    const Morphism proto(g0, p);
    Lattice out(p->subgroup_classes().size());
    for (const auto& c : proto.ambient()->subgroup_classes())
        out.insert(compose(Morphism::transitive(g0, p, c.rep), elem).dense());
    return out;
}

const Lattice& b_delta(const GroupPtr& p) {
    return b_delta_cache.get(p, [&] {
        const DeltaContext& ctx = delta_context(p->order() == 1 ? 2 : p->prime());
        return subfunctor_eval(ctx.x, ctx.delta, p);
    });
}

Lattice b_epsilon(const GroupPtr& p) {
    const int prime = p->order() == 1 ? 2 : p->prime();
    const GroupPtr e = build_group("E" + std::to_string(prime) + "_2", product_cap());
    return subfunctor_eval(e, epsilon(e), p);
}

KModDelta k_mod_delta(const GroupPtr& p) {
    const Lattice& k = kernel_K(p);
    const Lattice& d = b_delta(p);
    if (!k.contains(d))
        throw std::logic_error("k_mod_delta: B_delta is not contained in K");
    KModDelta out;
    out.invariants = sub_quotient_invariants(d, k);
    out.images_in_k = true;
    Lattice span = d;
    for (const auto& e : genetic_basis(p).entries) {
        if (e.local.quotient_type != Rank1Type::Dihedral)
            continue;
        const Section sec = genetic_section(p, e.local.q);
        Morphism img = compose(indinf(p, sec), delta_R(sec.quotient));
        const Vec v = img.dense();
        out.images_in_k = out.images_in_k && k.contains(v);
        span.insert(v);
        out.basis_images.push_back(std::move(img));
    }
    out.images_span = out.images_in_k && span == k;
    return out;
}

const PresentedAb& Functor::eval(const GroupPtr& g) const {
    const auto key = std::make_pair(g->fingerprint(), g->order());
    {
        std::lock_guard lock(mutex_);
        if (auto it = memo_.find(key); it != memo_.end())
            return *it->second;
    }
    auto value = std::make_unique<PresentedAb>(compute_eval(g));
    std::lock_guard lock(mutex_);
    return *memo_.emplace(key, std::move(value)).first->second;
}

FunctorPtr make_B() { return std::make_shared<BurnsideFunctor>(); }
FunctorPtr make_K() { return std::make_shared<KFunctor>(); }
FunctorPtr make_RQ() { return std::make_shared<RationalImageFunctor>(); }
FunctorPtr make_quotient_BmodBdelta() { return std::make_shared<QuotientFunctor>(); }
FunctorPtr make_shift(FunctorPtr f, GroupPtr h) { return std::make_shared<ShiftFunctor>(std::move(f), std::move(h)); }

FunctorPtr make_functor(std::string_view spec) {
    if (spec == "B")
        return make_B();
    if (spec == "K")
        return make_K();
    if (spec == "RQ")
        return make_RQ();
    if (spec == "BmodBdelta")
        return make_quotient_BmodBdelta();
    if (spec.substr(0, 6) == "shift:") {
        std::string_view rest = spec.substr(6);
        FunctorPtr inner = make_quotient_BmodBdelta();
        if (const auto colon = rest.find(':'); colon != std::string_view::npos) {
            inner = make_functor(rest.substr(colon + 1));
            rest = rest.substr(0, colon);
        }
        return make_shift(inner, build_group(rest));
    }
    throw std::invalid_argument("unknown functor '" + std::string(spec) + "'");
}

namespace {

FaithfulPart faithful_part_impl(const Functor& f, const GroupPtr& p, bool cross_check) {
    const PresentedAb& fp = f.eval(p);
    FaithfulPart out;
    out.idempotent = f.act(faithful_idempotent_center(p)).matrix;
    const Matrix& e = out.idempotent;
    const Lattice rel = fp.relation_lattice();
    const Matrix ee = multiply(e, e);
    for (std::size_t i = 0; i < e.nrows(); ++i) {
        Vec diff = ee.rows[i];
        for (std::size_t j = 0; j < diff.size(); ++j)
            diff[j] -= e.rows[i][j];
        if (!rel.contains(diff))
            throw std::logic_error("faithful_part: f_1 does not act as an idempotent");
    }
    Matrix complement = Matrix::identity(fp.gens);
    for (std::size_t i = 0; i < fp.gens; ++i)
        for (std::size_t j = 0; j < fp.gens; ++j)
            complement.rows[i][j] -= e.rows[i][j];
    out.part = PresentedAb(fp.gens, stack(fp.rels, complement));
    if (!cross_check)
        return out;
    const Lattice image = Lattice::from_rows(stack(e, fp.rels));
    const auto mins = central_order_p(p);
    if (mins.empty()) {
        out.matches_deflation_kernels = image == Lattice::full(fp.gens);
        return out;
    }
    std::vector<PresentedAb> targets;
    Matrix m;
    for (const auto& z : mins) {
        AbMap d = f.act(def(p, z));
        targets.push_back(d.target);
        m = targets.size() == 1 ? d.matrix : hconcat(m, d.matrix);
    }
    const AbMap all{fp, direct_sum(targets), m};
    out.matches_deflation_kernels = all.kernel_lattice() == image;
    return out;
}

} // namespace

FaithfulPart faithful_part(const Functor& f, const GroupPtr& p) { return faithful_part_impl(f, p, true); }

RationalityReport rationality_check(const Functor& f, const GroupPtr& p) {
    return rationality_check(f, genetic_basis(p));
}

RationalityReport rationality_check(const Functor& f, const GeneticBasis& basis) {
    const GroupPtr& p = basis.group;
    std::vector<PresentedAb> parts;
    Matrix m(f.eval(p).gens);
    for (const auto& e : basis.entries) {
        const Section sec = genetic_section(p, e.local.q);
        const FaithfulPart fp = faithful_part_impl(f, sec.quotient, false);
        const AbMap a = f.act(indinf(p, sec));
        for (auto& row : multiply(fp.idempotent, a.matrix).rows)
            m.push(std::move(row));
        parts.push_back(fp.part);
    }
    const AbMap map{direct_sum(parts), f.eval(p), std::move(m)};
    if (!map.well_defined())
        throw std::logic_error("rationality_check: induction-inflation map is not well defined");
    RationalityReport out;
    out.basis_size = basis.entries.size();
    out.kernel = map.kernel_invariants();
    out.cokernel = map.cokernel().invariants();
    out.rational = out.kernel.empty() && out.cokernel.empty();
    return out;
}

bool CaractReport::passed() const {
    for (const auto& r : rows)
        if (!r.condition_i || !r.condition_ii)
            return false;
    return true;
}

CaractReport caract_check(const Functor& f, const std::vector<GroupPtr>& universe) {
    CaractReport out;
    for (const auto& p : universe) {
        CaractRow row;
        row.group = p->name();
        row.center_cyclic = p->is_cyclic(p->center());
        if (!row.center_cyclic)
            row.condition_i = faithful_part_impl(f, p, false).part.is_zero();
        const int prime = p->prime();
        const PresentedAb& fp = f.eval(p);
        for (const auto& e : p->normal_subgroups()) {
            if (e.size() != prime * prime)
                continue;
            bool elementary = true;
            for (int x : e.elements())
                elementary = elementary && p->power(x, prime) == 0;
            if (!elementary)
                continue;
            const Subgroup c = p->centralizer(e);
            const AbMap r = f.act(res(p, c));
            for (const auto& z : central_order_p(p)) {
                if (!z.is_subset_of(e))
                    continue;
                const AbMap d = f.act(def(p, z));
                const AbMap both{fp, direct_sum({r.target, d.target}), hconcat(r.matrix, d.matrix)};
                ++row.pairs;
                if (!both.is_injective())
                    row.condition_ii = false;
            }
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

RatBounds rat_bounds(const Functor& f, const GroupPtr& p) {
    const DeltaContext& ctx = delta_context(p->order() == 1 ? 2 : p->prime());
    RatBounds out;
    const AbMap down = f.act(shift(opposite(ctx.delta), p));
    out.rat_quotient = down.cokernel();
    const AbMap up = f.act(shift(ctx.delta, p));
    out.rat_sub_lattice = up.kernel_lattice();
    out.rat_sub = sub_quotient_invariants(up.source.relation_lattice(), out.rat_sub_lattice);
    return out;
}

MurReport mur_kill_check(const Functor& f, const GroupPtr& p, const GroupPtr& q) {
    const GroupPtr qp = direct_product(q, p, product_cap());
    const Lattice& gens = b_delta(qp);
    MurReport out;
    for (const auto& row : gens.basis().rows) {
        ++out.generators;
        if (!f.act(Morphism::from_dense(p, q, row)).is_zero())
            ++out.nonzero;
    }
    return out;
}

} // namespace bfk
