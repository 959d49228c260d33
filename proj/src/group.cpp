#include "bfk/group.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace bfk {

namespace {

bool is_prime_power(int n, int p) {
    if (n < 1 || p < 2)
        return n == 1;
    while (n % p == 0)
        n /= p;
    return n == 1;
}

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

} // namespace

GroupPtr Group::from_table(std::string name, int prime, std::vector<int> table) {
    const auto n2 = table.size();
    int n = 0;
    while (static_cast<std::size_t>(n) * static_cast<std::size_t>(n) < n2)
        ++n;
    if (n == 0 || static_cast<std::size_t>(n) * static_cast<std::size_t>(n) != n2)
        throw GroupError("multiplication table is not square");
    if (!is_prime_power(n, prime))
        throw GroupError("order " + std::to_string(n) + " is not a power of " + std::to_string(prime));
    for (int v : table)
        if (v < 0 || v >= n)
            throw GroupError("table entry out of range");
    for (int a = 0; a < n; ++a) {
        if (table[static_cast<std::size_t>(a)] != a || table[static_cast<std::size_t>(a) * n] != a)
            throw GroupError("element 0 is not the identity");
    }
    // Rows and columns are permutations.
    std::vector<char> seen(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int b = 0; b < n; ++b) {
            auto& s = seen[static_cast<std::size_t>(table[static_cast<std::size_t>(a) * n + b])];
            if (s)
                throw GroupError("table row is not a permutation");
            s = 1;
        }
    }
    auto at = [&](int a, int b) { return table[static_cast<std::size_t>(a) * n + b]; };
    if (n <= 64) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (at(at(a, b), c) != at(a, at(b, c)))
                        throw GroupError("multiplication is not associative");
    } else {
        std::mt19937 rng(12345);
        std::uniform_int_distribution<int> pick(0, n - 1);
        for (int i = 0; i < 20000; ++i) {
            const int a = pick(rng), b = pick(rng), c = pick(rng);
            if (at(at(a, b), c) != at(a, at(b, c)))
                throw GroupError("multiplication is not associative");
        }
    }
    std::shared_ptr<Group> g(new Group());
    g->name_ = std::move(name);
    g->order_ = n;
    g->prime_ = prime;
    g->table_ = std::move(table);
    g->finish_setup();
    return g;
}

GroupPtr Group::make_product(GroupPtr left, GroupPtr right, std::string name) {
    std::shared_ptr<Group> g(new Group());
    g->name_ = std::move(name);
    g->order_ = left->order() * right->order();
    g->prime_ = left->order() > 1 ? left->prime() : right->prime();
    g->left_ = std::move(left);
    g->right_ = std::move(right);
    if (g->order_ <= kTableLimit) {
        const int n = g->order_;
        g->table_.resize(static_cast<std::size_t>(n) * n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                g->table_[static_cast<std::size_t>(a) * n + b] = g->product_mul(a, b);
    }
    g->finish_setup();
    return g;
}

int Group::product_mul(int a, int b) const {
    const int nr = right_->order();
    return left_->mul(a / nr, b / nr) * nr + right_->mul(a % nr, b % nr);
}

void Group::finish_setup() {
    const int n = order_;
    inv_.assign(static_cast<std::size_t>(n), -1);
    if (left_ && table_.empty()) {
        const int nr = right_->order();
        for (int a = 0; a < n; ++a)
            inv_[static_cast<std::size_t>(a)] = left_->inv(a / nr) * nr + right_->inv(a % nr);
    } else {
        for (int a = 0; a < n; ++a) {
            if (inv_[static_cast<std::size_t>(a)] >= 0)
                continue;
            for (int b = 0; b < n; ++b)
                if (mul(a, b) == 0) {
                    inv_[static_cast<std::size_t>(a)] = b;
                    inv_[static_cast<std::size_t>(b)] = a;
                    break;
                }
        }
    }
    elem_order_.assign(static_cast<std::size_t>(n), 0);
    for (int a = 0; a < n; ++a) {
        if (left_ && table_.empty()) {
            const int nr = right_->order();
            elem_order_[static_cast<std::size_t>(a)] =
                std::lcm(left_->elem_order(a / nr), right_->elem_order(a % nr));
            continue;
        }
        int k = 1;
        for (int x = a; x != 0; x = mul(x, a))
            ++k;
        elem_order_[static_cast<std::size_t>(a)] = k;
    }
    if (n <= kTableLimit) {
        conj_.resize(static_cast<std::size_t>(n) * n);
        for (int g = 0; g < n; ++g) {
            const int gi = inv(g);
            for (int x = 0; x < n; ++x)
                conj_[static_cast<std::size_t>(g) * n + x] = mul(mul(gi, x), g);
        }
    }
    std::uint64_t h = 1469598103934665603ULL ^ static_cast<std::uint64_t>(n);
    if (!table_.empty()) {
        for (int v : table_)
            h = mix(h, static_cast<std::uint64_t>(v));
    } else {
        h = mix(mix(h, left_->fingerprint()), right_->fingerprint());
    }
    fingerprint_ = h;
}

int Group::power(int a, long long k) const {
    const int o = elem_order(a);
    k %= o;
    if (k < 0)
        k += o;
    int r = 0;
    for (long long i = 0; i < k; ++i)
        r = mul(r, a);
    return r;
}

int Group::exponent() const {
    int e = 1;
    for (int a = 0; a < order_; ++a)
        e = std::lcm(e, elem_order(a));
    return e;
}

Subgroup Group::trivial() const {
    Subgroup s(order_);
    s.insert(0);
    return s;
}

Subgroup Group::whole() const {
    Subgroup s(order_);
    for (int a = 0; a < order_; ++a)
        s.insert(a);
    return s;
}

Subgroup Group::generate(std::span<const int> gens) const {
    Subgroup s(order_);
    s.insert(0);
    std::vector<int> queue{0};
    for (std::size_t i = 0; i < queue.size(); ++i) {
        const int x = queue[i];
        for (int g : gens) {
            const int y = mul(x, g);
            if (s.insert(y))
                queue.push_back(y);
        }
    }
    return s;
}

const std::vector<int>& Group::generators() const {
    std::call_once(gens_once_, [this] {
        Subgroup acc = trivial();
        for (int e = 0; e < order_ && acc.size() < order_; ++e)
            if (!acc.contains(e)) {
                gens_.push_back(e);
                acc = generate(gens_);
            }
    });
    return gens_;
}

Subgroup Group::generate(const Subgroup& a, const Subgroup& b) const {
    std::vector<int> gens;
    Subgroup cur = a;
    // Greedily add elements of b not yet reached; each step is a closure.
    for (int e : b.elements()) {
        if (cur.contains(e))
            continue;
        if (gens.empty()) {
            // seed with a generating set of a
            Subgroup acc = trivial();
            for (int x : a.elements())
                if (!acc.contains(x)) {
                    gens.push_back(x);
                    acc = generate(gens);
                }
        }
        gens.push_back(e);
        cur = generate(gens);
    }
    return cur;
}

bool Group::is_subgroup(const Subgroup& s) const {
    if (s.universe() != order_ || !s.contains(0))
        return false;
    const auto el = s.elements();
    for (int a : el)
        for (int b : el)
            if (!s.contains(mul(a, inv(b))))
                return false;
    return true;
}

Subgroup Group::conjugate(const Subgroup& s, int g) const {
    Subgroup out(order_);
    for (int x : s.elements())
        out.insert(conj(x, g));
    return out;
}

bool Group::normalizes(const Subgroup& t, const Subgroup& s) const {
    const auto el = s.elements();
    for (int g : t.elements())
        for (int x : el)
            if (!s.contains(conj(x, g)))
                return false;
    return true;
}

Subgroup Group::normalizer(const Subgroup& s) const {
    Subgroup out(order_);
    const auto el = s.elements();
    for (int g = 0; g < order_; ++g) {
        bool ok = true;
        for (int x : el)
            if (!s.contains(conj(x, g))) {
                ok = false;
                break;
            }
        if (ok)
            out.insert(g);
    }
    return out;
}

namespace {

std::vector<int> small_generating_set(const Group& g, const Subgroup& s) {
    std::vector<int> gens;
    Subgroup acc = g.trivial();
    auto el = s.elements();
    std::stable_sort(el.begin(), el.end(),
                     [&](int a, int b) { return g.elem_order(a) > g.elem_order(b); });
    for (int x : el) {
        if (acc.size() == s.size())
            break;
        if (!acc.contains(x)) {
            gens.push_back(x);
            acc = g.generate(gens);
        }
    }
    return gens;
}

} // namespace

Subgroup Group::centralizer(const Subgroup& s) const {
    const auto gens = small_generating_set(*this, s);
    Subgroup out(order_);
    for (int g = 0; g < order_; ++g) {
        bool ok = true;
        for (int x : gens)
            if (mul(g, x) != mul(x, g)) {
                ok = false;
                break;
            }
        if (ok)
            out.insert(g);
    }
    return out;
}

Subgroup Group::center() const { return centralizer(whole()); }

bool Group::is_cyclic(const Subgroup& s) const {
    for (int x : s.elements())
        if (elem_order(x) == s.size())
            return true;
    return false;
}

bool Group::is_abelian(const Subgroup& s) const {
    const auto gens = small_generating_set(*this, s);
    for (int a : gens)
        for (int b : gens)
            if (mul(a, b) != mul(b, a))
                return false;
    return true;
}

Subgroup Group::product_set(const Subgroup& a, const Subgroup& b) const {
    Subgroup out(order_);
    const auto eb = b.elements();
    for (int x : a.elements())
        for (int y : eb)
            out.insert(mul(x, y));
    return out;
}

Subgroup Group::commutator_subgroup() const {
    std::vector<int> comms;
    Subgroup seen(order_);
    const auto gens = small_generating_set(*this, whole());
    for (int a = 0; a < order_; ++a)
        for (int b : gens) {
            const int c = mul(mul(inv(a), inv(b)), mul(a, b));
            if (seen.insert(c))
                comms.push_back(c);
        }
    // Normal closure of commutators of generators with everything.
    Subgroup d = generate(comms);
    for (;;) {
        std::vector<int> more = d.elements();
        bool grew = false;
        for (int x : d.elements())
            for (int g : gens) {
                const int y = conj(x, g);
                if (!d.contains(y)) {
                    more.push_back(y);
                    grew = true;
                }
            }
        if (!grew)
            return d;
        d = generate(more);
    }
}

Subgroup Group::canonical(const Subgroup& s) const {
    if (classes_ready())
        return classes_->classes[static_cast<std::size_t>(class_of(s))].rep;
    {
        std::lock_guard lock(canon_mutex_);
        if (auto it = canon_memo_.find(s); it != canon_memo_.end())
            return it->second;
    }
    Subgroup best = s;
    const auto el = s.elements();
    Subgroup norm(order_);
    for (int g = 0; g < order_; ++g) {
        if (norm.contains(g))
            continue;
        Subgroup c(order_);
        for (int x : el)
            c.insert(conj(x, g));
        if (c == s) {
            norm.insert(g);
            continue;
        }
        if (key_less(c, best))
            best = std::move(c);
    }
    std::lock_guard lock(canon_mutex_);
    canon_memo_.emplace(s, best);
    return best;
}

bool Group::are_conjugate(const Subgroup& a, const Subgroup& b) const {
    if (a.size() != b.size())
        return false;
    return canonical(a) == canonical(b);
}

bool Group::classes_ready() const { return classes_ != nullptr; }

const std::vector<SubgroupClass>& Group::subgroup_classes() const {
    std::call_once(classes_once_, [this] { build_classes(); });
    return classes_->classes;
}

const std::vector<Subgroup>& Group::class_members(int index) const {
    subgroup_classes();
    return classes_->members.at(static_cast<std::size_t>(index));
}

int Group::class_of(const Subgroup& s) const {
    subgroup_classes();
    auto it = classes_->lookup.find(s);
    if (it == classes_->lookup.end())
        throw GroupError("not a subgroup of " + name_);
    return it->second;
}

std::vector<Subgroup> Group::normal_subgroups() const {
    std::vector<Subgroup> out;
    for (const auto& c : subgroup_classes())
        if (c.size == 1)
            out.push_back(c.rep);
    return out;
}

void Group::build_classes() const {
    // Cyclic extension: every subgroup of order p^k contains a normal subgroup
    // of index p, so all classes arise as <H, g> with H a class representative
    // of order p^(k-1), g in N(H) and g^p in H.
    struct Raw {
        std::vector<Subgroup> members;
        Subgroup normalizer;
    };
    std::vector<Raw> raw;
    std::unordered_map<Subgroup, int, SubgroupHash> lookup;

    auto add_class = [&](const Subgroup& s) {
        Raw r;
        r.normalizer = Subgroup(order_);
        const auto el = s.elements();
        Subgroup done(order_); // elements g already accounted for via N(s)-cosets
        for (int g = 0; g < order_; ++g) {
            if (done.contains(g))
                continue;
            Subgroup c(order_);
            for (int x : el)
                c.insert(conj(x, g));
            if (c == s)
                r.normalizer.insert(g);
            if (std::find(r.members.begin(), r.members.end(), c) == r.members.end())
                r.members.push_back(std::move(c));
        }
        const int id = static_cast<int>(raw.size());
        for (const auto& m : r.members)
            lookup.emplace(m, id);
        raw.push_back(std::move(r));
        return id;
    };

    add_class(trivial());
    const int p = prime_ > 0 ? prime_ : 2;
    std::vector<int> layer{0};
    while (!layer.empty()) {
        std::vector<int> next;
        for (int id : layer) {
            const Subgroup h = raw[static_cast<std::size_t>(id)].members.front();
            const Subgroup norm = raw[static_cast<std::size_t>(id)].normalizer;
            Subgroup visited = h;
            const auto hel = h.elements();
            for (int g : norm.elements()) {
                if (visited.contains(g))
                    continue;
                for (int x : hel)
                    visited.insert(mul(g, x));
                if (!h.contains(power(g, p)))
                    continue;
                Subgroup k = h;
                int gi = 0;
                for (int i = 1; i < p; ++i) {
                    gi = mul(gi, g);
                    for (int x : hel)
                        k.insert(mul(gi, x));
                }
                if (lookup.count(k))
                    continue;
                next.push_back(add_class(k));
            }
        }
        layer = std::move(next);
    }

    auto cache = std::make_unique<ClassCache>();
    std::vector<int> order(raw.size());
    std::vector<Subgroup> reps(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        reps[i] = *std::min_element(raw[i].members.begin(), raw[i].members.end(), KeyLess{});
        order[i] = static_cast<int>(i);
    }
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return key_less(reps[static_cast<std::size_t>(a)], reps[static_cast<std::size_t>(b)]); });
    std::vector<int> new_index(raw.size());
    for (std::size_t k = 0; k < order.size(); ++k)
        new_index[static_cast<std::size_t>(order[k])] = static_cast<int>(k);
    cache->classes.resize(raw.size());
    cache->members.resize(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const auto k = static_cast<std::size_t>(new_index[i]);
        SubgroupClass& c = cache->classes[k];
        c.index = static_cast<int>(k);
        c.rep = reps[i];
        c.size = static_cast<int>(raw[i].members.size());
        // normalizer was computed for the first member; recompute for the rep
        c.normalizer = normalizer(c.rep);
        c.cyclic = is_cyclic(c.rep);
        auto members = std::move(raw[i].members);
        std::sort(members.begin(), members.end(), KeyLess{});
        cache->members[k] = std::move(members);
    }
    for (auto& [s, id] : lookup)
        cache->lookup.emplace(s, new_index[static_cast<std::size_t>(id)]);
    classes_ = std::move(cache);
}

Subgroup Section::image(const Subgroup& u) const {
    Subgroup out(quotient->order());
    for (int x : u.elements()) {
        const int q = proj[static_cast<std::size_t>(x)];
        if (q < 0)
            throw GroupError("subgroup is not contained in the section top");
        out.insert(q);
    }
    return out;
}

Subgroup Section::preimage(const Subgroup& v) const {
    Subgroup out(static_cast<int>(proj.size()));
    for (std::size_t x = 0; x < proj.size(); ++x)
        if (proj[x] >= 0 && v.contains(proj[x]))
            out.insert(static_cast<int>(x));
    return out;
}

Section make_section(const GroupPtr& g, const Subgroup& top, const Subgroup& bottom) {
    if (!bottom.is_subset_of(top))
        throw GroupError("section bottom is not contained in top");
    if (!g->is_subgroup(top) || !g->is_subgroup(bottom))
        throw GroupError("section members must be subgroups");
    if (!g->normalizes(top, bottom))
        throw GroupError("section bottom is not normal in top");
    Section sec;
    sec.top = top;
    sec.bottom = bottom;
    sec.proj.assign(static_cast<std::size_t>(g->order()), -1);
    const auto bel = bottom.elements();
    for (int t : top.elements()) {
        if (sec.proj[static_cast<std::size_t>(t)] >= 0)
            continue;
        const int id = static_cast<int>(sec.lift.size());
        sec.lift.push_back(t);
        for (int s : bel)
            sec.proj[static_cast<std::size_t>(g->mul(t, s))] = id;
    }
    const int m = static_cast<int>(sec.lift.size());
    std::vector<int> table(static_cast<std::size_t>(m) * m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            table[static_cast<std::size_t>(a) * m + b] =
                sec.proj[static_cast<std::size_t>(g->mul(sec.lift[static_cast<std::size_t>(a)], sec.lift[static_cast<std::size_t>(b)]))];
    std::string name = g->name() + "[" + std::to_string(top.size()) + "/" + std::to_string(bottom.size()) + "]";
    if (top.size() == g->order() && bottom.size() == 1)
        name = g->name();
    sec.quotient = intern(Group::from_table(std::move(name), g->prime() > 0 ? g->prime() : 2, std::move(table)));
    return sec;
}

LocalData local_data(const GroupPtr& p, const Subgroup& q) {
    LocalData d;
    d.q = q;
    d.normalizer = p->normalizer(q);
    d.centralizer = p->centralizer(q);
    const auto ngens = small_generating_set(*p, d.normalizer);
    d.zq = Subgroup(p->order());
    for (int n : d.normalizer.elements()) {
        bool central = true;
        for (int m : ngens) {
            const int c = p->mul(p->mul(p->inv(n), p->inv(m)), p->mul(n, m));
            if (!q.contains(c)) {
                central = false;
                break;
            }
        }
        if (central)
            d.zq.insert(n);
    }
    const int prime = p->prime() > 0 ? p->prime() : 2;
    d.qhat = Subgroup(p->order());
    for (int n : d.zq.elements())
        if (q.contains(p->power(n, prime)))
            d.qhat.insert(n);
    d.qhat_valid = d.qhat.size() <= q.size() * prime;
    const Section sec = make_section(p, d.normalizer, q);
    d.quotient_type = classify_rank1(*sec.quotient);
    return d;
}

} // namespace bfk
