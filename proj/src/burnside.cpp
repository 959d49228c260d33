#include "bfk/burnside.hpp"

#include <map>
#include <mutex>

namespace bfk {

namespace {

template <class T>
class GroupCache {
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

GroupCache<Matrix> marks_cache;
GroupCache<Lattice> k_cache;

} // namespace

Integer mark(const Group& g, int r_class, int q_class) {
    const auto& classes = g.subgroup_classes();
    const auto& r = classes[static_cast<std::size_t>(r_class)];
    const auto& q = classes[static_cast<std::size_t>(q_class)].rep;
    if (r.rep.size() > q.size() || q.size() % r.rep.size() != 0)
        return 0;
    long contained = 0;
    for (const auto& m : g.class_members(r_class))
        if (m.is_subset_of(q))
            ++contained;
    return Integer(contained * r.normalizer.size() / q.size());
}

const Matrix& marks_matrix(const GroupPtr& g) {
    return marks_cache.get(g, [&] {
        const auto n = g->subgroup_classes().size();
        Matrix m(n, n);
        for (std::size_t q = 0; q < n; ++q)
            for (std::size_t r = 0; r <= q; ++r)
                m.rows[q][r] = mark(*g, static_cast<int>(r), static_cast<int>(q));
        return m;
    });
}

std::vector<int> cyclic_classes(const Group& g) {
    std::vector<int> out;
    for (const auto& c : g.subgroup_classes())
        if (c.cyclic)
            out.push_back(c.index);
    return out;
}

Matrix cyclic_marks_matrix(const GroupPtr& g) {
    const Matrix& m = marks_matrix(g);
    const auto cyc = cyclic_classes(*g);
    Matrix out(m.nrows(), cyc.size());
    for (std::size_t i = 0; i < m.nrows(); ++i)
        for (std::size_t j = 0; j < cyc.size(); ++j)
            out.rows[i][j] = m.rows[i][static_cast<std::size_t>(cyc[j])];
    return out;
}

Vec marks(const Morphism& x) { return row_times(x.dense(), marks_matrix(x.ambient())); }

Vec cyclic_marks(const Morphism& x) { return row_times(x.dense(), cyclic_marks_matrix(x.ambient())); }

const Lattice& kernel_K(const GroupPtr& g) {
    return k_cache.get(g, [&] { return Lattice::from_rows(left_kernel(cyclic_marks_matrix(g))); });
}

Morphism epsilon(const GroupPtr& e) {
    const int p = e->prime();
    if (e->order() != p * p || e->exponent() != p)
        throw BisetError("epsilon needs an elementary abelian group of rank 2");
    Morphism out = Morphism::burnside(e, e->trivial());
    for (const auto& c : e->subgroup_classes())
        if (c.rep.size() == p)
            out.add(c.rep, -1);
    out.add(e->whole(), p);
    return out;
}

Morphism decompose_action(const GroupPtr& g, const std::vector<std::vector<int>>& action) {
    if (static_cast<int>(action.size()) != g->order())
        throw BisetError("action table must have one row per group element");
    const std::size_t n = action.empty() ? 0 : action[0].size();
    for (const auto& row : action) {
        if (row.size() != n)
            throw BisetError("action rows have different lengths");
        for (int x : row)
            if (x < 0 || static_cast<std::size_t>(x) >= n)
                throw BisetError("action sends a point outside the set");
    }
    for (std::size_t x = 0; x < n; ++x)
        if (action[0][x] != static_cast<int>(x))
            throw BisetError("identity does not act trivially");
    for (int a = 0; a < g->order(); ++a)
        for (int b = 0; b < g->order(); ++b)
            for (std::size_t x = 0; x < n; ++x)
                if (action[static_cast<std::size_t>(g->mul(a, b))][x] !=
                    action[static_cast<std::size_t>(a)][static_cast<std::size_t>(action[static_cast<std::size_t>(b)][x])])
                    throw BisetError("table is not a left action");
    Morphism out(trivial_group(), g);
    std::vector<char> seen(n, 0);
    for (std::size_t x = 0; x < n; ++x) {
        if (seen[x])
            continue;
        Subgroup stab(g->order());
        for (int a = 0; a < g->order(); ++a) {
            seen[static_cast<std::size_t>(action[static_cast<std::size_t>(a)][x])] = 1;
            if (action[static_cast<std::size_t>(a)][x] == static_cast<int>(x))
                stab.insert(a);
        }
        out.add(stab, 1);
    }
    return out;
}

} // namespace bfk
