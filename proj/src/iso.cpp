#include "bfk/group.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace bfk {

namespace {

std::vector<int> order_profile(const Group& g) {
    std::vector<int> hist(static_cast<std::size_t>(g.order()) + 1, 0);
    for (int a = 0; a < g.order(); ++a)
        ++hist[static_cast<std::size_t>(g.elem_order(a))];
    return hist;
}

bool same_invariants(const Group& g, const Group& h) {
    if (g.order() != h.order())
        return false;
    if (order_profile(g) != order_profile(h))
        return false;
    if (g.center().size() != h.center().size())
        return false;
    return g.commutator_subgroup().size() == h.commutator_subgroup().size();
}

std::vector<int> greedy_generators(const Group& g) {
    std::vector<int> el(static_cast<std::size_t>(g.order()));
    for (int a = 0; a < g.order(); ++a)
        el[static_cast<std::size_t>(a)] = a;
    std::stable_sort(el.begin(), el.end(), [&](int a, int b) { return g.elem_order(a) > g.elem_order(b); });
    std::vector<int> gens;
    Subgroup acc = g.trivial();
    for (int x : el) {
        if (acc.size() == g.order())
            break;
        if (!acc.contains(x)) {
            gens.push_back(x);
            acc = g.generate(gens);
        }
    }
    return gens;
}

// Backtracking over generator images; calls `found` with each complete
// isomorphism and stops when it returns false.
void search(const Group& g, const Group& h, const std::function<bool(const std::vector<int>&)>& found) {
    if (!same_invariants(g, h))
        return;
    const auto gens = greedy_generators(g);
    const int n = g.order();
    std::vector<int> images(gens.size(), 0);

    // Map on <gens[0..j)> consistent with the chosen images; empty on failure.
    auto build = [&](std::size_t j) -> std::vector<int> {
        std::vector<int> f(static_cast<std::size_t>(n), -1);
        std::vector<char> used(static_cast<std::size_t>(n), 0);
        f[0] = 0;
        used[0] = 1;
        std::vector<int> queue{0};
        for (std::size_t q = 0; q < queue.size(); ++q) {
            const int x = queue[q];
            for (std::size_t i = 0; i < j; ++i) {
                const int y = g.mul(x, gens[i]);
                const int fy = h.mul(f[static_cast<std::size_t>(x)], images[i]);
                if (f[static_cast<std::size_t>(y)] < 0) {
                    if (used[static_cast<std::size_t>(fy)])
                        return {};
                    f[static_cast<std::size_t>(y)] = fy;
                    used[static_cast<std::size_t>(fy)] = 1;
                    queue.push_back(y);
                } else if (f[static_cast<std::size_t>(y)] != fy) {
                    return {};
                }
            }
        }
        return f;
    };

    std::vector<std::vector<int>> candidates(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (int b = 0; b < h.order(); ++b)
            if (h.elem_order(b) == g.elem_order(gens[i]))
                candidates[i].push_back(b);

    bool stop = false;
    std::function<void(std::size_t)> rec = [&](std::size_t j) {
        if (stop)
            return;
        if (j == gens.size()) {
            auto f = build(j);
            if (!f.empty() && !found(f))
                stop = true;
            return;
        }
        for (int b : candidates[j]) {
            images[j] = b;
            if (build(j + 1).empty())
                continue;
            rec(j + 1);
            if (stop)
                return;
        }
    };
    if (n == 1) {
        found({0});
        return;
    }
    rec(0);
}

} // namespace

std::optional<std::vector<int>> find_isomorphism(const Group& g, const Group& h) {
    std::optional<std::vector<int>> out;
    search(g, h, [&](const std::vector<int>& f) {
        out = f;
        return false;
    });
    return out;
}

std::vector<std::vector<int>> all_isomorphisms(const Group& g, const Group& h) {
    std::vector<std::vector<int>> out;
    search(g, h, [&](const std::vector<int>& f) {
        out.push_back(f);
        return true;
    });
    return out;
}

bool is_isomorphic(const Group& g, const Group& h) { return find_isomorphism(g, h).has_value(); }

const char* to_string(Rank1Type t) {
    switch (t) {
    case Rank1Type::Cyclic:
        return "Cyclic";
    case Rank1Type::Quaternion:
        return "Quaternion";
    case Rank1Type::Dihedral:
        return "Dihedral";
    case Rank1Type::Semidihedral:
        return "Semidihedral";
    case Rank1Type::NotRank1:
        break;
    }
    return "Other";
}

Rank1Type classify_rank1(const Group& g) {
    if (g.is_cyclic(g.whole()))
        return Rank1Type::Cyclic;
    const int n = g.order();
    if (g.prime() != 2 || n < 8)
        return Rank1Type::NotRank1;
    const std::size_t cap = static_cast<std::size_t>(n);
    if (is_isomorphic(g, *build_group("Q" + std::to_string(n), cap)))
        return Rank1Type::Quaternion;
    if (n >= 16) {
        if (is_isomorphic(g, *build_group("D" + std::to_string(n), cap)))
            return Rank1Type::Dihedral;
        if (is_isomorphic(g, *build_group("SD" + std::to_string(n), cap)))
            return Rank1Type::Semidihedral;
    }
    return Rank1Type::NotRank1;
}

} // namespace bfk
