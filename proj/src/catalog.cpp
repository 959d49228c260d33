#include <unordered_map>
#include "bfk/group.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <map>
#include <mutex>

namespace bfk {

namespace {

std::recursive_mutex registry_mutex;
std::map<std::string, GroupPtr, std::less<>> registry;
std::unordered_map<const Group*, std::string> spec_of; // first spec that produced each group
std::map<std::pair<const Group*, const Group*>, GroupPtr> products;
std::unordered_map<std::uint64_t, std::vector<GroupPtr>> interned;
std::atomic<std::size_t> product_cap_value{4096};

bool same_table(const Group& a, const Group& b) {
    if (a.order() != b.order() || a.prime() != b.prime())
        return false;
    for (int x = 0; x < a.order(); ++x)
        for (int y = 0; y < a.order(); ++y)
            if (a.mul(x, y) != b.mul(x, y))
                return false;
    return true;
}

// Smallest prime factor p and exponent k with n = p^k, or {0,0}.
std::pair<int, int> prime_power(long long n) {
    if (n < 2)
        return {0, 0};
    int p = 2;
    while (static_cast<long long>(p) * p <= n && n % p != 0)
        ++p;
    if (n % p != 0)
        p = static_cast<int>(n);
    int k = 0;
    while (n % p == 0) {
        n /= p;
        ++k;
    }
    if (n != 1)
        return {0, 0};
    return {p, k};
}

long long parse_number(std::string_view s, std::string_view spec) {
    if (s.empty() || s.size() > 9)
        throw GroupError("bad group parameter in '" + std::string(spec) + "'");
    long long v = 0;
    for (char c : s) {
        if (c < '0' || c > '9')
            throw GroupError("bad group parameter in '" + std::string(spec) + "'");
        v = v * 10 + (c - '0');
    }
    return v;
}

void check_cap(long long order, std::size_t cap, std::string_view spec) {
    if (order > static_cast<long long>(cap))
        throw CapExceeded("group " + std::string(spec) + " of order " + std::to_string(order) +
                          " exceeds the order cap " + std::to_string(cap));
}

template <class Mul>
GroupPtr from_rule(std::string name, int prime, int n, Mul mul) {
    std::vector<int> table(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            table[static_cast<std::size_t>(a) * n + b] = mul(a, b);
    return intern(Group::from_table(std::move(name), prime, std::move(table)));
}

GroupPtr cyclic(int n, std::string name) {
    const int p = n == 1 ? 2 : prime_power(n).first;
    return from_rule(std::move(name), p, n, [n](int a, int b) { return (a + b) % n; });
}

// r^i s^e has index i + m*e; s r s^-1 = r^k, s^2 = r^sq.
GroupPtr metacyclic2(std::string name, int m, int k, int sq) {
    auto mul = [m, k, sq](int a, int b) {
        const int i = a % m, e = a / m, j = b % m, f = b / m;
        int jj = e ? (j * k) % m : j;
        int r = (i + jj) % m;
        int s = e + f;
        if (s == 2) {
            s = 0;
            r = (r + sq) % m;
        }
        return r + m * s;
    };
    return from_rule(std::move(name), 2, 2 * m, mul);
}

GroupPtr elementary(int p, int k, std::string name) {
    int n = 1;
    for (int i = 0; i < k; ++i)
        n *= p;
    auto mul = [p, k](int a, int b) {
        int out = 0, scale = 1;
        for (int i = 0; i < k; ++i) {
            out += ((a % p + b % p) % p) * scale;
            a /= p;
            b /= p;
            scale *= p;
        }
        return out;
    };
    return from_rule(std::move(name), p, n, mul);
}

// Upper unitriangular [[1,a,b],[0,1,c],[0,0,1]] with index (a*p+b)*p+c.
GroupPtr unitriangular(int p, std::string name) {
    auto mul = [p](int x, int y) {
        const int a = x / (p * p), b = (x / p) % p, c = x % p;
        const int a2 = y / (p * p), b2 = (y / p) % p, c2 = y % p;
        return (((a + a2) % p) * p + (b + b2 + a * c2) % p) * p + (c + c2) % p;
    };
    return from_rule(std::move(name), p, p * p * p, mul);
}

std::string_view strip_parens(std::string_view s) {
    while (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
        int depth = 0;
        bool wraps = true;
        for (std::size_t i = 0; i < s.size(); ++i) {
            depth += s[i] == '(' ? 1 : s[i] == ')' ? -1 : 0;
            if (depth == 0 && i + 1 < s.size()) {
                wraps = false;
                break;
            }
        }
        if (!wraps)
            break;
        s = s.substr(1, s.size() - 2);
    }
    return s;
}

std::size_t top_level_x(std::string_view s) {
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(')
            ++depth;
        else if (s[i] == ')')
            --depth;
        else if (s[i] == 'x' && depth == 0)
            return i;
    }
    return std::string_view::npos;
}

GroupPtr build_family(std::string_view spec, std::size_t cap) {
    auto fail = [&]() -> GroupPtr { throw GroupError("unknown group '" + std::string(spec) + "'"); };
    if (spec.empty())
        return fail();
    const std::string name(spec);
    if (spec.substr(0, 2) == "SD") {
        const long long n = parse_number(spec.substr(2), spec);
        if (prime_power(n).first != 2 || n < 16)
            throw GroupError("semidihedral groups need order a power of 2 at least 16: '" + name + "'");
        check_cap(n, cap, spec);
        const int m = static_cast<int>(n / 2);
        return metacyclic2(name, m, m / 2 - 1, 0);
    }
    switch (spec[0]) {
    case 'C': {
        const long long n = parse_number(spec.substr(1), spec);
        if (n != 1 && prime_power(n).first == 0)
            throw GroupError("cyclic group order must be a prime power: '" + name + "'");
        check_cap(n, cap, spec);
        return cyclic(static_cast<int>(n), name);
    }
    case 'D': {
        const long long n = parse_number(spec.substr(1), spec);
        if (prime_power(n).first != 2 || n < 4)
            throw GroupError("dihedral groups need order a power of 2 at least 4: '" + name + "'");
        check_cap(n, cap, spec);
        const int m = static_cast<int>(n / 2);
        return metacyclic2(name, m, m - 1, 0);
    }
    case 'Q': {
        const long long n = parse_number(spec.substr(1), spec);
        if (prime_power(n).first != 2 || n < 8)
            throw GroupError("quaternion groups need order a power of 2 at least 8: '" + name + "'");
        check_cap(n, cap, spec);
        const int m = static_cast<int>(n / 2);
        return metacyclic2(name, m, m - 1, m / 2);
    }
    case 'E': {
        const auto us = spec.find('_');
        long long p = 0, k = 0;
        if (us != std::string_view::npos) {
            p = parse_number(spec.substr(1, us - 1), spec);
            k = parse_number(spec.substr(us + 1), spec);
            if (prime_power(p) != std::pair<int, int>{static_cast<int>(p), 1} || k < 1)
                throw GroupError("elementary abelian needs a prime and a positive rank: '" + name + "'");
        } else {
            const auto [q, e] = prime_power(parse_number(spec.substr(1), spec));
            if (q == 0)
                throw GroupError("elementary abelian order must be a prime power: '" + name + "'");
            p = q;
            k = e;
        }
        long long n = 1;
        for (long long i = 0; i < k; ++i) {
            n *= p;
            check_cap(n, cap, spec);
        }
        return elementary(static_cast<int>(p), static_cast<int>(k), name);
    }
    case 'X': {
        const long long p = parse_number(spec.substr(1), spec);
        if (prime_power(p) != std::pair<int, int>{static_cast<int>(p), 1})
            throw GroupError("X<p> needs a prime: '" + name + "'");
        check_cap(p * p * p, cap, spec);
        if (p == 2)
            return build_group("D8", cap);
        return unitriangular(static_cast<int>(p), name);
    }
    default:
        return fail();
    }
}

} // namespace

GroupPtr trivial_group() { return build_group("C1"); }

GroupPtr intern(GroupPtr g) {
    std::lock_guard lock(registry_mutex);
    auto& bucket = interned[g->fingerprint()];
    for (const auto& h : bucket)
        if (h.get() == g.get() || same_table(*h, *g))
            return h;
    bucket.push_back(g);
    return g;
}

std::size_t product_cap() { return product_cap_value.load(); }
void set_product_cap(std::size_t cap) { product_cap_value.store(cap); }

GroupPtr build_group(std::string_view spec, std::size_t cap) {
    spec = strip_parens(spec);
    std::lock_guard lock(registry_mutex);
    if (auto it = registry.find(spec); it != registry.end()) {
        check_cap(it->second->order(), cap, spec);
        return it->second;
    }
    GroupPtr g;
    const auto x = top_level_x(spec);
    if (x != std::string_view::npos) {
        if (x == 0 || x + 1 == spec.size())
            throw GroupError("malformed product '" + std::string(spec) + "'");
        auto a = build_group(spec.substr(0, x), cap);
        auto b = build_group(spec.substr(x + 1), cap);
        g = direct_product(a, b, cap);
    } else {
        g = build_family(spec, cap);
    }
    registry.emplace(std::string(spec), g);
    spec_of.try_emplace(g.get(), std::string(spec));
    return g;
}

std::string spec_name(const GroupPtr& g) {
    {
        std::lock_guard lock(registry_mutex);
        if (auto it = spec_of.find(g.get()); it != spec_of.end())
            return it->second;
    }
    try {
        if (build_group(g->name(), product_cap()) == g)
            return g->name();
    } catch (const GroupError&) {
    }
    // interning by table makes a catalog build return g itself when the tables agree
    for (const auto& name : catalog_names(g->prime(), g->order())) {
        auto c = build_group(name, product_cap());
        if (c == g)
            return name;
    }
    throw GroupError("group " + g->name() + " was not built from a catalog name");
}

GroupPtr direct_product(const GroupPtr& g, const GroupPtr& h, std::size_t cap) {
    if (g->order() == 1)
        return h;
    if (h->order() == 1)
        return g;
    if (g->prime() != h->prime())
        throw GroupError("direct product of groups for different primes: " + g->name() + ", " + h->name());
    const long long n = static_cast<long long>(g->order()) * h->order();
    const auto key = std::make_pair(g.get(), h.get());
    if (n <= static_cast<long long>(cap)) {
        std::lock_guard lock(registry_mutex);
        if (auto it = products.find(key); it != products.end())
            return it->second;
    }
    auto wrap = [](const GroupPtr& a) {
        return a->left_factor() ? "(" + a->name() + ")" : a->name();
    };
    const std::string name = wrap(g) + "x" + wrap(h);
    check_cap(n, cap, name);
    std::lock_guard lock(registry_mutex);
    if (auto it = products.find(key); it != products.end())
        return it->second;
    auto p = Group::make_product(g, h, name);
    products.emplace(key, p);
    return p;
}

namespace {

// Partitions of k into descending parts.
void partitions(int k, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (k == 0) {
        out.push_back(cur);
        return;
    }
    for (int part = std::min(k, max_part); part >= 1; --part) {
        cur.push_back(part);
        partitions(k - part, part, cur, out);
        cur.pop_back();
    }
}

long long ipow(long long b, int e) {
    long long r = 1;
    while (e-- > 0)
        r *= b;
    return r;
}

} // namespace

std::vector<std::string> catalog_names(int p, int max_order) {
    std::vector<std::pair<long long, std::string>> abelian, nonabelian;
    for (int k = 1; ipow(p, k) <= max_order; ++k) {
        std::vector<std::vector<int>> parts;
        std::vector<int> cur;
        partitions(k, k, cur, parts);
        for (const auto& part : parts) {
            std::string name;
            for (int e : part)
                name += (name.empty() ? "C" : "xC") + std::to_string(ipow(p, e));
            abelian.emplace_back(ipow(p, k), name);
        }
    }
    if (p == 2) {
        for (long long n = 8; n <= max_order; n *= 2) {
            nonabelian.emplace_back(n, "D" + std::to_string(n));
            if (n >= 16)
                nonabelian.emplace_back(n, "SD" + std::to_string(n));
            nonabelian.emplace_back(n, "Q" + std::to_string(n));
        }
    } else if (ipow(p, 3) <= max_order) {
        nonabelian.emplace_back(ipow(p, 3), "X" + std::to_string(p));
    }
    std::vector<std::pair<long long, std::string>> all{{1, "C1"}};
    all.insert(all.end(), abelian.begin(), abelian.end());
    for (const auto& [n, name] : nonabelian) {
        all.emplace_back(n, name);
        for (const auto& [m, a] : abelian)
            if (n * m <= max_order)
                all.emplace_back(n * m, name + "x" + a);
    }
    std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::string> out;
    for (auto& [n, name] : all)
        out.push_back(std::move(name));
    return out;
}

ProjectivePlane projective_plane_data(int p) {
    if (p != 2 && p != 3)
        throw GroupError("projective plane data is only supported for p = 2, 3");
    ProjectivePlane out;
    out.group = unitriangular(p, "UT3_" + std::to_string(p));
    // Normalized nonzero vectors: first nonzero coordinate equal to 1.
    std::vector<std::array<int, 3>> vecs;
    for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b)
            for (int c = 0; c < p; ++c) {
                std::array<int, 3> v{a, b, c};
                int lead = 0;
                for (int t : v)
                    if (t) {
                        lead = t;
                        break;
                    }
                if (lead == 1)
                    vecs.push_back(v);
            }
    auto normalize = [p](std::array<int, 3> v) {
        int lead = 0;
        for (int t : v)
            if (t) {
                lead = t;
                break;
            }
        int inv = 1;
        while ((lead * inv) % p != 1)
            ++inv;
        for (auto& t : v)
            t = (t * inv) % p;
        return v;
    };
    auto index_of = [&](const std::array<int, 3>& v) {
        for (std::size_t i = 0; i < vecs.size(); ++i)
            if (vecs[i] == v)
                return static_cast<int>(i);
        throw GroupError("projective point lookup failed");
    };
    const int n = out.group->order();
    out.points.assign(static_cast<std::size_t>(n), {});
    out.lines.assign(static_cast<std::size_t>(n), {});
    for (int g = 0; g < n; ++g) {
        const int a = g / (p * p), b = (g / p) % p, c = g % p;
        const int m[3][3] = {{1, a, b}, {0, 1, c}, {0, 0, 1}};
        const int gi = out.group->inv(g);
        const int ai = gi / (p * p), bi = (gi / p) % p, ci = gi % p;
        const int mi[3][3] = {{1, ai, bi}, {0, 1, ci}, {0, 0, 1}};
        for (const auto& v : vecs) {
            // points: column vector v -> g v
            std::array<int, 3> w{};
            for (int r = 0; r < 3; ++r)
                w[static_cast<std::size_t>(r)] = (m[r][0] * v[0] + m[r][1] * v[1] + m[r][2] * v[2]) % p;
            out.points[static_cast<std::size_t>(g)].push_back(index_of(normalize(w)));
            // lines: normal row vector n -> n g^-1
            std::array<int, 3> u{};
            for (int col = 0; col < 3; ++col)
                u[static_cast<std::size_t>(col)] = (v[0] * mi[0][col] + v[1] * mi[1][col] + v[2] * mi[2][col]) % p;
            out.lines[static_cast<std::size_t>(g)].push_back(index_of(normalize(u)));
        }
    }
    return out;
}

} // namespace bfk
