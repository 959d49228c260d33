#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bfk/subgroup.hpp"

namespace bfk {

inline constexpr std::size_t kDefaultOrderCap = 256;
// Products larger than this are multiplied factorwise instead of by table.
inline constexpr int kTableLimit = 1024;

/// A requested group would exceed the configured order cap.
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed catalog name, inconsistent parameters, or invalid group data.
class GroupError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class Group;
using GroupPtr = std::shared_ptr<const Group>;

struct SubgroupClass {
    int index = 0;
    Subgroup rep;        // minimal-key conjugate
    int size = 0;        // number of conjugates
    Subgroup normalizer; // normalizer of rep
    bool cyclic = false;
};

/// A finite group given by its multiplication table; element 0 is the identity.
///
/// Direct products remember their factors: element (a, b) has index
/// a * |right| + b.  Above kTableLimit the product is evaluated factorwise so
/// that large ambient groups can still host explicit subgroups.
class Group {
public:
    /// Validates associativity, identity and inverses (full scan up to order
    /// 64, sampled above).
    static GroupPtr from_table(std::string name, int prime, std::vector<int> table);

    const std::string& name() const { return name_; }
    int order() const { return order_; }
    int prime() const { return prime_; }

    int mul(int a, int b) const {
        if (!table_.empty())
            return table_[static_cast<std::size_t>(a) * order_ + b];
        return product_mul(a, b);
    }
    int inv(int a) const { return inv_[static_cast<std::size_t>(a)]; }
    /// g^-1 x g
    int conj(int x, int g) const {
        if (!conj_.empty())
            return conj_[static_cast<std::size_t>(g) * order_ + x];
        return mul(mul(inv(g), x), g);
    }
    int power(int a, long long k) const;
    int elem_order(int a) const { return elem_order_[static_cast<std::size_t>(a)]; }
    int exponent() const;

    const GroupPtr& left_factor() const { return left_; }
    const GroupPtr& right_factor() const { return right_; }

    Subgroup trivial() const;
    Subgroup whole() const;
    Subgroup generate(std::span<const int> gens) const;
    Subgroup generate(const Subgroup& a, const Subgroup& b) const;
    /// A small generating set, greedy in index order (cached).
    const std::vector<int>& generators() const;
    bool is_subgroup(const Subgroup& s) const;
    /// s^g = g^-1 s g
    Subgroup conjugate(const Subgroup& s, int g) const;
    Subgroup normalizer(const Subgroup& s) const;
    Subgroup centralizer(const Subgroup& s) const;
    Subgroup center() const;
    /// Normal closure-free test: s is normalized by every element of t.
    bool normalizes(const Subgroup& t, const Subgroup& s) const;
    bool is_normal(const Subgroup& s) const { return normalizes(whole(), s); }
    bool is_cyclic(const Subgroup& s) const;
    bool is_abelian(const Subgroup& s) const;
    /// Set product a*b; a subgroup when one factor normalizes the other.
    Subgroup product_set(const Subgroup& a, const Subgroup& b) const;
    Subgroup commutator_subgroup() const;

    /// The minimal-key conjugate of s.
    Subgroup canonical(const Subgroup& s) const;
    bool are_conjugate(const Subgroup& a, const Subgroup& b) const;

    /// Conjugacy classes of subgroups in canonical key order (cached).
    const std::vector<SubgroupClass>& subgroup_classes() const;
    const std::vector<Subgroup>& class_members(int index) const;
    /// Index of the class containing s.
    int class_of(const Subgroup& s) const;
    bool classes_ready() const;
    std::vector<Subgroup> normal_subgroups() const;

    /// Hash of the multiplication table; equal tables share cached data.
    std::uint64_t fingerprint() const { return fingerprint_; }

    // Used by the catalog and by direct_product.
    static GroupPtr make_product(GroupPtr left, GroupPtr right, std::string name);

private:
    Group() = default;
    int product_mul(int a, int b) const;
    void finish_setup();
    void build_classes() const;

    std::string name_;
    int order_ = 0;
    int prime_ = 0;
    std::vector<int> table_;
    std::vector<int> conj_;
    std::vector<int> inv_;
    std::vector<int> elem_order_;
    GroupPtr left_;
    GroupPtr right_;
    std::uint64_t fingerprint_ = 0;

    struct ClassCache {
        std::vector<SubgroupClass> classes;
        std::vector<std::vector<Subgroup>> members;
        std::unordered_map<Subgroup, int, SubgroupHash> lookup;
    };
    mutable std::once_flag gens_once_;
    mutable std::vector<int> gens_;
    mutable std::once_flag classes_once_;
    mutable std::unique_ptr<ClassCache> classes_;
    mutable std::mutex canon_mutex_;
    mutable std::unordered_map<Subgroup, Subgroup, SubgroupHash> canon_memo_;
};

/// A section (T, S) of a group with S normal in T, together with T/S.
struct Section {
    Subgroup top;
    Subgroup bottom;
    GroupPtr quotient;
    std::vector<int> proj; // parent element -> quotient element, -1 outside top
    std::vector<int> lift; // quotient element -> smallest representative in top

    /// Image in the quotient of a subgroup u with bottom <= u <= top.
    Subgroup image(const Subgroup& u) const;
    /// Full preimage in the parent of a subgroup of the quotient.
    Subgroup preimage(const Subgroup& v) const;
};

Section make_section(const GroupPtr& g, const Subgroup& top, const Subgroup& bottom);
inline Section quotient(const GroupPtr& g, const Subgroup& normal) {
    return make_section(g, g->whole(), normal);
}

/// A bijective homomorphism g -> h as an element map, if one exists.
std::optional<std::vector<int>> find_isomorphism(const Group& g, const Group& h);
/// Every isomorphism g -> h.
std::vector<std::vector<int>> all_isomorphisms(const Group& g, const Group& h);
bool is_isomorphic(const Group& g, const Group& h);

enum class Rank1Type { Cyclic, Quaternion, Dihedral, Semidihedral, NotRank1 };
const char* to_string(Rank1Type t);
/// Normal p-rank 1 classification by template isomorphism.
Rank1Type classify_rank1(const Group& g);

GroupPtr trivial_group();
/// Returns a previously seen group with the same table and prime, or registers g.
GroupPtr intern(GroupPtr g);
/// Largest order allowed for internally formed products (ambient groups of
/// morphisms, shifted groups).  Adjustable for explicit large runs.
std::size_t product_cap();
void set_product_cap(std::size_t cap);
/// Parses `C<n> | D<n> | SD<n> | Q<n> | E<p>_<k> | E<p^k> | X<p> | <A>x<B>`.
GroupPtr build_group(std::string_view spec, std::size_t cap = kDefaultOrderCap);
/// A spec that build_group maps back to this very group (same element labels).
std::string spec_name(const GroupPtr& g);
/// Catalog names of the p-groups of order at most max_order, by order then name:
/// abelian groups as products of cyclic factors, the dihedral, semidihedral and
/// quaternion families, X<p> for odd p, and products of these with abelian groups.
std::vector<std::string> catalog_names(int p, int max_order);
/// The product with index (g, h) -> g*|H| + h; a trivial factor returns the other factor.
GroupPtr direct_product(const GroupPtr& g, const GroupPtr& h, std::size_t cap = kDefaultOrderCap);

/// Upper unitriangular 3x3 matrices over F_p with their actions on the
/// points and lines of the projective plane (action[g][x]).
struct ProjectivePlane {
    GroupPtr group;
    std::vector<std::vector<int>> points;
    std::vector<std::vector<int>> lines;
};
ProjectivePlane projective_plane_data(int p);

/// Data attached to a subgroup Q of P for the genetic machinery.
struct LocalData {
    Subgroup q;
    Subgroup normalizer;
    Subgroup centralizer;
    Subgroup zq;    // preimage of Z(N/Q)
    Subgroup qhat;  // preimage of Omega_1 Z(N/Q)
    bool qhat_valid = false; // |qhat/q| <= p
    Rank1Type quotient_type = Rank1Type::NotRank1;
};
LocalData local_data(const GroupPtr& p, const Subgroup& q);

} // namespace bfk
