#pragma once

#include <map>
#include <string>
#include <vector>

#include "bfk/group.hpp"
#include "bfk/zlin.hpp"

namespace bfk {

class BisetError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Same multiplication table (groups built twice compare equal).
bool same_group(const Group& a, const Group& b);

/// An element of Hom(G, H) = B(H x G^op), stored as integer combinations of
/// transitive bisets (H x G)/L with L a canonical subgroup of H x G.
///
/// A (H, G)-biset is read as the left H x G-set with (h, g).x = h x g^-1.
/// B(G) is Hom(1, G); the ambient H x 1 is H itself.
class Morphism {
public:
    using Terms = std::map<Subgroup, Integer, KeyLess>;

    Morphism() = default;
    Morphism(GroupPtr source, GroupPtr target);

    static Morphism transitive(GroupPtr source, GroupPtr target, const Subgroup& l, const Integer& coeff = 1);
    /// Elements of B(G): the class of G/Q.
    static Morphism burnside(GroupPtr g, const Subgroup& q, const Integer& coeff = 1);
    static Morphism identity(GroupPtr g);
    /// Coordinates over the subgroup classes of the ambient group.
    static Morphism from_dense(GroupPtr source, GroupPtr target, const Vec& v);

    const GroupPtr& source() const { return source_; }
    const GroupPtr& target() const { return target_; }
    const GroupPtr& ambient() const { return ambient_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const Subgroup& l, const Integer& coeff);
    Morphism& operator+=(const Morphism& o);
    Morphism& operator-=(const Morphism& o);
    Morphism& operator*=(const Integer& c);
    friend Morphism operator+(Morphism a, const Morphism& b) { return a += b; }
    friend Morphism operator-(Morphism a, const Morphism& b) { return a -= b; }
    friend Morphism operator*(const Integer& c, Morphism a) { return a *= c; }
    bool operator==(const Morphism& o) const;

    Vec dense() const;
    /// Virtual cardinality sum coeff * [H x G : L].
    Integer cardinality() const;
    std::string describe() const;

private:
    void check_compatible(const Morphism& o) const;
    GroupPtr source_;
    GroupPtr target_;
    GroupPtr ambient_;
    Terms terms_;
};

enum class ComposeMethod { Orbit, Mackey, Both };

/// v o u for u : G -> H and v : H -> K.
Morphism compose(const Morphism& v, const Morphism& u, ComposeMethod method = ComposeMethod::Mackey);
/// Transitive pieces, exposed for the referee tests.
Morphism compose_orbit(const Morphism& v, const Morphism& u);
Morphism compose_mackey(const Morphism& v, const Morphism& u);

Morphism opposite(const Morphism& u);

/// pi_H: U x H as a (target x H, source x H)-biset.
Morphism shift(const Morphism& u, const GroupPtr& h);

/// Section-based elementary morphisms; the quotient T/S is sec.quotient.
Morphism indinf(const GroupPtr& g, const Section& sec); // T/S -> G, the biset G/S
Morphism defres(const GroupPtr& g, const Section& sec); // G -> T/S, the biset S\G
Morphism ind(const GroupPtr& g, const Subgroup& t);
Morphism res(const GroupPtr& g, const Subgroup& t);
Morphism inf(const GroupPtr& g, const Subgroup& n);
Morphism def(const GroupPtr& g, const Subgroup& n);
/// Iso(phi) for an isomorphism phi : g -> h given as an element map.
Morphism iso(const GroupPtr& g, const GroupPtr& h, const std::vector<int>& phi);

struct FactorizationData {
    Subgroup l;
    Subgroup p1, k1; // in H
    Subgroup p2, k2; // in G
    Section upper;   // (p1, k1) of H
    Section lower;   // (p2, k2) of G
    std::vector<int> phi; // lower.quotient -> upper.quotient
    Morphism recompose(const GroupPtr& h, const GroupPtr& g) const;
};

/// Decomposition of (H x G)/L as Indinf o Iso o Defres.
FactorizationData factorize(const GroupPtr& h, const GroupPtr& g, const Subgroup& l);

/// The subgroup {(u, v) in B x B : u v^-1 in A} of G x G.
Subgroup twisted_diagonal(const Group& gg, const Subgroup& b, const Subgroup& a);
/// The (G, G)-biset class (G x G)/twisted_diagonal(B, A).
Morphism twisted_diagonal_class(const GroupPtr& g, const Subgroup& b, const Subgroup& a);

/// f_N^G from the Moebius function of the normal-subgroup poset.
Morphism faithful_idempotent(const GroupPtr& g, const Subgroup& n);
/// f_1^P from the subgroups of Omega_1 Z(P).
Morphism faithful_idempotent_center(const GroupPtr& g);

/// Hom(P x X, Q) -> Hom(X, Q x P), index-identical subgroups.
Morphism curry(const Morphism& u, const GroupPtr& p, const GroupPtr& x);
/// For u : P x X -> Q, the morphism u~ : P -> X x Q.
Morphism tilde(const Morphism& u, const GroupPtr& p, const GroupPtr& x);

/// Subgroup projections of L <= A x B.
Subgroup first_projection(const Group& a, const Group& b, const Subgroup& l);
Subgroup second_projection(const Group& a, const Group& b, const Subgroup& l);
Subgroup first_kernel(const Group& a, const Group& b, const Subgroup& l);
Subgroup second_kernel(const Group& a, const Group& b, const Subgroup& l);

/// {(k, g) : exists x with (k, x) in a, (x, g) in b}; a <= K x H, b <= H x G.
Subgroup star(const Group& k, const Group& h, const Group& g, const Subgroup& a, const Subgroup& b);

} // namespace bfk
