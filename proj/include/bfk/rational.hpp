#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "bfk/biset.hpp"
#include "bfk/burnside.hpp"
#include "bfk/genetics.hpp"
#include "bfk/zlin.hpp"

namespace bfk {

/// X (D8 for p = 2, X<p> otherwise) with its center Z, two non-conjugate
/// noncentral subgroups I, J of order p, and delta.
struct DeltaContext {
    int p = 2;
    GroupPtr x;
    Subgroup i, j, z;
    Morphism delta;
};

/// Cached per prime.
const DeltaContext& delta_context(int p);
/// (G/I - G/IZ) - (G/J - G/JZ) with Z the center of g.
Morphism delta_element(const GroupPtr& g, const Subgroup& i, const Subgroup& j);
/// delta_R for a dihedral group of order at least 16.
Morphism delta_R(const GroupPtr& r);

/// Lattice in B(p) spanned by phi(elem) for all phi : g0 -> p, built from
/// Indinf o Iso o Defres composites.
Lattice subfunctor_eval(const GroupPtr& g0, const Morphism& elem, const GroupPtr& p);
/// The same lattice from every transitive (p, g0)-biset.
Lattice subfunctor_eval_full(const GroupPtr& g0, const Morphism& elem, const GroupPtr& p);
/// B_delta(p), cached.
const Lattice& b_delta(const GroupPtr& p);
Lattice b_epsilon(const GroupPtr& p);

struct KModDelta {
    std::vector<Integer> invariants;
    std::vector<Morphism> basis_images; // Indinf delta_{N/Q} over dihedral entries
    bool images_in_k = false;
    bool images_span = false;           // with B_delta(p) they generate K(p)
};
KModDelta k_mod_delta(const GroupPtr& p);

/// A p-biset functor with computable evaluations and actions.
class Functor {
public:
    virtual ~Functor() = default;
    virtual std::string label() const = 0;
    /// Memoized by multiplication table.
    const PresentedAb& eval(const GroupPtr& g) const;
    virtual std::vector<std::string> generator_labels(const GroupPtr& g) const = 0;
    /// F(u) : F(u.source()) -> F(u.target()).
    virtual AbMap act(const Morphism& u) const = 0;

protected:
    virtual PresentedAb compute_eval(const GroupPtr& g) const = 0;

private:
    mutable std::mutex mutex_;
    mutable std::map<std::pair<std::uint64_t, int>, std::unique_ptr<PresentedAb>> memo_;
};
using FunctorPtr = std::shared_ptr<const Functor>;

FunctorPtr make_B();
FunctorPtr make_K();
/// B / K, the image of B in rational representations.
FunctorPtr make_RQ();
FunctorPtr make_quotient_BmodBdelta();
FunctorPtr make_shift(FunctorPtr f, GroupPtr h);
/// "B", "K", "RQ", "BmodBdelta", or "shift:<H>" / "shift:<H>:<inner>".
FunctorPtr make_functor(std::string_view spec);

struct FaithfulPart {
    PresentedAb part;  // F(P) modulo (1 - e)F(P), isomorphic to eF(P)
    Matrix idempotent; // e acting on generators
    bool matches_deflation_kernels = false;
};
FaithfulPart faithful_part(const Functor& f, const GroupPtr& p);

struct RationalityReport {
    bool rational = false;
    std::size_t basis_size = 0;
    std::vector<Integer> kernel;
    std::vector<Integer> cokernel;
};
RationalityReport rationality_check(const Functor& f, const GroupPtr& p);
RationalityReport rationality_check(const Functor& f, const GeneticBasis& basis);

struct CaractRow {
    std::string group;
    bool center_cyclic = true;
    bool condition_i = true;
    int pairs = 0; // (E, Z) pairs tested for condition (ii)
    bool condition_ii = true;
};
struct CaractReport {
    std::vector<CaractRow> rows;
    bool passed() const;
};
CaractReport caract_check(const Functor& f, const std::vector<GroupPtr>& universe);

struct RatBounds {
    PresentedAb rat_quotient;           // cokernel of F(pi_P(delta^op))
    std::vector<Integer> rat_sub;       // invariants of the kernel of F(pi_P(delta))
    Lattice rat_sub_lattice;
};
RatBounds rat_bounds(const Functor& f, const GroupPtr& p);

struct MurReport {
    std::size_t generators = 0;
    std::size_t nonzero = 0; // generators acting nontrivially
};
/// Applies f to the HNF generators of B_delta(q x p) read as morphisms p -> q.
MurReport mur_kill_check(const Functor& f, const GroupPtr& p, const GroupPtr& q);

} // namespace bfk
