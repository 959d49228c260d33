#pragma once

#include <vector>

#include "bfk/biset.hpp"
#include "bfk/group.hpp"

namespace bfk {

class GeneticError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct GeneticEntry {
    int class_index = 0;
    LocalData local; // local.q is the chosen representative
};

struct GeneticBasis {
    GroupPtr group;
    std::vector<GeneticEntry> entries;
    int d = 0; // entries with dihedral quotient
};

bool is_genetic(const GroupPtr& p, const Subgroup& q);
/// Linkage modulo P; both arguments must be genetic.
bool linked(const GroupPtr& p, const Subgroup& q, const Subgroup& r);

/// Class indices of the genetic subgroups of p, ascending.
std::vector<int> genetic_classes(const GroupPtr& p);
/// Linkage classes of genetic subgroup classes, each ascending, ordered by first element.
std::vector<std::vector<int>> linkage_classes(const GroupPtr& p);

/// One entry per linkage class, the minimal class index chosen.
GeneticBasis genetic_basis(const GroupPtr& p);
/// Basis with the given representatives (class indices); validated.
GeneticBasis genetic_basis_from(const GroupPtr& p, const std::vector<int>& class_indices);

/// The section (N_P(Q), Q).
Section genetic_section(const GroupPtr& p, const Subgroup& q);

/// b_Q^P : P -> N_P(Q)/Q, Defres to N/Q minus Defres to N/Qhat inflated back.
Morphism b_map(const GroupPtr& p, const Subgroup& q);
/// Indinf_{N_P(Q)/Q}^P.
Morphism indinf_map(const GroupPtr& p, const Subgroup& q);
/// (R x R)/Delta_{N,Q} - (R x R)/Delta_{N,Qhat}; the one-point class when Q = R.
Morphism gamma(const GroupPtr& r, const Subgroup& q);

} // namespace bfk
