#pragma once

#include <vector>

#include "bfk/biset.hpp"
#include "bfk/zlin.hpp"

namespace bfk {

/// Fixed points of R on G/Q, for subgroups given as class indices.
Integer mark(const Group& g, int r_class, int q_class);

/// Table of marks: row i is G/Q_i, column j counts fixed points of Q_j.
const Matrix& marks_matrix(const GroupPtr& g);
/// Class indices of the cyclic subgroups, ascending.
std::vector<int> cyclic_classes(const Group& g);
/// Columns of the table of marks at cyclic classes.
Matrix cyclic_marks_matrix(const GroupPtr& g);

/// Marks of x at every class.
Vec marks(const Morphism& x);
/// Marks of x at the cyclic classes; zero exactly when x maps to 0 in R_Q.
Vec cyclic_marks(const Morphism& x);

/// K(G): kernel of the linearization map B(G) -> R_Q(G), in class coordinates.
const Lattice& kernel_K(const GroupPtr& g);

/// E/1 - sum over order-p subgroups F of E/F + p E/E.
Morphism epsilon(const GroupPtr& e);

/// Orbit decomposition of a left action given as action[g][x].
Morphism decompose_action(const GroupPtr& g, const std::vector<std::vector<int>>& action);

} // namespace bfk
