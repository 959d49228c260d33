#pragma once

#include <string>
#include <vector>

#include "bfk/rational.hpp"

namespace bfk {

struct ProductRow {
    std::string label;
    Morphism got;
    Morphism expected;
    bool ok = false;
};

/// delta^op o gamma_Y = 0 over the genetic basis of X, and the four products
/// of I\X, IZ\X, J\X, JZ\X with (X x X)/Delta_{IZ,I}.
struct DeltaNulReport {
    int p = 2;
    std::size_t basis_size = 0;
    std::vector<bool> gamma_zero; // one per basis entry
    std::vector<ProductRow> products;
    bool passed() const;
};
DeltaNulReport delta_nul_check(int p);

/// Points minus lines of the projective plane, as S-sets.  A labeling is accepted
/// when points = S/S + S/JZ + S/I, lines = S/S + S/IZ + S/J and their difference is
/// delta_{S,I,J}: the stated orbit patterns with I and J exchanged.
struct GeometricReport {
    int p = 2;
    std::size_t points = 0, lines = 0;
    int fixed_points = 0, fixed_lines = 0;
    Morphism point_set, line_set;
    bool labeling_found = false;
    Subgroup i, j;
    bool passed() const;
};
GeometricReport geometric_check(int p);

/// (X^3 / Y) o (delta x delta) against delta, with Y built from IZ and phi : X -> J.
/// The composite comes out as delta_{X,J,I} = -delta_{X,I,J}; both comparisons are
/// reported and every choice of (I, J) inside their classes is tried.
/// Throws CapExceeded when X^3 is over the cap.
struct YReport {
    int p = 2;
    std::size_t y_order = 0;
    std::size_t expected_order = 0;
    bool y_closed = false;
    Morphism lhs;
    bool literal_holds = false;    // lhs == delta_{X,I,J}
    bool swapped_holds = false;    // lhs == delta_{X,J,I}
    int labelings = 0;             // (I, J) subgroup pairs tried
    int labelings_swapped = 0;     // of which lhs == delta_{X,J,I}
    bool passed() const {
        return y_closed && y_order == expected_order && swapped_holds && labelings_swapped == labelings;
    }
};
YReport y_identity_check(int p);

} // namespace bfk
