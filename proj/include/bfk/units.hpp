#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bfk/burnside.hpp"

namespace bfk {

class UnitsError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An element of B(P) whose marks are all +1 or -1.
struct UnitElement {
    Vec coeffs;          // over subgroup classes
    std::uint64_t signs; // bit r set when the mark at class r is -1
};

inline constexpr std::size_t kUnitsClassBound = 24;

/// All units of B(P), ordered by sign mask. Throws UnitsError above kUnitsClassBound classes.
std::vector<UnitElement> units(const GroupPtr& p);

/// Candidate exponential: the class of P/Q goes to the sign vector (-1)^{marks of P/Q}.
struct SignExpImage {
    std::size_t units_dim = 0; // B^x(P) is elementary abelian of order 2^units_dim
    std::size_t image_dim = 0;
    std::vector<std::uint64_t> candidates; // one per class of P/Q
    bool candidates_are_units = false;
    std::size_t coker_dim() const { return units_dim - image_dim; }
};
SignExpImage sign_exp_image(const GroupPtr& p);

struct CokerRow {
    std::string group;
    bool units_computed = false; // false above the class bound
    std::size_t units_order = 0, image_order = 0;
    int d = 0;
    std::vector<Integer> kmod; // invariant factors of K/B_delta
    bool matches() const;      // kmod is d copies of 2
};
std::vector<CokerRow> coker_report(const std::vector<GroupPtr>& universe);

} // namespace bfk
