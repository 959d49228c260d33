#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bfk {

/// A set of element indices of some finite group, stored as a bitset.
///
/// The set carries no reference to its group; every operation that needs
/// the multiplication takes the group explicitly.  Ordering through
/// `key_less` is the canonical key (order first, then the sorted member
/// list compared lexicographically).
class Subgroup {
public:
    Subgroup() = default;
    explicit Subgroup(int universe);

    static Subgroup from_elements(int universe, std::span<const int> elems);

    int universe() const { return universe_; }
    int size() const { return size_; }
    bool empty() const { return size_ == 0; }

    bool contains(int e) const {
        return (words_[static_cast<std::size_t>(e) >> 6] >> (e & 63)) & 1u;
    }
    /// Returns true when the element was not present before.
    bool insert(int e) {
        auto& w = words_[static_cast<std::size_t>(e) >> 6];
        const std::uint64_t bit = std::uint64_t{1} << (e & 63);
        if (w & bit)
            return false;
        w |= bit;
        ++size_;
        return true;
    }

    std::vector<int> elements() const;
    /// Same, reusing the buffer.
    void elements_into(std::vector<int>& out) const;
    int first() const;

    bool is_subset_of(const Subgroup& other) const;
    Subgroup intersect(const Subgroup& other) const;

    bool operator==(const Subgroup& other) const {
        return universe_ == other.universe_ && words_ == other.words_;
    }

    std::size_t hash() const;
    const std::vector<std::uint64_t>& words() const { return words_; }

private:
    int universe_ = 0;
    int size_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Canonical key order: smaller order first, then lexicographic comparison of
/// the sorted member lists.
bool key_less(const Subgroup& a, const Subgroup& b);

struct KeyLess {
    bool operator()(const Subgroup& a, const Subgroup& b) const { return key_less(a, b); }
};

struct SubgroupHash {
    std::size_t operator()(const Subgroup& s) const { return s.hash(); }
};

} // namespace bfk
