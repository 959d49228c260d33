#include "bfk/subgroup.hpp"

#include <bit>
#include <stdexcept>

namespace bfk {

Subgroup::Subgroup(int universe)
    : universe_(universe), words_((static_cast<std::size_t>(universe) + 63) / 64, 0) {}

Subgroup Subgroup::from_elements(int universe, std::span<const int> elems) {
    Subgroup s(universe);
    for (int e : elems) {
        if (e < 0 || e >= universe)
            throw std::out_of_range("element index outside the group");
        s.insert(e);
    }
    return s;
}

std::vector<int> Subgroup::elements() const {
    std::vector<int> out;
    elements_into(out);
    return out;
}

void Subgroup::elements_into(std::vector<int>& out) const {
    out.clear();
    out.reserve(static_cast<std::size_t>(size_));
    for (std::size_t i = 0; i < words_.size(); ++i) {
        std::uint64_t w = words_[i];
        while (w) {
            const int b = std::countr_zero(w);
            out.push_back(static_cast<int>(i * 64) + b);
            w &= w - 1;
        }
    }
}

int Subgroup::first() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i])
            return static_cast<int>(i * 64) + std::countr_zero(words_[i]);
    return -1;
}

bool Subgroup::is_subset_of(const Subgroup& other) const {
    if (universe_ != other.universe_)
        return false;
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~other.words_[i])
            return false;
    return true;
}

Subgroup Subgroup::intersect(const Subgroup& other) const {
    Subgroup out(universe_);
    for (std::size_t i = 0; i < words_.size(); ++i) {
        out.words_[i] = words_[i] & other.words_[i];
        out.size_ += std::popcount(out.words_[i]);
    }
    return out;
}

std::size_t Subgroup::hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(universe_);
    for (auto w : words_) {
        h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
}

bool key_less(const Subgroup& a, const Subgroup& b) {
    if (a.size() != b.size())
        return a.size() < b.size();
    // Equal sizes: the smaller sorted list is the one owning the lowest
    // element of the symmetric difference.
    const auto& wa = a.words();
    const auto& wb = b.words();
    for (std::size_t i = 0; i < wa.size(); ++i) {
        const std::uint64_t diff = wa[i] ^ wb[i];
        if (diff) {
            const std::uint64_t low = diff & (~diff + 1);
            return (wa[i] & low) != 0;
        }
    }
    return false;
}

} // namespace bfk
