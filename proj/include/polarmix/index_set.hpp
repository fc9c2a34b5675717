#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "polarmix/errors.hpp"

namespace polarmix {

/// Subset of the 0-based variable indices {0, ..., 63}. Printed 1-based.
class IndexSet {
public:
    static constexpr std::size_t max_size = 64;

    constexpr IndexSet() = default;
    constexpr explicit IndexSet(std::uint64_t bits) : bits_(bits) {}

    static IndexSet full(std::size_t n) {
        if (n > max_size) throw dimension_error("index set larger than 64");
        return IndexSet(n == max_size ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1));
    }

    static IndexSet of(std::initializer_list<std::size_t> idx) {
        IndexSet s;
        for (auto i : idx) s.insert(i);
        return s;
    }

    /// From 1-based indices, as written in the math.
    static IndexSet one_based(std::initializer_list<std::size_t> idx) {
        IndexSet s;
        for (auto i : idx) {
            if (i == 0) throw dimension_error("1-based index 0");
            s.insert(i - 1);
        }
        return s;
    }

    void insert(std::size_t i) {
        if (i >= max_size) throw dimension_error("index out of range");
        bits_ |= std::uint64_t{1} << i;
    }

    bool contains(std::size_t i) const { return i < max_size && ((bits_ >> i) & 1U); }
    std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
    bool empty() const { return bits_ == 0; }
    std::uint64_t bits() const { return bits_; }

    bool subset_of(IndexSet other) const { return (bits_ & ~other.bits_) == 0; }

    std::vector<std::size_t> indices() const {
        std::vector<std::size_t> out;
        for (std::uint64_t b = bits_; b; b &= b - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
        return out;
    }

    friend IndexSet operator&(IndexSet a, IndexSet b) { return IndexSet(a.bits_ & b.bits_); }
    friend IndexSet operator|(IndexSet a, IndexSet b) { return IndexSet(a.bits_ | b.bits_); }
    friend bool operator==(IndexSet a, IndexSet b) = default;

    /// Ordering by (size, lexicographic on the sorted index list).
    friend bool operator<(IndexSet a, IndexSet b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.indices() < b.indices();
    }

private:
    std::uint64_t bits_ = 0;
};

/// "{1,3}" (1-based).
inline std::string to_string(IndexSet s) {
    std::string out = "{";
    bool first = true;
    for (auto i : s.indices()) {
        if (!first) out += ",";
        out += std::to_string(i + 1);
        first = false;
    }
    return out + "}";
}

}  // namespace polarmix
