#pragma once

// Canonical value types for finite combinatorics over a ground set {0, ..., a-1}.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace fpart {

using BigInt = boost::multiprecision::cpp_int;

/// Thrown when a value violates the invariants of its type.
class InvariantError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an exhaustive object would exceed its configured budget.
class Infeasible : public std::runtime_error {
public:
    Infeasible(const std::string& what, BigInt required) : std::runtime_error(what), required_(std::move(required)) {}
    const BigInt& required() const { return required_; }

private:
    BigInt required_;
};

/// The ground set {0, ..., size-1}. Set-valued objects are limited to 64 elements.
class GroundSet {
public:
    static constexpr int kMaxSize = 64;

    explicit GroundSet(int size);

    int size() const { return size_; }
    bool contains(int x) const { return 0 <= x && x < size_; }

    friend bool operator==(const GroundSet&, const GroundSet&) = default;

private:
    int size_ = 0;
};

/// A finite subset of the ground set, stored as a 64-bit membership mask.
///
/// Ordering is lexicographic on the strictly increasing element sequence, so
/// {0,1} < {0,1,2} < {0,2} < {1}.
class Subset {
public:
    constexpr Subset() = default;

    static constexpr Subset from_bits(std::uint64_t bits) { return Subset(bits); }
    static Subset of(std::initializer_list<int> elements);
    static Subset from_elements(std::span<const int> elements);
    /// {0, ..., a-1}
    static Subset prefix(int a);

    constexpr std::uint64_t bits() const { return bits_; }
    int size() const { return __builtin_popcountll(bits_); }
    bool empty() const { return bits_ == 0; }
    bool contains(int x) const { return 0 <= x && x < 64 && ((bits_ >> x) & 1u); }
    /// Least element; -1 when empty.
    int min() const { return bits_ ? __builtin_ctzll(bits_) : -1; }
    /// Greatest element; -1 when empty.
    int max() const { return bits_ ? 63 - __builtin_clzll(bits_) : -1; }
    std::vector<int> elements() const;

    bool subset_of(Subset other) const { return (bits_ & ~other.bits_) == 0; }
    bool intersects(Subset other) const { return (bits_ & other.bits_) != 0; }

    Subset with(int x) const;
    Subset without(int x) const;

    friend constexpr Subset operator|(Subset a, Subset b) { return Subset(a.bits_ | b.bits_); }
    friend constexpr Subset operator&(Subset a, Subset b) { return Subset(a.bits_ & b.bits_); }
    friend constexpr Subset operator-(Subset a, Subset b) { return Subset(a.bits_ & ~b.bits_); }

    friend constexpr bool operator==(Subset, Subset) = default;
    friend std::strong_ordering operator<=>(Subset a, Subset b);

    std::string to_string() const;

private:
    constexpr explicit Subset(std::uint64_t bits) : bits_(bits) {}
    std::uint64_t bits_ = 0;
};

/// A finite sequence of ground-set elements; `injective` asserts pairwise distinct entries.
struct ElementSequence {
    std::vector<int> entries;
    bool injective = false;

    ElementSequence() = default;
    ElementSequence(std::vector<int> entries, bool injective);

    std::size_t length() const { return entries.size(); }

    friend bool operator==(const ElementSequence& a, const ElementSequence& b) {
        return a.entries == b.entries;
    }
    friend auto operator<=>(const ElementSequence& a, const ElementSequence& b) {
        return a.entries <=> b.entries;
    }
};

/// Component sizes (m_1, ..., m_n) of a disjoint tuple.
struct SizeProfile {
    std::vector<int> sizes;

    SizeProfile() = default;
    SizeProfile(std::initializer_list<int> s);
    explicit SizeProfile(std::vector<int> s);

    int arity() const { return static_cast<int>(sizes.size()); }
    int total() const;
    int operator[](std::size_t i) const { return sizes[i]; }
    /// Componentwise <=; false when arities differ.
    bool dominated_by(const SizeProfile& other) const;

    std::string to_string() const;

    friend bool operator==(const SizeProfile&, const SizeProfile&) = default;
    friend auto operator<=>(const SizeProfile&, const SizeProfile&) = default;
};

/// An ordered tuple of pairwise disjoint subsets (an element of O_{m}(A)).
class DisjointTuple {
public:
    DisjointTuple() = default;
    DisjointTuple(std::initializer_list<Subset> components);
    explicit DisjointTuple(std::vector<Subset> components);

    int arity() const { return static_cast<int>(components_.size()); }
    const std::vector<Subset>& components() const { return components_; }
    Subset operator[](std::size_t i) const { return components_[i]; }
    SizeProfile profile() const;
    /// Union of the components.
    Subset support() const;

    std::string to_string() const;

    friend bool operator==(const DisjointTuple&, const DisjointTuple&) = default;
    // Componentwise lexicographic; on a fixed profile this is the order of the
    // concatenated component sequences.
    friend auto operator<=>(const DisjointTuple& a, const DisjointTuple& b) {
        return a.components_ <=> b.components_;
    }

private:
    std::vector<Subset> components_;
};

/// A partition of the ground set with blocks sorted by least element.
class FinitaryPartition {
public:
    FinitaryPartition() = default;

    /// Validates the partition axioms and canonicalizes the block order.
    /// Throws InvariantError naming the offending block or element.
    static FinitaryPartition canonicalize(int ground_size, std::vector<Subset> blocks);
    /// The partition of {0..a-1} into singletons.
    static FinitaryPartition discrete(int ground_size);

    int ground_size() const { return ground_size_; }
    const std::vector<Subset>& blocks() const { return blocks_; }
    /// Blocks of size >= 2, in canonical order.
    std::vector<Subset> ns() const;
    int ns_count() const;
    /// The block containing x.
    Subset block_of(int x) const;

    std::string to_string() const;

    friend bool operator==(const FinitaryPartition&, const FinitaryPartition&) = default;
    friend auto operator<=>(const FinitaryPartition& a, const FinitaryPartition& b) {
        if (auto c = a.ground_size_ <=> b.ground_size_; c != 0) return c;
        return a.blocks_ <=> b.blocks_;
    }

private:
    int ground_size_ = 0;
    std::vector<Subset> blocks_;
};

/// Convenience wrapper for canonicalize_partition.
FinitaryPartition canonicalize_partition(int ground_size, std::vector<Subset> blocks);

void require_ground_size(int a);

}  // namespace fpart
