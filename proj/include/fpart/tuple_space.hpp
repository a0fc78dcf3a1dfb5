#pragma once

// Dense indexing of O_{m}(A) and of the extension relation between two profiles.
// Spaces and relations are immutable and cached process-wide.

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "fpart/core.hpp"

namespace fpart {

using Bits = boost::dynamic_bitset<std::uint64_t>;

/// O_{m}(A) in lexicographic order, with O(n) ranking.
class TupleSpace {
public:
    static constexpr std::uint64_t kMaxTuples = std::uint64_t{1} << 27;
    static constexpr std::uint64_t npos = ~std::uint64_t{0};

    static std::shared_ptr<const TupleSpace> get(int a, const SizeProfile& profile);

    int ground_size() const { return a_; }
    const SizeProfile& profile() const { return profile_; }
    int arity() const { return profile_.arity(); }
    std::uint64_t size() const { return count_; }

    DisjointTuple tuple(std::uint64_t index) const;
    Subset component(std::uint64_t index, int i) const { return Subset::from_bits(flat_[index * arity() + i]); }
    /// npos when the tuple is not in the space.
    std::uint64_t index_of(const DisjointTuple& t) const;
    std::uint64_t index_of(const Subset* components) const;

    TupleSpace(int a, SizeProfile profile);

private:
    int a_;
    SizeProfile profile_;
    std::uint64_t count_ = 0;
    std::vector<std::uint64_t> flat_;
    // tail_[i][s]: number of tuples of profile (m_{i+1}, ..., m_n) inside an s-element set.
    std::vector<std::vector<std::uint64_t>> tail_;
};

/// up(p) = { q in O_{l}(A) : p is componentwise contained in q } for each p in O_{m}(A).
class ExtensionRelation {
public:
    static constexpr std::uint64_t kMaxBits = std::uint64_t{1} << 33;

    static std::shared_ptr<const ExtensionRelation> get(int a, const SizeProfile& m, const SizeProfile& l);

    const TupleSpace& lower() const { return *lower_; }
    const TupleSpace& upper() const { return *upper_; }
    std::shared_ptr<const TupleSpace> lower_ptr() const { return lower_; }
    std::shared_ptr<const TupleSpace> upper_ptr() const { return upper_; }
    const Bits& up(std::uint64_t p) const { return up_[p]; }
    /// True iff some p has no extension (the alpha operator is then vacuous on p).
    bool has_bare_tuples() const { return bare_; }

    ExtensionRelation(int a, const SizeProfile& m, const SizeProfile& l);

private:
    std::shared_ptr<const TupleSpace> lower_;
    std::shared_ptr<const TupleSpace> upper_;
    std::vector<Bits> up_;
    bool bare_ = false;
};

/// Calls fn(sub) for every sub-tuple of q with the given profile.
template <class Fn>
void for_each_subtuple(const std::vector<Subset>& q, const SizeProfile& m, Fn&& fn);

}  // namespace fpart

#include "fpart/tuple_space_impl.hpp"
