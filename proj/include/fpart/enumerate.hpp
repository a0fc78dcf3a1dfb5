#pragma once

// Lazy enumeration and exact counting for the spaces [A]^k, A^k, O_{m}(A),
// O_n(A) and B_n(A) over A = {0, ..., a-1}.
//
// Enumeration orders:
//   k-subsets        lexicographic on the increasing element sequence
//   sequences        lexicographic on the entry sequence
//   O_{m}(A)         lexicographic on the concatenated component sequences
//   O_n(A)           odometer over element placements, element 0 most significant,
//                    placement 0 = outside every component, i = component i
//   partitions       lexicographic on restricted growth strings

#include <functional>
#include <iterator>
#include <optional>
#include <vector>

#include "fpart/core.hpp"

namespace fpart {

/// A single-pass lazy sequence. Each call to begin() continues the same stream;
/// call the producing function again to restart.
template <class T>
class Stream {
public:
    using Next = std::function<std::optional<T>()>;

    explicit Stream(Next next) : next_(std::move(next)) {}

    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = T;
        using difference_type = std::ptrdiff_t;
        using pointer = const T*;
        using reference = const T&;

        iterator() = default;
        explicit iterator(Stream* s) : stream_(s) { ++*this; }

        const T& operator*() const { return *current_; }
        const T* operator->() const { return &*current_; }
        iterator& operator++() {
            current_ = stream_->next_();
            if (!current_) stream_ = nullptr;
            return *this;
        }
        void operator++(int) { ++*this; }
        friend bool operator==(const iterator& a, const iterator& b) { return a.stream_ == b.stream_; }

    private:
        Stream* stream_ = nullptr;
        std::optional<T> current_;
    };

    iterator begin() { return iterator(this); }
    iterator end() { return iterator(); }

    std::optional<T> next() { return next_(); }

    std::vector<T> collect(std::size_t limit = static_cast<std::size_t>(-1)) {
        std::vector<T> out;
        while (out.size() < limit) {
            auto v = next_();
            if (!v) break;
            out.push_back(std::move(*v));
        }
        return out;
    }

    std::size_t count() {
        std::size_t n = 0;
        while (next_()) ++n;
        return n;
    }

private:
    Next next_;
};

Stream<Subset> enum_k_subsets(int a, int k);
/// Every subset of {0..a-1}: by size, then lexicographically within a size.
Stream<Subset> enum_subsets(int a);
/// A^k (all functions k -> A) or, when injective, the injective sequences A^{\underline k}.
Stream<ElementSequence> enum_sequences(int a, int k, bool injective);
/// O_{m}(A).
Stream<DisjointTuple> enum_disjoint_tuples(int a, const SizeProfile& profile);
/// O_n(A); components larger than `cap` are skipped when a cap is given.
Stream<DisjointTuple> enum_O_n(int a, int n, std::optional<int> cap = std::nullopt);
/// Every partition of {0..a-1}.
Stream<FinitaryPartition> enum_partitions(int a);
/// B_n(A): partitions with exactly n blocks of size >= 2.
Stream<FinitaryPartition> enum_B_n(int a, int n);

BigInt binomial(int n, int k);
/// Partitions of a j-set into exactly n blocks, each of size >= 2.
BigInt assoc_stirling(int j, int n);
/// |B_n({0..a-1})|; `a` is not limited to 64.
BigInt count_B_n(int a, int n);
/// |O_{m}({0..a-1})|.
BigInt count_disjoint_tuples(int a, const SizeProfile& profile);
/// |O_n({0..a-1})| = (n+1)^a.
BigInt count_O_n(int a, int n);

/// Position of a k-subset of `avail` in the lexicographic order of k-subsets of `avail`.
std::uint64_t rank_k_subset(Subset avail, Subset s);
/// Fixed-width binomial (n <= 64); saturates at UINT64_MAX.
std::uint64_t binomial_u64(int n, int k);

}  // namespace fpart
