#pragma once

// Permutations of the ground set acting on nested objects, finite supports,
// the even/odd orbit pair of an injective sequence, and the projections P_E
// with the preorder "every block of Q_E is a union of blocks of P_E".

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fpart/core.hpp"
#include "fpart/lauchli.hpp"

namespace fpart {

class Permutation {
public:
    static Permutation identity(int a);
    static Permutation transposition(int a, int x, int y);
    /// Product of disjoint or overlapping cycles, applied right to left.
    static Permutation from_cycles(int a, const std::vector<std::vector<int>>& cycles);
    /// Throws InvariantError unless `image` is a bijection of {0..a-1}.
    explicit Permutation(std::vector<int> image);

    int size() const { return static_cast<int>(image_.size()); }
    int operator()(int x) const { return x >= 0 && x < size() ? image_[x] : x; }
    const std::vector<int>& image() const { return image_; }
    Permutation inverse() const;
    /// Cycles of length >= 2, each starting at its least element, sorted by that element.
    std::vector<std::vector<int>> cycles() const;
    std::string to_string() const;

    /// (p * q)(x) = p(q(x)).
    friend Permutation operator*(const Permutation& p, const Permutation& q);
    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
    std::vector<int> image_;
};

enum class Parity { even, odd };

Parity parity(const Permutation& p);
inline const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

inline int apply_perm(const Permutation& p, int x) { return p(x); }
Subset apply_perm(const Permutation& p, Subset s);
DisjointTuple apply_perm(const Permutation& p, const DisjointTuple& t);
FinitaryPartition apply_perm(const Permutation& p, const FinitaryPartition& part);
ElementSequence apply_perm(const Permutation& p, const ElementSequence& s);
TupleFamily apply_perm(const Permutation& p, const TupleFamily& f);

template <class T>
std::vector<T> apply_perm(const Permutation& p, const std::vector<T>& v) {
    std::vector<T> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(apply_perm(p, x));
    return out;
}

template <class T>
std::set<T> apply_perm(const Permutation& p, const std::set<T>& s) {
    std::set<T> out;
    for (const auto& x : s) out.insert(apply_perm(p, x));
    return out;
}

template <class K, class V>
std::map<K, V> apply_perm(const Permutation& p, const std::map<K, V>& graph) {
    std::map<K, V> out;
    for (const auto& [k, v] : graph) out.emplace(apply_perm(p, k), apply_perm(p, v));
    return out;
}

template <class A, class B>
std::pair<A, B> apply_perm(const Permutation& p, const std::pair<A, B>& x) {
    return {apply_perm(p, x.first), apply_perm(p, x.second)};
}

/// True iff every transposition of two elements of {0..a-1} outside E fixes x.
template <class T>
bool is_support(int a, Subset e, const T& x) {
    for (int u = 0; u < a; ++u) {
        if (e.contains(u)) continue;
        for (int v = u + 1; v < a; ++v) {
            if (e.contains(v)) continue;
            if (!(apply_perm(Permutation::transposition(a, u, v), x) == x)) return false;
        }
    }
    return true;
}

struct OrbitPair {
    std::set<ElementSequence> xi;     // images of s under even permutations of B
    std::set<ElementSequence> theta;  // images of s under odd permutations of B
    Subset base;
    ElementSequence seed;
};

/// Throws std::invalid_argument unless |B| = |s| + 1 and s is an injective sequence over B.
OrbitPair even_odd_orbits(Subset base, const ElementSequence& s);

/// Least pair a < b of B lying in the same class of "in the same components of p".
std::optional<std::pair<int, int>> find_fixing_transposition(const DisjointTuple& p, Subset base);

/// P_E: the non-singleton blocks with E removed, empty results dropped.
std::set<Subset> restrict_outside(const FinitaryPartition& p, Subset e);

/// Every block of Q_E is a union of blocks of P_E.
bool preceq(const FinitaryPartition& q, const FinitaryPartition& p, Subset e);

struct SymmetryBudget {
    BigInt max_partitions = 2'000'000;
};

/// { Q in B_n(A) : Q_E = P_E }; throws Infeasible when |B_n(A)| exceeds the budget.
std::set<FinitaryPartition> fiber_of(const FinitaryPartition& p, Subset e, int n, const SymmetryBudget& b = {});

struct ChainReport {
    std::size_t partitions = 0;     // |B_n(A)|
    std::size_t classes = 0;        // distinct P_E
    std::size_t largest_fiber = 0;
    std::size_t longest_chain = 0;  // distinct partitions, each below the previous
    std::size_t longest_strict = 0; // number of distinct P_E along a chain
    std::vector<FinitaryPartition> witness;  // a longest chain, top first
    BigInt bound = 0;               // (n+1)^(|E|+1)
};

/// Longest chain without repetition in (B_n(A), preceq); budgeted like fiber_of.
ChainReport longest_chain(int a, int n, Subset e, const SymmetryBudget& b = {});

}  // namespace fpart
