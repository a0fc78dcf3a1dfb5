#pragma once

// Explicit maps between tuples, partitions and finite subsets:
//   - the tuple-to-partition surjection O_n(A) -> B_n(A)
//   - the bijection pair fin(A)^n <-> O_{2^n-1}(A)
//   - the partial surjection from n-sets of finite subsets onto B_{2^n-1}(A)
//   - membership-signature classes, shared by every induced equivalence

#include <map>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fpart/core.hpp"

namespace fpart {

/// The binary-indicator bijection i <-> {k < n : bit k of i is set}, for 1 <= i < 2^n.
class SubsetIndexBijection {
public:
    explicit SubsetIndexBijection(int arity);

    int arity() const { return arity_; }
    int size() const { return (1 << arity_) - 1; }
    /// h(i) as a bitmask over {0..n-1}; i in [1, 2^n - 1].
    unsigned subset_of(int index) const;
    /// h^{-1}(mask); mask non-empty.
    int index_of(unsigned mask) const;

private:
    int arity_;
};

/// The classes of x ~ y  <=>  every set contains both or neither.
///
/// Signatures are bitmasks over the positions of the input sets (bit i = set i).
struct SignatureClasses {
    std::map<unsigned, Subset> inside;  // non-empty signature -> class
    Subset outside;                     // elements in no set

    friend bool operator==(const SignatureClasses&, const SignatureClasses&) = default;
};

SignatureClasses signature_classes(int a, const std::vector<Subset>& sets);
/// Same relation restricted to `domain`.
SignatureClasses signature_classes_within(Subset domain, const std::vector<Subset>& sets);

struct TupleImage {
    FinitaryPartition partition;
    bool lands_in_B_n = false;
};

/// Non-empty components become blocks, everything else becomes a singleton.
TupleImage tuple_to_partition(int a, const DisjointTuple& tuple);

/// Component i is the set of elements lying in exactly the sets indexed by h(i).
DisjointTuple fin_to_disjoint(const std::vector<Subset>& sets);
/// Inverse of fin_to_disjoint; throws std::invalid_argument unless arity == 2^n - 1.
std::vector<Subset> disjoint_to_fin(const DisjointTuple& tuple, int n);

struct Undefined {
    std::string reason;
    friend bool operator==(const Undefined&, const Undefined&) = default;
};

using BfinResult = std::variant<FinitaryPartition, Undefined>;

/// Defined iff all 2^n - 1 inside signature classes exist and have size >= 2; the
/// outside class is always split into singletons.
BfinResult bfin_map(int a, const std::set<Subset>& sets);

/// ns(P), the set of non-singleton blocks.
std::set<Subset> ns_injection(const FinitaryPartition& p);

}  // namespace fpart
