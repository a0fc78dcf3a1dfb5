#pragma once

// The operator calculus on families of disjoint tuples.
//
//   gamma_l(X) = { q in O_l : p <= q for some p in X }
//   alpha_l(X) = { p in O_m : every l-extension of p lies in gamma_l(X) }
//   delta_l(X) = alpha_l(X) \ X
//
// where p <= q means componentwise inclusion. Families are dense bitsets over
// the lexicographic enumeration of their tuple space.

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "fpart/core.hpp"
#include "fpart/tuple_space.hpp"

namespace fpart {

bool tuple_extends(const DisjointTuple& p, const DisjointTuple& q);
/// Componentwise union; throws InvariantError when the result is not pairwise disjoint.
DisjointTuple tuple_join(const DisjointTuple& p, const DisjointTuple& q);
DisjointTuple tuple_meet(const DisjointTuple& p, const DisjointTuple& q);

/// Profiles m <= l of equal arity.
class ProfilePair {
public:
    ProfilePair(SizeProfile lower, SizeProfile upper);

    const SizeProfile& lower() const { return lower_; }
    const SizeProfile& upper() const { return upper_; }

private:
    SizeProfile lower_;
    SizeProfile upper_;
};

class TupleFamily {
public:
    TupleFamily(int a, const SizeProfile& profile);
    TupleFamily(std::shared_ptr<const TupleSpace> space, Bits members);
    TupleFamily(int a, const SizeProfile& profile, const std::vector<DisjointTuple>& members);

    static TupleFamily full(int a, const SizeProfile& profile);

    int ground_size() const { return space_->ground_size(); }
    const SizeProfile& profile() const { return space_->profile(); }
    const TupleSpace& space() const { return *space_; }
    std::shared_ptr<const TupleSpace> space_ptr() const { return space_; }
    const Bits& bits() const { return bits_; }

    std::size_t size() const { return bits_.count(); }
    bool empty() const { return bits_.none(); }
    bool contains(const DisjointTuple& t) const;
    void insert(const DisjointTuple& t);
    /// Members in canonical (lexicographic) order.
    std::vector<DisjointTuple> members() const;

    bool subset_of(const TupleFamily& other) const;
    TupleFamily operator|(const TupleFamily& other) const;
    TupleFamily operator&(const TupleFamily& other) const;
    TupleFamily operator-(const TupleFamily& other) const;
    TupleFamily complement() const;

    friend bool operator==(const TupleFamily& x, const TupleFamily& y) {
        return x.ground_size() == y.ground_size() && x.profile() == y.profile() && x.bits_ == y.bits_;
    }
    friend bool operator<(const TupleFamily& x, const TupleFamily& y) { return x.bits_ < y.bits_; }

private:
    void require_same_space(const TupleFamily& other) const;

    std::shared_ptr<const TupleSpace> space_;
    Bits bits_;
};

TupleFamily gamma(const TupleFamily& x, const SizeProfile& upper);
TupleFamily alpha(const TupleFamily& x, const SizeProfile& upper);
TupleFamily delta(const TupleFamily& x, const SizeProfile& upper);
/// delta applied k times; k = 0 returns x.
TupleFamily delta_power(const TupleFamily& x, const SizeProfile& upper, int k);

/// { p in O_m : every l-extension of p lies in z }, for z over profile l.
TupleFamily pullback(const TupleFamily& z, const SizeProfile& lower);

/// delta iteration revisited an earlier family without reaching the empty family.
struct CycleReport {
    int first_index = 0;  // least k whose family recurs
    int period = 0;
    std::vector<TupleFamily> cycle;  // delta^(first_index), ..., one period
};

using NilpotencyResult = std::variant<int, CycleReport>;

/// Least k with delta^(k)(x) empty, or the detected cycle.
NilpotencyResult nilpotency_index(const TupleFamily& x, const SizeProfile& upper);

/// True when O_l(A) has no extension of some member of O_m(A), i.e. alpha is partly vacuous.
bool alpha_has_vacuous_members(int a, const SizeProfile& lower, const SizeProfile& upper);

}  // namespace fpart
