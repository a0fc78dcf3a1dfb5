#include "fpart/lauchli.hpp"

#include <map>
#include <stdexcept>

namespace fpart {

namespace {

void require_arity(const DisjointTuple& p, const DisjointTuple& q) {
    if (p.arity() != q.arity()) throw std::invalid_argument("tuples differ in arity");
}

}  // namespace

bool tuple_extends(const DisjointTuple& p, const DisjointTuple& q) {
    require_arity(p, q);
    for (int i = 0; i < p.arity(); ++i) {
        if (!p[i].subset_of(q[i])) return false;
    }
    return true;
}

DisjointTuple tuple_join(const DisjointTuple& p, const DisjointTuple& q) {
    require_arity(p, q);
    std::vector<Subset> c(p.arity());
    for (int i = 0; i < p.arity(); ++i) c[i] = p[i] | q[i];
    return DisjointTuple(std::move(c));
}

DisjointTuple tuple_meet(const DisjointTuple& p, const DisjointTuple& q) {
    require_arity(p, q);
    std::vector<Subset> c(p.arity());
    for (int i = 0; i < p.arity(); ++i) c[i] = p[i] & q[i];
    return DisjointTuple(std::move(c));
}

ProfilePair::ProfilePair(SizeProfile lower, SizeProfile upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.arity() != upper_.arity()) {
        throw std::invalid_argument("profiles " + lower_.to_string() + " and " + upper_.to_string() +
                                    " differ in arity");
    }
    for (int i = 0; i < lower_.arity(); ++i) {
        if (lower_[i] > upper_[i]) {
            throw std::invalid_argument("m_" + std::to_string(i + 1) + " = " + std::to_string(lower_[i]) +
                                        " exceeds l_" + std::to_string(i + 1) + " = " + std::to_string(upper_[i]));
        }
    }
}

TupleFamily::TupleFamily(int a, const SizeProfile& profile)
    : space_(TupleSpace::get(a, profile)), bits_(space_->size()) {}

TupleFamily::TupleFamily(std::shared_ptr<const TupleSpace> space, Bits members)
    : space_(std::move(space)), bits_(std::move(members)) {
    if (bits_.size() != space_->size()) throw std::invalid_argument("member mask does not match the tuple space");
}

TupleFamily::TupleFamily(int a, const SizeProfile& profile, const std::vector<DisjointTuple>& members)
    : TupleFamily(a, profile) {
    for (const auto& t : members) insert(t);
}

TupleFamily TupleFamily::full(int a, const SizeProfile& profile) {
    TupleFamily f(a, profile);
    f.bits_.set();
    return f;
}

bool TupleFamily::contains(const DisjointTuple& t) const {
    const auto i = space_->index_of(t);
    return i != TupleSpace::npos && bits_.test(i);
}

void TupleFamily::insert(const DisjointTuple& t) {
    const auto i = space_->index_of(t);
    if (i == TupleSpace::npos) {
        throw InvariantError("tuple " + t.to_string() + " is not in O" + profile().to_string() + " over " +
                             std::to_string(ground_size()) + " elements");
    }
    bits_.set(i);
}

std::vector<DisjointTuple> TupleFamily::members() const {
    std::vector<DisjointTuple> out;
    out.reserve(size());
    for (auto i = bits_.find_first(); i != Bits::npos; i = bits_.find_next(i)) out.push_back(space_->tuple(i));
    return out;
}

void TupleFamily::require_same_space(const TupleFamily& other) const {
    if (ground_size() != other.ground_size() || profile() != other.profile()) {
        throw std::invalid_argument("families live in different tuple spaces");
    }
}

bool TupleFamily::subset_of(const TupleFamily& other) const {
    require_same_space(other);
    return bits_.is_subset_of(other.bits_);
}

TupleFamily TupleFamily::operator|(const TupleFamily& other) const {
    require_same_space(other);
    return TupleFamily(space_, bits_ | other.bits_);
}

TupleFamily TupleFamily::operator&(const TupleFamily& other) const {
    require_same_space(other);
    return TupleFamily(space_, bits_ & other.bits_);
}

TupleFamily TupleFamily::operator-(const TupleFamily& other) const {
    require_same_space(other);
    return TupleFamily(space_, bits_ - other.bits_);
}

TupleFamily TupleFamily::complement() const { return TupleFamily(space_, ~bits_); }

TupleFamily gamma(const TupleFamily& x, const SizeProfile& upper) {
    ProfilePair pp(x.profile(), upper);
    const auto rel = ExtensionRelation::get(x.ground_size(), pp.lower(), pp.upper());
    Bits out(rel->upper().size());
    for (auto i = x.bits().find_first(); i != Bits::npos; i = x.bits().find_next(i)) out |= rel->up(i);
    return TupleFamily(rel->upper_ptr(), std::move(out));
}

namespace {

// { p : up(p) is contained in z }.
TupleFamily covered_by(const ExtensionRelation& rel, const Bits& z) {
    Bits out(rel.lower().size());
    for (std::uint64_t p = 0; p < rel.lower().size(); ++p) {
        if (rel.up(p).is_subset_of(z)) out.set(p);
    }
    return TupleFamily(rel.lower_ptr(), std::move(out));
}

}  // namespace

TupleFamily alpha(const TupleFamily& x, const SizeProfile& upper) {
    ProfilePair pp(x.profile(), upper);
    const auto rel = ExtensionRelation::get(x.ground_size(), pp.lower(), pp.upper());
    return covered_by(*rel, gamma(x, upper).bits());
}

TupleFamily delta(const TupleFamily& x, const SizeProfile& upper) { return alpha(x, upper) - x; }

TupleFamily delta_power(const TupleFamily& x, const SizeProfile& upper, int k) {
    if (k < 0) throw std::invalid_argument("delta power must be non-negative");
    (void)ProfilePair(x.profile(), upper);
    TupleFamily cur = x;
    for (int i = 0; i < k; ++i) cur = delta(cur, upper);
    return cur;
}

TupleFamily pullback(const TupleFamily& z, const SizeProfile& lower) {
    ProfilePair pp(lower, z.profile());
    const int a = z.ground_size();
    if (pp.upper().total() > a) {
        throw std::invalid_argument("pullback needs a >= sum(l) = " + std::to_string(pp.upper().total()) +
                                    ", got a = " + std::to_string(a));
    }
    const auto rel = ExtensionRelation::get(a, pp.lower(), pp.upper());
    return covered_by(*rel, z.bits());
}

NilpotencyResult nilpotency_index(const TupleFamily& x, const SizeProfile& upper) {
    ProfilePair pp(x.profile(), upper);
    std::map<Bits, int> seen;
    std::vector<TupleFamily> trail;
    TupleFamily cur = x;
    for (int k = 0;; ++k) {
        if (cur.empty()) return k;
        auto [it, fresh] = seen.emplace(cur.bits(), k);
        if (!fresh) {
            CycleReport rep;
            rep.first_index = it->second;
            rep.period = k - it->second;
            rep.cycle.assign(trail.begin() + it->second, trail.end());
            return rep;
        }
        trail.push_back(cur);
        cur = delta(cur, upper);
    }
}

bool alpha_has_vacuous_members(int a, const SizeProfile& lower, const SizeProfile& upper) {
    ProfilePair pp(lower, upper);
    return ExtensionRelation::get(a, pp.lower(), pp.upper())->has_bare_tuples();
}

}  // namespace fpart
