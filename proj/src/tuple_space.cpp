#include "fpart/tuple_space.hpp"

#include <map>
#include <mutex>

#include "fpart/enumerate.hpp"

namespace fpart {

namespace {

template <class Key, class Value, class Make>
std::shared_ptr<const Value> cached(std::map<Key, std::shared_ptr<const Value>>& cache, std::mutex& mu,
                                    const Key& key, Make&& make) {
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    // Built outside the lock; a concurrent duplicate build is discarded.
    auto sp = make();
    std::lock_guard lock(mu);
    return cache.try_emplace(key, std::move(sp)).first->second;
}

}  // namespace

std::shared_ptr<const TupleSpace> TupleSpace::get(int a, const SizeProfile& profile) {
    static std::mutex mu;
    static std::map<std::pair<int, SizeProfile>, std::shared_ptr<const TupleSpace>> cache;
    return cached(cache, mu, std::make_pair(a, profile),
                  [&] { return std::make_shared<const TupleSpace>(a, profile); });
}

TupleSpace::TupleSpace(int a, SizeProfile profile) : a_(a), profile_(std::move(profile)) {
    require_ground_size(a);
    const BigInt total = count_disjoint_tuples(a, profile_);
    if (total > kMaxTuples) {
        throw Infeasible("O" + profile_.to_string() + " over " + std::to_string(a) + " elements has " +
                             total.str() + " tuples, above the dense-index budget",
                         total);
    }
    count_ = static_cast<std::uint64_t>(total);
    const int n = profile_.arity();
    tail_.assign(n, std::vector<std::uint64_t>(a + 1, 0));
    for (int i = 0; i < n; ++i) {
        std::vector<int> rest(profile_.sizes.begin() + i + 1, profile_.sizes.end());
        for (int s = 0; s <= a; ++s) tail_[i][s] = static_cast<std::uint64_t>(count_disjoint_tuples(s, SizeProfile(rest)));
    }
    flat_.reserve(count_ * n);
    for (const auto& t : enum_disjoint_tuples(a, profile_)) {
        for (auto c : t.components()) flat_.push_back(c.bits());
    }
}

DisjointTuple TupleSpace::tuple(std::uint64_t index) const {
    std::vector<Subset> comps(arity());
    for (int i = 0; i < arity(); ++i) comps[i] = component(index, i);
    return DisjointTuple(std::move(comps));
}

std::uint64_t TupleSpace::index_of(const Subset* components) const {
    Subset avail = Subset::prefix(a_);
    std::uint64_t rank = 0;
    for (int i = 0; i < arity(); ++i) {
        const Subset c = components[i];
        if (c.size() != profile_.sizes[i] || !c.subset_of(avail)) return npos;
        rank += rank_k_subset(avail, c) * tail_[i][avail.size() - c.size()];
        avail = avail - c;
    }
    return rank;
}

std::uint64_t TupleSpace::index_of(const DisjointTuple& t) const {
    if (t.arity() != arity()) return npos;
    return index_of(t.components().data());
}

std::shared_ptr<const ExtensionRelation> ExtensionRelation::get(int a, const SizeProfile& m, const SizeProfile& l) {
    static std::mutex mu;
    static std::map<std::tuple<int, SizeProfile, SizeProfile>, std::shared_ptr<const ExtensionRelation>> cache;
    return cached(cache, mu, std::make_tuple(a, m, l),
                  [&] { return std::make_shared<const ExtensionRelation>(a, m, l); });
}

ExtensionRelation::ExtensionRelation(int a, const SizeProfile& m, const SizeProfile& l) {
    if (m.arity() != l.arity()) throw std::invalid_argument("profiles " + m.to_string() + " and " + l.to_string() + " differ in arity");
    if (!m.dominated_by(l)) throw std::invalid_argument("profile " + m.to_string() + " is not dominated by " + l.to_string());
    lower_ = TupleSpace::get(a, m);
    upper_ = TupleSpace::get(a, l);
    const BigInt bits = BigInt(lower_->size()) * upper_->size();
    if (bits > kMaxBits) {
        throw Infeasible("extension relation " + m.to_string() + " -> " + l.to_string() + " over " +
                             std::to_string(a) + " elements needs " + bits.str() + " bits",
                         bits);
    }
    up_.assign(lower_->size(), Bits(upper_->size()));
    std::vector<Subset> q(l.arity());
    for (std::uint64_t qi = 0; qi < upper_->size(); ++qi) {
        for (int i = 0; i < l.arity(); ++i) q[i] = upper_->component(qi, i);
        for_each_subtuple(q, m, [&](const std::vector<Subset>& p) { up_[lower_->index_of(p.data())].set(qi); });
    }
    for (const auto& u : up_) {
        if (u.none()) {
            bare_ = true;
            break;
        }
    }
}

}  // namespace fpart
