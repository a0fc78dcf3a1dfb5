#include "fpart/canonical_maps.hpp"

#include <stdexcept>

namespace fpart {

SubsetIndexBijection::SubsetIndexBijection(int arity) : arity_(arity) {
    if (arity < 1 || arity > 5) throw std::invalid_argument("subset index bijection supports 1 <= n <= 5");
}

unsigned SubsetIndexBijection::subset_of(int index) const {
    if (index < 1 || index > size()) throw std::out_of_range("index outside [1, 2^n - 1]");
    return static_cast<unsigned>(index);
}

int SubsetIndexBijection::index_of(unsigned mask) const {
    if (mask == 0 || mask > static_cast<unsigned>(size())) throw std::out_of_range("mask is not a non-empty subset of n");
    return static_cast<int>(mask);
}

SignatureClasses signature_classes_within(Subset domain, const std::vector<Subset>& sets) {
    if (sets.size() > 32) throw std::invalid_argument("at most 32 sets");
    SignatureClasses out;
    for (int x : domain.elements()) {
        unsigned sig = 0;
        for (std::size_t i = 0; i < sets.size(); ++i) {
            if (sets[i].contains(x)) sig |= 1u << i;
        }
        if (sig == 0) {
            out.outside = out.outside.with(x);
        } else {
            out.inside[sig] = out.inside[sig].with(x);
        }
    }
    return out;
}

SignatureClasses signature_classes(int a, const std::vector<Subset>& sets) {
    return signature_classes_within(Subset::prefix(a), sets);
}

TupleImage tuple_to_partition(int a, const DisjointTuple& tuple) {
    const Subset ground = Subset::prefix(a);
    std::vector<Subset> blocks;
    for (auto c : tuple.components()) {
        if (!c.subset_of(ground)) throw InvariantError("tuple component " + c.to_string() + " leaves the ground set");
        if (!c.empty()) blocks.push_back(c);
    }
    for (int x : (ground - tuple.support()).elements()) blocks.push_back(Subset::of({x}));
    TupleImage img{FinitaryPartition::canonicalize(a, std::move(blocks)), false};
    img.lands_in_B_n = img.partition.ns_count() == tuple.arity();
    return img;
}

DisjointTuple fin_to_disjoint(const std::vector<Subset>& sets) {
    const int n = static_cast<int>(sets.size());
    SubsetIndexBijection h(n);
    Subset all;
    for (auto s : sets) all = all | s;
    const auto classes = signature_classes_within(all, sets);
    std::vector<Subset> comps(h.size());
    for (int i = 1; i <= h.size(); ++i) {
        if (auto it = classes.inside.find(h.subset_of(i)); it != classes.inside.end()) comps[i - 1] = it->second;
    }
    return DisjointTuple(std::move(comps));
}

std::vector<Subset> disjoint_to_fin(const DisjointTuple& tuple, int n) {
    if (n < 1 || n > 5 || tuple.arity() != (1 << n) - 1) {
        throw std::invalid_argument("tuple arity " + std::to_string(tuple.arity()) + " is not 2^" +
                                    std::to_string(n) + " - 1");
    }
    SubsetIndexBijection h(n);
    std::vector<Subset> out(n);
    for (int i = 1; i <= h.size(); ++i) {
        const unsigned mask = h.subset_of(i);
        for (int k = 0; k < n; ++k) {
            if (mask & (1u << k)) out[k] = out[k] | tuple[i - 1];
        }
    }
    return out;
}

BfinResult bfin_map(int a, const std::set<Subset>& sets) {
    const int n = static_cast<int>(sets.size());
    if (n < 1) throw std::invalid_argument("bfin_map needs at least one set");
    if (n > 5) throw std::invalid_argument("bfin_map supports at most 5 sets");
    const std::vector<Subset> ordered(sets.begin(), sets.end());
    const auto classes = signature_classes(a, ordered);
    const unsigned full = (1u << n) - 1;
    std::vector<Subset> blocks;
    for (unsigned sig = 1; sig <= full; ++sig) {
        auto it = classes.inside.find(sig);
        if (it == classes.inside.end()) {
            return Undefined{"missing signature class " + std::to_string(sig)};
        }
        if (it->second.size() < 2) {
            return Undefined{"signature class " + it->second.to_string() + " is a singleton"};
        }
        blocks.push_back(it->second);
    }
    for (int x : classes.outside.elements()) blocks.push_back(Subset::of({x}));
    return FinitaryPartition::canonicalize(a, std::move(blocks));
}

std::set<Subset> ns_injection(const FinitaryPartition& p) {
    const auto ns = p.ns();
    return {ns.begin(), ns.end()};
}

}  // namespace fpart
