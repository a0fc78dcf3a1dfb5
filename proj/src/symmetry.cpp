#include "fpart/symmetry.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "fpart/canonical_maps.hpp"
#include "fpart/enumerate.hpp"

namespace fpart {

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
    require_ground_size(size());
    std::vector<bool> hit(image_.size(), false);
    for (int x : image_) {
        if (x < 0 || x >= size() || hit[x]) throw InvariantError("permutation image is not a bijection");
        hit[x] = true;
    }
}

Permutation Permutation::identity(int a) {
    std::vector<int> img(a);
    std::iota(img.begin(), img.end(), 0);
    return Permutation(std::move(img));
}

Permutation Permutation::transposition(int a, int x, int y) {
    auto p = identity(a);
    if (x < 0 || y < 0 || x >= a || y >= a) throw InvariantError("transposition leaves the ground set");
    std::swap(p.image_[x], p.image_[y]);
    return p;
}

Permutation Permutation::from_cycles(int a, const std::vector<std::vector<int>>& cycles) {
    auto p = identity(a);
    for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
        const auto& c = *it;
        std::vector<int> step(a);
        std::iota(step.begin(), step.end(), 0);
        std::set<int> seen;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] < 0 || c[i] >= a) throw InvariantError("cycle entry " + std::to_string(c[i]) + " leaves the ground set");
            if (!seen.insert(c[i]).second) throw InvariantError("cycle repeats " + std::to_string(c[i]));
            step[c[i]] = c[(i + 1) % c.size()];
        }
        p = Permutation(std::move(step)) * p;
    }
    return p;
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(image_.size());
    for (int x = 0; x < size(); ++x) inv[image_[x]] = x;
    return Permutation(std::move(inv));
}

std::vector<std::vector<int>> Permutation::cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(image_.size(), false);
    for (int x = 0; x < size(); ++x) {
        if (seen[x] || image_[x] == x) continue;
        std::vector<int> c;
        for (int y = x; !seen[y]; y = image_[y]) {
            seen[y] = true;
            c.push_back(y);
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::string Permutation::to_string() const {
    const auto cs = cycles();
    if (cs.empty()) return "()";
    std::string s;
    for (const auto& c : cs) {
        s += "(";
        for (std::size_t i = 0; i < c.size(); ++i) s += (i ? " " : "") + std::to_string(c[i]);
        s += ")";
    }
    return s;
}

Permutation operator*(const Permutation& p, const Permutation& q) {
    if (p.size() != q.size()) throw std::invalid_argument("permutations of different ground sets");
    std::vector<int> img(p.size());
    for (int x = 0; x < p.size(); ++x) img[x] = p(q(x));
    return Permutation(std::move(img));
}

Parity parity(const Permutation& p) {
    std::size_t moved_minus_cycles = 0;
    for (const auto& c : p.cycles()) moved_minus_cycles += c.size() - 1;
    return moved_minus_cycles % 2 == 0 ? Parity::even : Parity::odd;
}

Subset apply_perm(const Permutation& p, Subset s) {
    Subset out;
    for (int x : s.elements()) out = out.with(p(x));
    return out;
}

DisjointTuple apply_perm(const Permutation& p, const DisjointTuple& t) {
    std::vector<Subset> c;
    c.reserve(t.arity());
    for (auto s : t.components()) c.push_back(apply_perm(p, s));
    return DisjointTuple(std::move(c));
}

FinitaryPartition apply_perm(const Permutation& p, const FinitaryPartition& part) {
    std::vector<Subset> blocks;
    for (auto b : part.blocks()) blocks.push_back(apply_perm(p, b));
    return FinitaryPartition::canonicalize(part.ground_size(), std::move(blocks));
}

ElementSequence apply_perm(const Permutation& p, const ElementSequence& s) {
    std::vector<int> e;
    for (int x : s.entries) e.push_back(p(x));
    return ElementSequence(std::move(e), s.injective);
}

TupleFamily apply_perm(const Permutation& p, const TupleFamily& f) {
    TupleFamily out(f.ground_size(), f.profile());
    for (const auto& t : f.members()) out.insert(apply_perm(p, t));
    return out;
}

OrbitPair even_odd_orbits(Subset base, const ElementSequence& s) {
    const int k = base.size();
    if (static_cast<int>(s.length()) + 1 != k) {
        throw std::invalid_argument("base must have exactly one more element than the sequence (|B| = n+2, |s| = n+1)");
    }
    std::set<int> seen;
    for (int x : s.entries) {
        if (!base.contains(x)) throw std::invalid_argument("sequence entry " + std::to_string(x) + " is not in B");
        if (!seen.insert(x).second) throw std::invalid_argument("sequence is not injective");
    }
    const int a = base.empty() ? 0 : base.max() + 1;
    const auto elems = base.elements();
    auto arrangement = elems;
    OrbitPair out{{}, {}, base, ElementSequence(s.entries, true)};
    do {
        std::vector<int> img(a);
        std::iota(img.begin(), img.end(), 0);
        for (std::size_t i = 0; i < elems.size(); ++i) img[elems[i]] = arrangement[i];
        Permutation pi(std::move(img));
        auto moved = apply_perm(pi, out.seed);
        (parity(pi) == Parity::even ? out.xi : out.theta).insert(std::move(moved));
    } while (std::next_permutation(arrangement.begin(), arrangement.end()));
    return out;
}

std::optional<std::pair<int, int>> find_fixing_transposition(const DisjointTuple& p, Subset base) {
    const auto cls = signature_classes_within(base, p.components());
    std::optional<std::pair<int, int>> best;
    auto consider = [&](Subset c) {
        if (c.size() < 2) return;
        const auto e = c.elements();
        std::pair<int, int> pr{e[0], e[1]};
        if (!best || pr < *best) best = pr;
    };
    consider(cls.outside);
    for (const auto& [sig, c] : cls.inside) consider(c);
    return best;
}

std::set<Subset> restrict_outside(const FinitaryPartition& p, Subset e) {
    std::set<Subset> out;
    for (auto b : p.ns()) {
        if (auto r = b - e; !r.empty()) out.insert(r);
    }
    return out;
}

namespace {

bool preceq_projected(const std::set<Subset>& qe, const std::set<Subset>& pe) {
    for (auto q : qe) {
        Subset cover;
        for (auto p : pe) {
            if (p.subset_of(q)) cover = cover | p;
        }
        if (cover != q) return false;
    }
    return true;
}

std::vector<FinitaryPartition> budgeted_B_n(int a, int n, const SymmetryBudget& b) {
    const auto count = count_B_n(a, n);
    if (count > b.max_partitions) {
        throw Infeasible("|B_" + std::to_string(n) + "| over " + std::to_string(a) + " elements exceeds the budget",
                         count);
    }
    return enum_B_n(a, n).collect();
}

}  // namespace

bool preceq(const FinitaryPartition& q, const FinitaryPartition& p, Subset e) {
    if (q.ground_size() != p.ground_size()) throw std::invalid_argument("partitions of different ground sets");
    return preceq_projected(restrict_outside(q, e), restrict_outside(p, e));
}

std::set<FinitaryPartition> fiber_of(const FinitaryPartition& p, Subset e, int n, const SymmetryBudget& b) {
    const auto target = restrict_outside(p, e);
    std::set<FinitaryPartition> out;
    for (auto& q : budgeted_B_n(p.ground_size(), n, b)) {
        if (restrict_outside(q, e) == target) out.insert(std::move(q));
    }
    return out;
}

ChainReport longest_chain(int a, int n, Subset e, const SymmetryBudget& b) {
    const auto all = budgeted_B_n(a, n, b);
    std::map<std::set<Subset>, std::vector<FinitaryPartition>> fibers;
    for (const auto& p : all) fibers[restrict_outside(p, e)].push_back(p);

    std::vector<const std::set<Subset>*> keys;
    for (const auto& [k, v] : fibers) keys.push_back(&k);
    // Going strictly down the preorder strictly shrinks |P_E|, so this order is topological.
    std::stable_sort(keys.begin(), keys.end(), [](auto x, auto y) { return x->size() < y->size(); });

    const std::size_t m = keys.size();
    std::vector<std::size_t> best(m), strict(m);
    std::vector<std::size_t> next(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t w = fibers[*keys[i]].size();
        best[i] = w;
        strict[i] = 1;
        for (std::size_t k = 0; k < i; ++k) {
            if (keys[k]->size() >= keys[i]->size()) break;
            if (!preceq_projected(*keys[k], *keys[i])) continue;
            if (w + best[k] > best[i]) {
                best[i] = w + best[k];
                next[i] = k;
            }
            strict[i] = std::max(strict[i], strict[k] + 1);
        }
    }

    ChainReport rep;
    rep.partitions = all.size();
    rep.classes = m;
    for (const auto& [k, v] : fibers) rep.largest_fiber = std::max(rep.largest_fiber, v.size());
    std::size_t top = m;
    for (std::size_t i = 0; i < m; ++i) {
        if (top == m || best[i] > best[top]) top = i;
        rep.longest_strict = std::max(rep.longest_strict, strict[i]);
    }
    if (top < m) rep.longest_chain = best[top];
    for (std::size_t i = top; i < m; i = next[i]) {
        for (const auto& p : fibers[*keys[i]]) rep.witness.push_back(p);
    }
    rep.bound = boost::multiprecision::pow(BigInt(n + 1), static_cast<unsigned>(e.size() + 1));
    return rep;
}

}  // namespace fpart
