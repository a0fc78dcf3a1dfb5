#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "fpart/canonical_maps.hpp"
#include "fpart/enumerate.hpp"
#include "fpart/symmetry.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace {

using namespace fpart;
using testutil::part;
using testutil::set;
using testutil::tup;

Permutation random_perm(std::mt19937_64& rng, int a) {
    std::vector<int> img(a);
    std::iota(img.begin(), img.end(), 0);
    std::shuffle(img.begin(), img.end(), rng);
    return Permutation(img);
}

ElementSequence seq(std::vector<int> e) { return ElementSequence(std::move(e), true); }

TEST(Permutation, Construction) {
    EXPECT_THROW(Permutation({0, 0}), InvariantError);
    EXPECT_THROW(Permutation({1, 2}), InvariantError);
    auto c = Permutation::from_cycles(4, {{0, 1, 2}});
    EXPECT_EQ(c.image(), (std::vector<int>{1, 2, 0, 3}));
    EXPECT_EQ(c.to_string(), "(0 1 2)");
    EXPECT_EQ(c * c.inverse(), Permutation::identity(4));
    // right to left: first (1 2), then (0 1)
    EXPECT_EQ(Permutation::from_cycles(3, {{0, 1}, {1, 2}}), Permutation::from_cycles(3, {{0, 1, 2}}));
}

TEST(ApplyPerm, Examples) {
    const auto t01 = Permutation::transposition(4, 0, 1);
    EXPECT_EQ(apply_perm(t01, part(4, {{0, 2}, {1}, {3}})), part(4, {{1, 2}, {0}, {3}}));
    const auto x = part(5, {{0, 3}, {1, 2, 4}});
    EXPECT_EQ(apply_perm(Permutation::identity(5), x), x);
    const auto c = Permutation::from_cycles(4, {{0, 1, 2}});
    EXPECT_EQ(apply_perm(c, tup({{0}, {1, 3}})), tup({{1}, {2, 3}}));

    std::map<Subset, int> graph = {{set({0}), 1}, {set({1, 2}), 3}};
    std::map<Subset, int> moved = {{set({1}), 2}, {set({2, 0}), 3}};
    EXPECT_EQ(apply_perm(c, graph), moved);
}

TEST(ApplyPerm, ActionLaws) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const int a = 1 + static_cast<int>(rng() % 7);
        const auto pi = random_perm(rng, a);
        const auto sigma = random_perm(rng, a);
        auto parts = enum_partitions(a).collect();
        const auto& p = parts[rng() % parts.size()];
        EXPECT_EQ(apply_perm(Permutation::identity(a), p), p);
        EXPECT_EQ(apply_perm(pi * sigma, p), apply_perm(pi, apply_perm(sigma, p)));

        TupleFamily f(a, SizeProfile{1});
        for (int x = 0; x < a; ++x) {
            if (rng() & 1) f.insert(tup({{x}}));
        }
        EXPECT_EQ(apply_perm(pi * sigma, f), apply_perm(pi, apply_perm(sigma, f)));
        EXPECT_EQ(apply_perm(pi, f).size(), f.size());

        std::set<std::vector<Subset>> nested = {{set({0}), Subset::prefix(a)}};
        EXPECT_EQ(apply_perm(pi * sigma, nested), apply_perm(pi, apply_perm(sigma, nested)));
    }
}

TEST(Parity, ExamplesAndHomomorphism) {
    EXPECT_EQ(parity(Permutation::identity(5)), Parity::even);
    EXPECT_EQ(parity(Permutation::transposition(5, 0, 1)), Parity::odd);
    EXPECT_EQ(parity(Permutation::from_cycles(5, {{0, 1, 2}})), Parity::even);
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 500; ++trial) {
        const int a = 1 + static_cast<int>(rng() % 9);
        const auto p = random_perm(rng, a);
        const auto q = random_perm(rng, a);
        const bool odd = (parity(p) == Parity::odd) != (parity(q) == Parity::odd);
        EXPECT_EQ(parity(p * q), odd ? Parity::odd : Parity::even);
        // inversion count has the same parity
        int inv = 0;
        for (int i = 0; i < a; ++i) {
            for (int j = i + 1; j < a; ++j) inv += p(i) > p(j);
        }
        EXPECT_EQ(parity(p), inv % 2 ? Parity::odd : Parity::even);
    }
}

TEST(Support, Examples) {
    const auto p = part(6, {{0, 3}, {1}, {2}, {4, 5}});
    EXPECT_TRUE(is_support(6, set({0, 3, 4, 5}), p));
    EXPECT_TRUE(is_support(5, Subset(), Subset::prefix(5)));
    EXPECT_FALSE(is_support(4, set({0}), part(4, {{0, 1}, {2}, {3}})));
    EXPECT_FALSE(is_support(6, set({0, 3}), p));
}

TEST(Support, MatchesFullStabilizerAndIsMonotone) {
    // Compare with every permutation fixing E pointwise, and check E subset E' keeps support.
    const int a = 5;
    std::vector<int> img(a);
    std::iota(img.begin(), img.end(), 0);
    std::vector<Permutation> all;
    do {
        all.emplace_back(img);
    } while (std::next_permutation(img.begin(), img.end()));
    const auto parts = enum_partitions(a).collect();
    for (std::uint64_t em = 0; em < (1u << a); ++em) {
        const auto e = Subset::from_bits(em);
        for (const auto& p : parts) {
            bool full = true;
            for (const auto& pi : all) {
                bool fixes_e = true;
                for (int x : e.elements()) fixes_e = fixes_e && pi(x) == x;
                if (fixes_e && apply_perm(pi, p) != p) {
                    full = false;
                    break;
                }
            }
            const bool sup = is_support(a, e, p);
            EXPECT_EQ(sup, full) << p.to_string() << " E=" << e.to_string();
            if (sup) {
                for (int x = 0; x < a; ++x) EXPECT_TRUE(is_support(a, e.with(x), p));
            }
        }
    }
    for (const auto& p : parts) {
        Subset u;
        for (auto b : p.ns()) u = u | b;
        EXPECT_TRUE(is_support(a, u, p));
    }
}

TEST(Orbits, Example) {
    auto o = even_odd_orbits(set({0, 1, 2}), seq({0, 1}));
    EXPECT_EQ(o.xi, (std::set<ElementSequence>{seq({0, 1}), seq({1, 2}), seq({2, 0})}));
    EXPECT_EQ(o.theta, (std::set<ElementSequence>{seq({1, 0}), seq({0, 2}), seq({2, 1})}));
    EXPECT_THROW(even_odd_orbits(set({0, 1, 2}), seq({0})), std::invalid_argument);
    EXPECT_THROW(even_odd_orbits(set({0, 1, 2}), ElementSequence({0, 0}, false)), std::invalid_argument);
    EXPECT_THROW(even_odd_orbits(set({0, 1, 2}), seq({0, 5})), std::invalid_argument);
}

TEST(Orbits, InvariantsAndOddSwap) {
    for (int n = 0; n <= 3; ++n) {
        const auto base = Subset::prefix(n + 2);
        std::set<ElementSequence> injective;
        for (const auto& s : enum_sequences(n + 2, n + 1, true)) injective.insert(seq(s.entries));
        for (const auto& s : injective) {
            const auto o = even_odd_orbits(base, s);
            EXPECT_EQ(o.xi.size(), oracle::factorial(n + 2) / 2);
            EXPECT_EQ(o.theta.size(), oracle::factorial(n + 2) / 2);
            std::set<ElementSequence> uni = o.xi;
            for (const auto& t : o.theta) EXPECT_TRUE(uni.insert(t).second);
            EXPECT_EQ(uni, injective);
            for (int x = 0; x < n + 2; ++x) {
                for (int y = x + 1; y < n + 2; ++y) {
                    const auto t = Permutation::transposition(n + 2, x, y);
                    EXPECT_EQ(apply_perm(t, o.xi), o.theta);
                    EXPECT_EQ(apply_perm(t, o.theta), o.xi);
                }
            }
        }
    }
}

TEST(FixingTransposition, Examples) {
    EXPECT_EQ(find_fixing_transposition(tup({{0}, {1}}), set({0, 1, 2, 3})), std::make_pair(2, 3));
    EXPECT_EQ(find_fixing_transposition(tup({{0, 1}, {2, 3}}), set({0, 1, 2, 3})), std::make_pair(0, 1));
    auto any = find_fixing_transposition(tup({{5}}), set({0, 1, 2}));
    ASSERT_TRUE(any);
    EXPECT_TRUE(set({0, 1, 2}).contains(any->first) && set({0, 1, 2}).contains(any->second));
}

TEST(FixingTransposition, TotalAndFixing) {
    for (int n = 0; n <= 2; ++n) {
        for (int a = n + 2; a <= 7; ++a) {
            const auto bases = enum_k_subsets(a, n + 2).collect();
            for (const auto& p : enum_O_n(a, n)) {
                for (auto b : bases) {
                    auto t = find_fixing_transposition(p, b);
                    ASSERT_TRUE(t) << p.to_string() << " B=" << b.to_string();
                    EXPECT_EQ(apply_perm(Permutation::transposition(a, t->first, t->second), p), p);
                }
            }
        }
    }
}

TEST(RestrictOutside, Examples) {
    EXPECT_EQ(restrict_outside(part(6, {{0, 1, 4}, {2, 3}, {5}}), set({4, 5})),
              (std::set<Subset>{set({0, 1}), set({2, 3})}));
    const auto p = part(6, {{0, 1}, {2, 3}, {4}, {5}});
    EXPECT_EQ(restrict_outside(p, set({4, 5})), ns_injection(p));
    EXPECT_EQ(restrict_outside(p, set({0, 1})), (std::set<Subset>{set({2, 3})}));
}

TEST(Preceq, Examples) {
    const auto p = part(4, {{0, 2}, {1, 3}});
    const auto q = part(4, {{0, 1, 2, 3}});
    EXPECT_TRUE(preceq(q, p, Subset()));
    EXPECT_TRUE(preceq(p, p, Subset()));
    EXPECT_FALSE(preceq(part(4, {{0, 2}, {1}, {3}}), part(4, {{0, 1}, {2}, {3}}), Subset()));
}

TEST(Fiber, Examples) {
    const auto p = part(5, {{1, 2}, {0}, {3}, {4}});
    auto f = fiber_of(p, set({0}), 1);
    EXPECT_EQ(f, (std::set<FinitaryPartition>{p, part(5, {{0, 1, 2}, {3}, {4}})}));
    EXPECT_EQ(fiber_of(p, Subset(), 1), std::set<FinitaryPartition>{p});
    SymmetryBudget tiny;
    tiny.max_partitions = 3;
    EXPECT_THROW(fiber_of(p, Subset(), 1, tiny), Infeasible);
}

TEST(Fiber, BoundAndProjectionLawExhaustive) {
    const int a = 5;
    for (int n = 1; n <= 2; ++n) {
        const auto all = enum_B_n(a, n).collect();
        for (std::uint64_t em = 0; em < (1u << a); ++em) {
            const auto e = Subset::from_bits(em);
            if (e.size() > 2) continue;
            std::uint64_t bound = 1;
            for (int i = 0; i < e.size(); ++i) bound *= n + 1;
            for (const auto& p : all) {
                const auto f = fiber_of(p, e, n);
                EXPECT_LE(f.size(), bound);
                // oracle: filter all partitions directly
                std::size_t direct = 0;
                for (const auto& q : all) direct += restrict_outside(q, e) == restrict_outside(p, e);
                EXPECT_EQ(f.size(), direct);
                for (const auto& q : all) {
                    const auto qe = restrict_outside(q, e), pe = restrict_outside(p, e);
                    if (preceq(q, p, e) && qe.size() == pe.size()) EXPECT_EQ(qe, pe);
                    if (preceq(q, p, e) && preceq(p, q, e)) EXPECT_EQ(qe, pe);
                }
            }
        }
    }
}

TEST(Chain, WithinBound) {
    for (int a = 2; a <= 5; ++a) {
        for (std::uint64_t em = 0; em < (1u << a); ++em) {
            const auto e = Subset::from_bits(em);
            if (e.size() > 1) continue;
            const auto rep = longest_chain(a, 1, e);
            EXPECT_LE(BigInt(rep.longest_chain), rep.bound) << "a=" << a << " E=" << e.to_string();
            EXPECT_LE(rep.longest_strict, 2u);
            ASSERT_EQ(rep.witness.size(), rep.longest_chain);
            std::set<FinitaryPartition> distinct(rep.witness.begin(), rep.witness.end());
            EXPECT_EQ(distinct.size(), rep.witness.size());
            for (std::size_t i = 0; i + 1 < rep.witness.size(); ++i) {
                EXPECT_TRUE(preceq(rep.witness[i + 1], rep.witness[i], e));
            }
        }
    }
}

TEST(Chain, MatchesBruteForceLongestPath) {
    // Exhaustive DFS over chains of distinct partitions for tiny cases.
    for (int a = 2; a <= 4; ++a) {
        for (std::uint64_t em = 0; em < 2; ++em) {
            const auto e = Subset::from_bits(em);
            const auto all = enum_B_n(a, 1).collect();
            std::size_t best = 0;
            std::vector<bool> used(all.size(), false);
            std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t last, std::size_t len) {
                best = std::max(best, len);
                for (std::size_t k = 0; k < all.size(); ++k) {
                    if (used[k] || !preceq(all[k], all[last], e)) continue;
                    used[k] = true;
                    dfs(k, len + 1);
                    used[k] = false;
                }
            };
            for (std::size_t s = 0; s < all.size(); ++s) {
                used[s] = true;
                dfs(s, 1);
                used[s] = false;
            }
            EXPECT_EQ(longest_chain(a, 1, e).longest_chain, best) << "a=" << a << " E=" << e.to_string();
        }
    }
}

}  // namespace
