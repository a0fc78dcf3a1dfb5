#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "fpart/canonical_maps.hpp"
#include "fpart/enumerate.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace {

using namespace fpart;
using testutil::part;
using testutil::set;
using testutil::tup;

Subset permute(const std::vector<int>& pi, Subset s) {
    Subset out;
    for (int x : s.elements()) out = out.with(pi[x]);
    return out;
}

DisjointTuple permute(const std::vector<int>& pi, const DisjointTuple& t) {
    std::vector<Subset> c;
    for (auto s : t.components()) c.push_back(permute(pi, s));
    return DisjointTuple(std::move(c));
}

FinitaryPartition permute(const std::vector<int>& pi, const FinitaryPartition& p) {
    std::vector<Subset> b;
    for (auto s : p.blocks()) b.push_back(permute(pi, s));
    return FinitaryPartition::canonicalize(p.ground_size(), std::move(b));
}

std::vector<Subset> random_sets(std::mt19937_64& rng, int a, int n) {
    std::vector<Subset> out;
    for (int i = 0; i < n; ++i) out.push_back(Subset::from_bits(rng() & Subset::prefix(a).bits()));
    return out;
}

TEST(SignatureClasses, Examples) {
    auto one = signature_classes(4, {set({0, 1})});
    EXPECT_EQ(one.inside.size(), 1u);
    EXPECT_EQ(one.inside.at(1u), set({0, 1}));
    EXPECT_EQ(one.outside, set({2, 3}));

    auto two = signature_classes(3, {set({0, 1}), set({1, 2})});
    EXPECT_EQ(two.inside.size(), 3u);
    EXPECT_EQ(two.inside.at(0b01u), set({0}));
    EXPECT_EQ(two.inside.at(0b10u), set({2}));
    EXPECT_EQ(two.inside.at(0b11u), set({1}));
    EXPECT_TRUE(two.outside.empty());

    auto none = signature_classes(2, {});
    EXPECT_TRUE(none.inside.empty());
    EXPECT_EQ(none.outside, set({0, 1}));
}

TEST(SignatureClasses, CoverAndMatchPairwiseRelation) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const int a = 1 + static_cast<int>(rng() % 8);
        const auto sets = random_sets(rng, a, static_cast<int>(rng() % 4));
        const auto cls = signature_classes(a, sets);
        Subset cover = cls.outside;
        for (const auto& [sig, c] : cls.inside) {
            EXPECT_FALSE(c.intersects(cover));
            cover = cover | c;
        }
        EXPECT_EQ(cover, Subset::prefix(a));
        auto same_class = [&](int x, int y) {
            if (cls.outside.contains(x)) return cls.outside.contains(y);
            for (const auto& [sig, c] : cls.inside) {
                if (c.contains(x)) return c.contains(y);
            }
            return false;
        };
        for (int x = 0; x < a; ++x) {
            for (int y = 0; y < a; ++y) {
                bool related = true;
                for (auto s : sets) related = related && (s.contains(x) == s.contains(y));
                EXPECT_EQ(same_class(x, y), related);
            }
        }
    }
}

TEST(TupleToPartition, Examples) {
    auto r1 = tuple_to_partition(5, tup({{0, 1}, {}}));
    EXPECT_EQ(r1.partition, part(5, {{0, 1}, {2}, {3}, {4}}));
    EXPECT_FALSE(r1.lands_in_B_n);

    auto r2 = tuple_to_partition(5, tup({{0, 1}, {2, 3}}));
    EXPECT_EQ(r2.partition, part(5, {{0, 1}, {2, 3}, {4}}));
    EXPECT_TRUE(r2.lands_in_B_n);

    auto r3 = tuple_to_partition(4, tup({{0}, {1, 2}}));
    EXPECT_EQ(r3.partition, part(4, {{0}, {1, 2}, {3}}));
    EXPECT_FALSE(r3.lands_in_B_n);
}

TEST(TupleToPartition, RestrictionIsOntoBn) {
    for (int a = 0; a <= 5; ++a) {
        for (int n = 0; n <= 2; ++n) {
            std::set<FinitaryPartition> image;
            for (const auto& t : enum_O_n(a, n)) {
                auto r = tuple_to_partition(a, t);
                if (r.lands_in_B_n) image.insert(r.partition);
            }
            auto all = enum_B_n(a, n).collect();
            EXPECT_EQ(image, std::set<FinitaryPartition>(all.begin(), all.end())) << "a=" << a << " n=" << n;
        }
    }
}

TEST(FinToDisjoint, Examples) {
    EXPECT_EQ(fin_to_disjoint({set({3, 5})}), tup({{3, 5}}));
    EXPECT_EQ(fin_to_disjoint({set({0, 1}), set({1, 2})}), tup({{0}, {2}, {1}}));
    EXPECT_EQ(fin_to_disjoint({Subset(), Subset()}), tup({{}, {}, {}}));
}

TEST(DisjointToFin, Examples) {
    EXPECT_EQ(disjoint_to_fin(tup({{0}, {2}, {1}}), 2), (std::vector<Subset>{set({0, 1}), set({1, 2})}));
    EXPECT_EQ(disjoint_to_fin(tup({{}}), 1), (std::vector<Subset>{Subset()}));
    EXPECT_EQ(disjoint_to_fin(tup({{}, {}, {4}}), 2), (std::vector<Subset>{set({4}), set({4})}));
    EXPECT_THROW(disjoint_to_fin(tup({{}, {}}), 2), std::invalid_argument);
}

TEST(FinToDisjoint, ComponentsFollowTheDefiningFormula) {
    // p_i = (intersection of s(k), k in h(i)) minus (union of s(k), k not in h(i)).
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const auto s = random_sets(rng, 8, n);
        const auto t = fin_to_disjoint(s);
        ASSERT_EQ(t.arity(), (1 << n) - 1);
        for (int i = 1; i < (1 << n); ++i) {
            Subset in = Subset::prefix(8);
            Subset out;
            for (int k = 0; k < n; ++k) {
                if (i >> k & 1) {
                    in = in & s[k];
                } else {
                    out = out | s[k];
                }
            }
            EXPECT_EQ(t[i - 1], in - out);
        }
    }
}

TEST(FinToDisjoint, ExhaustiveRoundTrips) {
    for (int a = 0; a <= 5; ++a) {
        const auto subsets = enum_subsets(a).collect();
        for (int n = 1; n <= 3; ++n) {
            if (a == 5 && n == 3) continue;  // covered by the O-side loop below
            std::vector<std::size_t> idx(n, 0);
            std::size_t total = 0;
            while (true) {
                std::vector<Subset> s;
                for (auto i : idx) s.push_back(subsets[i]);
                EXPECT_EQ(disjoint_to_fin(fin_to_disjoint(s), n), s);
                ++total;
                int k = n - 1;
                while (k >= 0 && ++idx[k] == subsets.size()) idx[k--] = 0;
                if (k < 0) break;
            }
            EXPECT_EQ(total, static_cast<std::size_t>(std::pow(1 << a, n)));
        }
        for (int n = 1; n <= 3; ++n) {
            std::size_t count = 0;
            for (const auto& q : enum_O_n(a, (1 << n) - 1)) {
                EXPECT_EQ(fin_to_disjoint(disjoint_to_fin(q, n)), q);
                ++count;
            }
            if (a <= 4) {
                // |fin(A)|^n = (2^a)^n = (2^n)^a = |O_{2^n-1}(A)|
                EXPECT_EQ(count, static_cast<std::size_t>(std::pow(1 << a, n)));
            }
        }
    }
}

TEST(BfinMap, Examples) {
    auto r1 = bfin_map(5, {set({0, 1})});
    ASSERT_TRUE(std::holds_alternative<FinitaryPartition>(r1));
    EXPECT_EQ(std::get<FinitaryPartition>(r1), part(5, {{0, 1}, {2}, {3}, {4}}));

    auto r2 = bfin_map(4, {set({0})});
    ASSERT_TRUE(std::holds_alternative<Undefined>(r2));
    EXPECT_NE(std::get<Undefined>(r2).reason.find("singleton"), std::string::npos);

    auto r3 = bfin_map(6, {set({0, 1, 2, 3}), set({2, 3, 4, 5})});
    ASSERT_TRUE(std::holds_alternative<FinitaryPartition>(r3));
    EXPECT_EQ(std::get<FinitaryPartition>(r3), part(6, {{0, 1}, {2, 3}, {4, 5}}));

    auto r4 = bfin_map(6, {set({0, 1}), set({2, 3})});
    ASSERT_TRUE(std::holds_alternative<Undefined>(r4));
    EXPECT_NE(std::get<Undefined>(r4).reason.find("missing"), std::string::npos);
}

TEST(BfinMap, DefinedImagesLieInB2nMinus1) {
    for (int a = 0; a <= 6; ++a) {
        const auto subsets = enum_subsets(a).collect();
        for (std::size_t i = 0; i < subsets.size(); ++i) {
            auto r = bfin_map(a, {subsets[i]});
            if (auto* p = std::get_if<FinitaryPartition>(&r)) EXPECT_EQ(p->ns_count(), 1);
            for (std::size_t j = i + 1; j < subsets.size(); ++j) {
                auto r2 = bfin_map(a, {subsets[i], subsets[j]});
                if (auto* p = std::get_if<FinitaryPartition>(&r2)) EXPECT_EQ(p->ns_count(), 3);
            }
        }
    }
}

TEST(BfinMap, OntoB3ForTwoSets) {
    const int a = 6;
    const auto subsets = enum_subsets(a).collect();
    std::set<FinitaryPartition> image;
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        for (std::size_t j = i + 1; j < subsets.size(); ++j) {
            auto r = bfin_map(a, {subsets[i], subsets[j]});
            if (auto* p = std::get_if<FinitaryPartition>(&r)) image.insert(*p);
        }
    }
    auto all = enum_B_n(a, 3).collect();
    EXPECT_EQ(image, std::set<FinitaryPartition>(all.begin(), all.end()));
}

TEST(NsInjection, Examples) {
    EXPECT_EQ(ns_injection(part(4, {{0, 1}, {2}, {3}})), (std::set<Subset>{set({0, 1})}));
    EXPECT_TRUE(ns_injection(FinitaryPartition::discrete(5)).empty());
    EXPECT_EQ(ns_injection(part(5, {{0, 1}, {2, 3, 4}})), (std::set<Subset>{set({0, 1}), set({2, 3, 4})}));
}

TEST(NsInjection, InjectiveOnAllPartitions) {
    for (int a = 0; a <= 5; ++a) {
        std::set<std::set<Subset>> seen;
        std::size_t count = 0;
        for (const auto& p : enum_partitions(a)) {
            EXPECT_TRUE(seen.insert(ns_injection(p)).second) << p.to_string();
            ++count;
        }
        EXPECT_EQ(count, oracle::partitions(a).size());
    }
}

TEST(CanonicalMaps, Equivariance) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const int a = 2 + static_cast<int>(rng() % 7);
        std::vector<int> pi(a);
        std::iota(pi.begin(), pi.end(), 0);
        std::shuffle(pi.begin(), pi.end(), rng);

        const int n = 1 + static_cast<int>(rng() % 3);
        const auto s = random_sets(rng, a, n);
        std::vector<Subset> ps;
        for (auto x : s) ps.push_back(permute(pi, x));

        const auto t = fin_to_disjoint(s);
        EXPECT_EQ(fin_to_disjoint(ps), permute(pi, t));
        EXPECT_EQ(disjoint_to_fin(permute(pi, t), n), ps);

        const auto img = tuple_to_partition(a, t);
        const auto pimg = tuple_to_partition(a, permute(pi, t));
        EXPECT_EQ(pimg.partition, permute(pi, img.partition));
        EXPECT_EQ(pimg.lands_in_B_n, img.lands_in_B_n);

        std::set<Subset> sset(s.begin(), s.end());
        std::set<Subset> psset(ps.begin(), ps.end());
        const auto b = bfin_map(a, sset);
        const auto pb = bfin_map(a, psset);
        ASSERT_EQ(b.index(), pb.index());
        if (auto* p = std::get_if<FinitaryPartition>(&b)) {
            EXPECT_EQ(std::get<FinitaryPartition>(pb), permute(pi, *p));
            std::set<Subset> permuted_ns;
            for (auto x : ns_injection(*p)) permuted_ns.insert(permute(pi, x));
            EXPECT_EQ(ns_injection(permute(pi, *p)), permuted_ns);
        }
    }
}

}  // namespace
