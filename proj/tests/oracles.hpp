#pragma once

// Brute-force reference computations for tests. Nothing here goes through the
// library's enumeration or operator code paths; values are computed from the
// definitions on plain std containers.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

namespace oracle {

using Set = std::vector<int>;  // sorted
using Tuple = std::vector<Set>;
using Partition = std::vector<Set>;  // blocks sorted by least element

inline std::vector<Set> all_subsets(int a) {
    std::vector<Set> out;
    for (std::uint32_t mask = 0; mask < (1u << a); ++mask) {
        Set s;
        for (int x = 0; x < a; ++x) {
            if (mask >> x & 1u) s.push_back(x);
        }
        out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline bool disjoint(const Set& x, const Set& y) {
    for (int e : x) {
        if (std::find(y.begin(), y.end(), e) != y.end()) return false;
    }
    return true;
}

inline bool is_subset(const Set& x, const Set& y) {
    return std::includes(y.begin(), y.end(), x.begin(), x.end());
}

/// All n-tuples of pairwise disjoint subsets with the given sizes, by filtering
/// every n-tuple of subsets; sorted lexicographically.
inline std::vector<Tuple> disjoint_tuples(int a, const std::vector<int>& sizes) {
    const auto subsets = all_subsets(a);
    std::vector<Tuple> out;
    Tuple cur;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == sizes.size()) {
            out.push_back(cur);
            return;
        }
        for (const auto& s : subsets) {
            if (static_cast<int>(s.size()) != sizes[i]) continue;
            bool ok = true;
            for (const auto& c : cur) ok = ok && disjoint(c, s);
            if (!ok) continue;
            cur.push_back(s);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

/// Every partition of {0..a-1}: each element joins an existing block or opens a new one.
inline std::vector<Partition> partitions(int a) {
    std::vector<Partition> out;
    Partition cur;
    std::function<void(int)> rec = [&](int x) {
        if (x == a) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = 0; i < cur.size(); ++i) {
            cur[i].push_back(x);
            rec(x + 1);
            cur[i].pop_back();
        }
        cur.push_back({x});
        rec(x + 1);
        cur.pop_back();
    };
    rec(0);
    return out;
}

inline int ns_count(const Partition& p) {
    int n = 0;
    for (const auto& b : p) n += b.size() >= 2;
    return n;
}

inline std::uint64_t factorial(int n) {
    std::uint64_t r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

inline std::uint64_t choose(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Families over a tuple space given as an explicit list; a family is a set of indices.
struct Space {
    std::vector<Tuple> tuples;
};

inline bool extends(const Tuple& p, const Tuple& q) {
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!is_subset(p[i], q[i])) return false;
    }
    return true;
}

/// gamma, straight from the definition.
inline std::set<Tuple> gamma(const std::set<Tuple>& x, const std::vector<Tuple>& upper) {
    std::set<Tuple> out;
    for (const auto& q : upper) {
        for (const auto& p : x) {
            if (extends(p, q)) {
                out.insert(q);
                break;
            }
        }
    }
    return out;
}

/// alpha, straight from the definition.
inline std::set<Tuple> alpha(const std::set<Tuple>& x, const std::vector<Tuple>& lower,
                             const std::vector<Tuple>& upper) {
    const auto g = gamma(x, upper);
    std::set<Tuple> out;
    for (const auto& p : lower) {
        bool all = true;
        for (const auto& q : upper) {
            if (extends(p, q) && !g.count(q)) {
                all = false;
                break;
            }
        }
        if (all) out.insert(p);
    }
    return out;
}

inline std::set<Tuple> delta(const std::set<Tuple>& x, const std::vector<Tuple>& lower,
                             const std::vector<Tuple>& upper) {
    std::set<Tuple> out;
    for (const auto& p : alpha(x, lower, upper)) {
        if (!x.count(p)) out.insert(p);
    }
    return out;
}

}  // namespace oracle

namespace oracle {

/// Polarized Ramsey property by plain enumeration of every coloring and every
/// choice of T; only for tiny grids.
inline bool ramsey_holds(const std::vector<int>& sizes, const std::vector<int>& j, int c, int r) {
    std::vector<std::vector<Set>> axes;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        std::vector<Set> ax;
        for (const auto& s : all_subsets(sizes[i])) {
            if (static_cast<int>(s.size()) == j[i]) ax.push_back(s);
        }
        axes.push_back(ax);
    }
    std::vector<std::vector<Set>> points;
    std::vector<Set> cur;
    std::function<void(std::size_t)> build = [&](std::size_t i) {
        if (i == axes.size()) {
            points.push_back(cur);
            return;
        }
        for (const auto& s : axes[i]) {
            cur.push_back(s);
            build(i + 1);
            cur.pop_back();
        }
    };
    build(0);

    std::vector<std::vector<Set>> choices;
    std::function<void(std::size_t)> pick = [&](std::size_t i) {
        if (i == sizes.size()) {
            choices.push_back(cur);
            return;
        }
        for (const auto& s : all_subsets(sizes[i])) {
            if (static_cast<int>(s.size()) != r) continue;
            cur.push_back(s);
            pick(i + 1);
            cur.pop_back();
        }
    };
    pick(0);
    if (choices.empty()) return false;

    std::vector<int> color(points.size(), 0);
    while (true) {
        bool found = false;
        for (const auto& t : choices) {
            for (int d = 0; d < c && !found; ++d) {
                bool mono = true;
                for (std::size_t p = 0; p < points.size() && mono; ++p) {
                    bool inside = true;
                    for (std::size_t i = 0; i < t.size(); ++i) inside = inside && is_subset(points[p][i], t[i]);
                    if (inside && color[p] != d) mono = false;
                }
                found = mono;
            }
            if (found) break;
        }
        if (!found) return false;
        std::size_t k = 0;
        while (k < color.size() && ++color[k] == c) color[k++] = 0;
        if (k == color.size()) return true;
    }
}

}  // namespace oracle
