#include "fpart/ramsey.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <set>
#include <stdexcept>

#include "fpart/enumerate.hpp"
#include "fpart/parallel.hpp"
#include "fpart/tuple_space.hpp"

namespace fpart {

void RamseyQuery::validate() const {
    if (c < 1) throw std::invalid_argument("number of colors must be at least 1");
    if (r < 0) throw std::invalid_argument("target size r must be non-negative");
    for (int x : j) {
        if (x < 0) throw std::invalid_argument("exponents j_i must be non-negative");
    }
}

std::string RamseyQuery::to_string() const {
    std::string s = "j=(";
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? "," : "") + std::to_string(j[i]);
    return s + ") c=" + std::to_string(c) + " r=" + std::to_string(r);
}

ProductGrid::ProductGrid(std::vector<int> sizes, std::vector<int> j) : sizes_(std::move(sizes)), j_(std::move(j)) {
    if (sizes_.size() != j_.size()) throw std::invalid_argument("grid needs one size per exponent");
    BigInt total = 1;
    std::vector<std::vector<Subset>> axes;
    for (std::size_t i = 0; i < sizes_.size(); ++i) {
        require_ground_size(sizes_[i]);
        if (j_[i] < 0) throw std::invalid_argument("exponents j_i must be non-negative");
        total *= binomial(sizes_[i], j_[i]);
        if (total > kMaxPoints) throw Infeasible("product grid has more than 2^22 points", total);
        axes.push_back(enum_k_subsets(sizes_[i], j_[i]).collect());
    }
    std::vector<Subset> cur(axes.size());
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == axes.size()) {
            points_.push_back(cur);
            return;
        }
        for (auto s : axes[i]) {
            cur[i] = s;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
}

std::size_t ProductGrid::index_of(const std::vector<Subset>& p) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), p);
    if (it == points_.end() || *it != p) throw std::out_of_range("point is not on the grid");
    return static_cast<std::size_t>(it - points_.begin());
}

ProductColoring::ProductColoring(ProductGrid g, int colors_count, std::vector<int> table)
    : grid(std::move(g)), c(colors_count), colors(std::move(table)) {
    if (c < 1) throw std::invalid_argument("number of colors must be at least 1");
    if (colors.size() != grid.size()) throw std::invalid_argument("color table does not cover the grid");
    for (int x : colors) {
        if (x < 0 || x >= c) throw std::invalid_argument("color " + std::to_string(x + 1) + " outside 1.." + std::to_string(c));
    }
}

namespace {

void require_witness_shape(const ProductGrid& grid, const std::vector<Subset>& t) {
    if (t.size() != grid.sizes().size()) throw std::invalid_argument("witness needs one set per coordinate");
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!t[i].subset_of(Subset::prefix(grid.sizes()[i]))) {
            throw std::invalid_argument("T_" + std::to_string(i + 1) + " = " + t[i].to_string() + " leaves S_" +
                                        std::to_string(i + 1));
        }
        if (t[i].size() != t[0].size()) throw std::invalid_argument("witness sets differ in size");
    }
}

template <class Fn>
void for_each_box_point(const std::vector<Subset>& t, const std::vector<int>& j, Fn&& fn) {
    std::vector<Subset> cur(t.size());
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == t.size()) {
            fn(cur);
            return;
        }
        detail::for_each_k_submask(t[i].bits(), j[i], 0, [&](std::uint64_t m) {
            cur[i] = Subset::from_bits(m);
            self(self, i + 1);
        });
    };
    rec(rec, 0);
}

template <class Fn>
void for_each_choice(const std::vector<int>& sizes, int r, Fn&& fn) {
    std::vector<Subset> cur(sizes.size());
    auto rec = [&](auto&& self, std::size_t i) -> bool {
        if (i == sizes.size()) return fn(cur);
        bool go = true;
        detail::for_each_k_submask(Subset::prefix(sizes[i]).bits(), r, 0, [&](std::uint64_t m) {
            if (!go) return;
            cur[i] = Subset::from_bits(m);
            go = self(self, i + 1);
        });
        return go;
    };
    rec(rec, 0);
}

}  // namespace

bool check_witness(const ProductColoring& coloring, const std::vector<Subset>& t, int d) {
    require_witness_shape(coloring.grid, t);
    bool mono = true;
    for_each_box_point(t, coloring.grid.j(), [&](const std::vector<Subset>& p) {
        if (mono && coloring.color_of(p) != d) mono = false;
    });
    return mono;
}

std::optional<std::pair<std::vector<Subset>, int>> find_witness(const ProductColoring& coloring, int r) {
    std::optional<std::pair<std::vector<Subset>, int>> out;
    for_each_choice(coloring.grid.sizes(), r, [&](const std::vector<Subset>& t) {
        for (int d = 0; d < coloring.c; ++d) {
            if (check_witness(coloring, t, d)) {
                out.emplace(t, d);
                return false;
            }
        }
        return true;
    });
    return out;
}

namespace {

using Mask = std::uint64_t;

struct Search {
    const ProductGrid& grid;
    int c;
    bool prune;
    std::vector<Mask> boxes;
    std::vector<std::vector<Mask>> boxes_at;  // boxes whose highest point is p
    std::vector<std::vector<std::uint64_t>> completions;  // [remaining][colors used]
    // incidence[i][v]: mask of grid points whose i-th coordinate contains v
    std::vector<std::vector<Mask>> incidence;

    Search(const ProductGrid& g, int colors, bool pr, int r) : grid(g), c(colors), prune(pr) {
        const std::size_t n = grid.size();
        std::set<Mask> uniq;
        for_each_choice(grid.sizes(), r, [&](const std::vector<Subset>& t) {
            Mask m = 0;
            for_each_box_point(t, grid.j(), [&](const std::vector<Subset>& p) { m |= Mask{1} << grid.index_of(p); });
            uniq.insert(m);
            return true;
        });
        boxes.assign(uniq.begin(), uniq.end());
        boxes_at.resize(n);
        for (Mask b : boxes) {
            if (b) boxes_at[63 - __builtin_clzll(b)].push_back(b);
        }
        completions.assign(n + 1, std::vector<std::uint64_t>(c + 1, 0));
        for (int k = 0; k <= c; ++k) completions[0][k] = 1;
        for (std::size_t rem = 1; rem <= n; ++rem) {
            for (int k = 0; k <= c; ++k) {
                const auto base = completions[rem - 1];
                std::uint64_t v;
                if (prune) {
                    v = sat_mul(k, base[k]);
                    if (k < c) v = sat_add(v, base[k + 1]);
                } else {
                    v = sat_mul(c, base[k]);
                }
                completions[rem][k] = v;
            }
        }
        incidence.resize(grid.sizes().size());
        for (std::size_t i = 0; i < incidence.size(); ++i) {
            incidence[i].assign(grid.sizes()[i], 0);
            for (std::size_t p = 0; p < n; ++p) {
                for (int v : grid.point(p)[i].elements()) incidence[i][v] |= Mask{1} << p;
            }
        }
    }

    static std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
        return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
    }
    static std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
        if (a && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
        return a * b;
    }

    bool has_mono_box(const std::vector<Mask>& by_color) const {
        for (Mask b : boxes) {
            for (Mask m : by_color) {
                if ((b & ~m) == 0) return true;
            }
        }
        return false;
    }

    // Every vertex of every coordinate, keyed by its color-degree vector sorted
    // in decreasing order, must not exceed its predecessor.
    bool degree_ordered(const std::vector<Mask>& by_color) const {
        std::vector<int> prev, cur;
        for (const auto& axis : incidence) {
            prev.clear();
            for (std::size_t v = 0; v < axis.size(); ++v) {
                cur.clear();
                for (Mask m : by_color) cur.push_back(__builtin_popcountll(axis[v] & m));
                std::sort(cur.rbegin(), cur.rend());
                if (v > 0 && prev < cur) return false;
                std::swap(prev, cur);
            }
        }
        return true;
    }

    struct State {
        std::vector<Mask> by_color;
        int used = 0;
        std::size_t next = 0;
    };

    struct TaskResult {
        std::uint64_t covered = 0;
        std::optional<std::vector<Mask>> counterexample;
    };

    // Depth-first completion of `s`; stops at the first counterexample or when `stop()` says so.
    template <class Stop>
    void run(State& s, TaskResult& out, const Stop& stop) const {
        if (out.counterexample || stop()) return;
        const std::size_t n = grid.size();
        if (s.next == n) {
            out.covered = sat_add(out.covered, 1);
            if (prune && !degree_ordered(s.by_color)) return;
            if (!has_mono_box(s.by_color)) out.counterexample = s.by_color;
            return;
        }
        const std::size_t p = s.next;
        const int limit = prune ? std::min(c, s.used + 1) : c;
        for (int d = 0; d < limit && !out.counterexample; ++d) {
            s.by_color[d] |= Mask{1} << p;
            const int used = std::max(s.used, d + 1);
            bool sealed = false;
            if (prune) {
                for (Mask b : boxes_at[p]) {
                    if ((b & ~s.by_color[d]) == 0) {
                        sealed = true;
                        break;
                    }
                }
            }
            if (sealed) {
                out.covered = sat_add(out.covered, completions[n - p - 1][used]);
            } else {
                State child{s.by_color, used, p + 1};
                run(child, out, stop);
            }
            s.by_color[d] &= ~(Mask{1} << p);
        }
    }

    // All assignments of the first `depth` points, in search order.
    std::vector<State> prefixes(std::size_t depth) const {
        std::vector<State> out;
        State s{std::vector<Mask>(c, 0), 0, 0};
        auto rec = [&](auto&& self, State& st) -> void {
            if (st.next == depth) {
                out.push_back(st);
                return;
            }
            const int limit = prune ? std::min(c, st.used + 1) : c;
            for (int d = 0; d < limit; ++d) {
                State child{st.by_color, std::max(st.used, d + 1), st.next + 1};
                child.by_color[d] |= Mask{1} << st.next;
                self(self, child);
            }
        };
        rec(rec, s);
        return out;
    }
};

BigInt canonical_colorings(std::size_t points, int c) {
    // Colorings with colors introduced in order: sum over k <= c of Stirling2(points, k).
    std::vector<BigInt> row(c + 1, 0);
    row[0] = 1;
    for (std::size_t p = 0; p < points; ++p) {
        for (int k = c; k >= 0; --k) row[k] = (k ? row[k - 1] : BigInt(0)) + BigInt(k) * row[k];
    }
    BigInt total = 0;
    for (int k = 0; k <= c; ++k) total += row[k];
    return total;
}

PropertyResult trivially(PropertyResult::Outcome o, std::string note) {
    PropertyResult res;
    res.outcome = o;
    res.note = std::move(note);
    return res;
}

}  // namespace

PropertyResult has_property(const std::vector<int>& sizes, const RamseyQuery& q, const SearchOptions& opt) {
    q.validate();
    if (sizes.size() != q.j.size()) throw std::invalid_argument("need one size N_i per exponent j_i");
    for (int s : sizes) require_ground_size(s);

    if (std::any_of(sizes.begin(), sizes.end(), [&](int s) { return s < q.r; })) {
        auto res = trivially(PropertyResult::Outcome::fails, "some N_i < r, so no T_i of size r exists");
        BigInt points = 1;
        for (std::size_t i = 0; i < sizes.size(); ++i) points *= binomial(sizes[i], q.j[i]);
        if (points <= 64) {
            ProductGrid grid(sizes, q.j);
            res.counterexample.emplace(grid, q.c, std::vector<int>(grid.size(), 0));
        }
        return res;
    }
    if (std::any_of(q.j.begin(), q.j.end(), [&](int j) { return j > q.r; })) {
        return trivially(PropertyResult::Outcome::holds, "some j_i > r, so every sub-grid is empty");
    }
    if (q.c == 1) return trivially(PropertyResult::Outcome::holds, "a single color");

    BigInt points = 1;
    for (std::size_t i = 0; i < sizes.size(); ++i) points *= binomial(sizes[i], q.j[i]);
    if (points > 64) {
        PropertyResult res = trivially(PropertyResult::Outcome::infeasible, "grid has more than 64 points");
        res.required = boost::multiprecision::pow(BigInt(q.c), static_cast<unsigned>(std::min<BigInt>(points, 4096)));
        return res;
    }
    ProductGrid grid(sizes, q.j);
    const BigInt required = opt.prune ? canonical_colorings(grid.size(), q.c)
                                      : boost::multiprecision::pow(BigInt(q.c), static_cast<unsigned>(grid.size()));
    if (required > opt.max_colorings || required > (BigInt(1) << 62)) {
        PropertyResult res = trivially(PropertyResult::Outcome::infeasible, "coloring budget exceeded");
        res.required = required;
        return res;
    }

    Search search(grid, q.c, opt.prune, q.r);
    const std::size_t depth = std::min<std::size_t>(grid.size(), 6);
    const auto starts = search.prefixes(depth);
    std::vector<Search::TaskResult> results(starts.size());
    std::atomic<std::size_t> first_failure{starts.size()};
    parallel_for(starts.size(), opt.threads, [&](std::size_t t) {
        auto stop = [&] { return first_failure.load(std::memory_order_relaxed) < t; };
        if (stop()) return;
        Search::State s = starts[t];
        search.run(s, results[t], stop);
        if (results[t].counterexample) {
            std::size_t cur = first_failure.load();
            while (t < cur && !first_failure.compare_exchange_weak(cur, t)) {
            }
        }
    });

    PropertyResult res;
    res.required = required;
    const std::size_t fail = first_failure.load();
    if (fail < starts.size()) {
        res.outcome = PropertyResult::Outcome::fails;
        std::vector<int> table(grid.size(), 0);
        const auto& by_color = *results[fail].counterexample;
        for (int d = 0; d < q.c; ++d) {
            for (std::size_t p = 0; p < grid.size(); ++p) {
                if (by_color[d] >> p & 1u) table[p] = d;
            }
        }
        res.counterexample.emplace(grid, q.c, std::move(table));
        return res;
    }
    res.outcome = PropertyResult::Outcome::holds;
    for (const auto& r : results) res.covered += r.covered;
    return res;
}

MinSearchResult search_min_N(const RamseyQuery& q, int cap, const SearchOptions& opt) {
    q.validate();
    MinSearchResult out;
    for (int n = 0; n <= cap; ++n) {
        auto res = has_property(std::vector<int>(q.j.size(), n), q, opt);
        const auto outcome = res.outcome;
        out.trail.push_back(std::move(res));
        if (outcome == PropertyResult::Outcome::holds) {
            out.value = n;
            break;
        }
        if (outcome == PropertyResult::Outcome::infeasible) {
            out.infeasible_at = n;
            break;
        }
    }
    return out;
}

namespace {

constexpr unsigned kMaxBits = 1u << 16;
constexpr int kMaxChain = 1'000'000;

BigInt checked_pow(const BigInt& base, const BigInt& exp, const std::string& what) {
    if (base <= 1 || exp == 0) return exp == 0 ? BigInt(1) : base;
    const auto bits = boost::multiprecision::msb(base) + 1;
    if (exp > kMaxBits || exp * bits > kMaxBits) throw Infeasible(what + " is too large to represent", 0);
    return boost::multiprecision::pow(base, static_cast<unsigned>(exp));
}

int as_small(const BigInt& v, const std::string& what) {
    if (v > kMaxChain) throw Infeasible(what + " exceeds 10^6", v);
    return static_cast<int>(v);
}

BigInt bound_1d(int j, const BigInt& c, int r);

// Step-up from j-1 to j: choose x_1, x_2, ... while halving the candidate set by
// the colors of j-sets ending in each new point.
BigInt chain_bound(int j, const BigInt& c, int r) {
    const int len = as_small(bound_1d(j - 1, c, r), "chain length");
    BigInt need = 1;
    for (int i = len - 1; i >= 1; --i) {
        const BigInt k = checked_pow(c, binomial(i - 1, j - 2), "upper bound");
        need = k * need + 1;
        if (boost::multiprecision::msb(need) > kMaxBits) throw Infeasible("upper bound is too large to represent", 0);
    }
    return need;
}

// Merge colors 2..c into one and use the two-color bound for pairs.
BigInt nesting_bound(const BigInt& c, int r) {
    const BigInt m = c == 2 ? BigInt(r) : bound_1d(2, c - 1, r);
    const int mm = as_small(m, "nested bound");
    return binomial(r + mm - 2, r - 1);
}

BigInt bound_1d(int j, const BigInt& c, int r) {
    if (c == 1 || j == 0 || r <= j) return r;
    if (j == 1) return c * (r - 1) + 1;
    if (j == 2) {
        std::optional<BigInt> best;
        if (c <= 64) {
            try {
                best = nesting_bound(c, r);
            } catch (const Infeasible&) {
            }
        }
        try {
            auto ch = chain_bound(2, c, r);
            if (!best || ch < *best) best = ch;
        } catch (const Infeasible&) {
            if (!best) throw;
        }
        return *best;
    }
    return chain_bound(j, c, r);
}

BigInt bound_nd(std::vector<int> j, const BigInt& c, int r) {
    if (j.empty() || c == 1) return r;
    if (j.size() == 1) return std::max<BigInt>(r, bound_1d(j[0], c, r));
    const BigInt first = std::max<BigInt>(r, bound_1d(j[0], c, r));
    const BigInt grid = binomial(as_small(first, "first coordinate bound"), j[0]);
    const BigInt induced = checked_pow(c, grid, "induced color count");
    j.erase(j.begin());
    return std::max(first, bound_nd(std::move(j), induced, r));
}

}  // namespace

BigInt upper_bound_R(const RamseyQuery& q) {
    q.validate();
    if (std::any_of(q.j.begin(), q.j.end(), [&](int j) { return j > q.r; })) return q.r;
    std::vector<int> live;
    for (int j : q.j) {
        if (j > 0) live.push_back(j);
    }
    return bound_nd(std::move(live), q.c, q.r);
}

}  // namespace fpart
