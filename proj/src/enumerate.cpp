#include "fpart/enumerate.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace fpart {

namespace {

void require_nonnegative(int v, const char* what) {
    if (v < 0) throw std::invalid_argument(std::string(what) + " must be non-negative");
}

// Lexicographic cursor over the k-subsets of an explicit element list.
class Combination {
public:
    Combination(std::vector<int> pool, int k) : pool_(std::move(pool)), k_(k) {
        if (k_ <= static_cast<int>(pool_.size())) {
            idx_.resize(k_);
            for (int i = 0; i < k_; ++i) idx_[i] = i;
            valid_ = true;
        }
    }

    bool valid() const { return valid_; }

    Subset current() const {
        std::uint64_t bits = 0;
        for (int i : idx_) bits |= std::uint64_t{1} << pool_[i];
        return Subset::from_bits(bits);
    }

    void advance() {
        const int n = static_cast<int>(pool_.size());
        int i = k_ - 1;
        while (i >= 0 && idx_[i] == n - k_ + i) --i;
        if (i < 0) {
            valid_ = false;
            return;
        }
        ++idx_[i];
        for (int j = i + 1; j < k_; ++j) idx_[j] = idx_[j - 1] + 1;
    }

private:
    std::vector<int> pool_;
    int k_;
    std::vector<int> idx_;
    bool valid_ = false;
};

}  // namespace

Stream<Subset> enum_k_subsets(int a, int k) {
    require_ground_size(a);
    require_nonnegative(k, "k");
    auto comb = std::make_shared<Combination>(Subset::prefix(a).elements(), k);
    return Stream<Subset>([comb]() -> std::optional<Subset> {
        if (!comb->valid()) return std::nullopt;
        Subset s = comb->current();
        comb->advance();
        return s;
    });
}

Stream<Subset> enum_subsets(int a) {
    require_ground_size(a);
    struct State {
        int a;
        int k = 0;
        std::optional<Combination> comb;
    };
    auto st = std::make_shared<State>(State{a, 0, std::nullopt});
    st->comb.emplace(Subset::prefix(a).elements(), 0);
    return Stream<Subset>([st]() -> std::optional<Subset> {
        while (!st->comb->valid()) {
            if (++st->k > st->a) return std::nullopt;
            st->comb.emplace(Subset::prefix(st->a).elements(), st->k);
        }
        Subset s = st->comb->current();
        st->comb->advance();
        return s;
    });
}

Stream<ElementSequence> enum_sequences(int a, int k, bool injective) {
    require_nonnegative(a, "a");
    require_nonnegative(k, "k");
    struct State {
        std::vector<int> digits;
        bool done = false;
    };
    auto st = std::make_shared<State>();
    st->digits.assign(k, 0);
    if (k > 0 && a == 0) st->done = true;
    auto admissible = [injective](const std::vector<int>& d) {
        if (!injective) return true;
        std::vector<int> s = d;
        std::sort(s.begin(), s.end());
        return std::adjacent_find(s.begin(), s.end()) == s.end();
    };
    return Stream<ElementSequence>([st, a, k, injective, admissible]() -> std::optional<ElementSequence> {
        while (!st->done) {
            std::vector<int> cur = st->digits;
            int i = k - 1;
            while (i >= 0 && st->digits[i] == a - 1) st->digits[i--] = 0;
            if (i < 0) {
                st->done = true;
            } else {
                ++st->digits[i];
            }
            if (admissible(cur)) return ElementSequence(std::move(cur), injective);
        }
        return std::nullopt;
    });
}

Stream<DisjointTuple> enum_disjoint_tuples(int a, const SizeProfile& profile) {
    require_ground_size(a);
    struct State {
        Subset ground;
        SizeProfile profile;
        std::vector<Combination> combs;
        bool done = false;

        // Re-seeds components i.. after component i-1 changed. Returns false when
        // some component has no admissible subset left.
        bool reset_from(std::size_t i) {
            combs.erase(combs.begin() + static_cast<std::ptrdiff_t>(i), combs.end());
            for (std::size_t j = i; j < profile.sizes.size(); ++j) {
                Subset used;
                for (const auto& c : combs) used = used | c.current();
                combs.emplace_back((ground - used).elements(), profile.sizes[j]);
                if (!combs.back().valid()) return false;
            }
            return true;
        }
    };
    auto st = std::make_shared<State>(State{Subset::prefix(a), profile, {}});
    st->done = profile.total() > a || !st->reset_from(0);
    return Stream<DisjointTuple>([st]() -> std::optional<DisjointTuple> {
        if (st->done) return std::nullopt;
        std::vector<Subset> comps;
        comps.reserve(st->combs.size());
        for (const auto& c : st->combs) comps.push_back(c.current());
        DisjointTuple out(std::move(comps));
        // Advance the rightmost component that still has a successor.
        int i = static_cast<int>(st->combs.size()) - 1;
        for (; i >= 0; --i) {
            st->combs[i].advance();
            if (st->combs[i].valid() && st->reset_from(i + 1)) break;
        }
        if (i < 0) st->done = true;
        return out;
    });
}

Stream<DisjointTuple> enum_O_n(int a, int n, std::optional<int> cap) {
    require_ground_size(a);
    require_nonnegative(n, "n");
    struct State {
        std::vector<int> place;
        bool done = false;
    };
    auto st = std::make_shared<State>();
    st->place.assign(a, 0);
    return Stream<DisjointTuple>([st, a, n, cap]() -> std::optional<DisjointTuple> {
        while (!st->done) {
            std::vector<std::uint64_t> comp(n, 0);
            for (int x = 0; x < a; ++x) {
                if (st->place[x] > 0) comp[st->place[x] - 1] |= std::uint64_t{1} << x;
            }
            int i = a - 1;
            while (i >= 0 && st->place[i] == n) st->place[i--] = 0;
            if (i < 0) {
                st->done = true;
            } else {
                ++st->place[i];
            }
            std::vector<Subset> comps;
            bool ok = true;
            for (auto b : comp) {
                comps.push_back(Subset::from_bits(b));
                if (cap && comps.back().size() > *cap) ok = false;
            }
            if (ok) return DisjointTuple(std::move(comps));
        }
        return std::nullopt;
    });
}

Stream<FinitaryPartition> enum_partitions(int a) {
    require_ground_size(a);
    struct State {
        std::vector<int> rgs;
        bool done = false;
    };
    auto st = std::make_shared<State>();
    st->rgs.assign(a, 0);
    return Stream<FinitaryPartition>([st, a]() -> std::optional<FinitaryPartition> {
        if (st->done) return std::nullopt;
        int blocks = 0;
        for (int v : st->rgs) blocks = std::max(blocks, v + 1);
        std::vector<std::uint64_t> bits(blocks, 0);
        for (int x = 0; x < a; ++x) bits[st->rgs[x]] |= std::uint64_t{1} << x;
        std::vector<Subset> bl;
        for (auto b : bits) bl.push_back(Subset::from_bits(b));
        auto out = FinitaryPartition::canonicalize(a, std::move(bl));

        // Next restricted growth string: rgs[i] <= 1 + max(rgs[0..i-1]).
        int i = a - 1;
        for (; i >= 1; --i) {
            int prefix_max = 0;
            for (int j = 0; j < i; ++j) prefix_max = std::max(prefix_max, st->rgs[j]);
            if (st->rgs[i] <= prefix_max) {
                ++st->rgs[i];
                for (int j = i + 1; j < a; ++j) st->rgs[j] = 0;
                break;
            }
        }
        if (i < 1) st->done = true;
        return out;
    });
}

Stream<FinitaryPartition> enum_B_n(int a, int n) {
    require_nonnegative(n, "n");
    auto all = std::make_shared<Stream<FinitaryPartition>>(enum_partitions(a));
    return Stream<FinitaryPartition>([all, n]() -> std::optional<FinitaryPartition> {
        while (auto p = all->next()) {
            if (p->ns_count() == n) return p;
        }
        return std::nullopt;
    });
}

BigInt binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

std::uint64_t binomial_u64(int n, int k) {
    static const auto table = [] {
        std::vector<std::vector<std::uint64_t>> t(65, std::vector<std::uint64_t>(65, 0));
        for (int i = 0; i <= 64; ++i) {
            t[i][0] = 1;
            for (int j = 1; j <= i; ++j) {
                const std::uint64_t x = t[i - 1][j - 1], y = t[i - 1][j];
                t[i][j] = (x > UINT64_MAX - y) ? UINT64_MAX : x + y;
            }
        }
        return t;
    }();
    if (k < 0 || n < 0 || k > n) return 0;
    if (n > 64) throw std::out_of_range("binomial_u64 supports n <= 64");
    return table[n][k];
}

std::uint64_t rank_k_subset(Subset avail, Subset s) {
    // Count the k-subsets whose increasing sequence precedes s at the first difference.
    if (!s.subset_of(avail)) throw std::invalid_argument("rank_k_subset: subset leaves the pool");
    const int n = avail.size();
    int k = s.size();
    std::uint64_t pool = avail.bits();
    std::uint64_t rank = 0;
    for (int pos = 0; k > 0; ++pos) {
        const std::uint64_t low = pool & (~pool + 1);
        if (s.bits() & low) {
            --k;
        } else {
            rank += binomial_u64(n - pos - 1, k - 1);
        }
        pool ^= low;
    }
    return rank;
}

BigInt assoc_stirling(int j, int n) {
    require_nonnegative(j, "j");
    require_nonnegative(n, "n");
    static std::mutex mu;
    static std::map<std::pair<int, int>, BigInt> memo;
    // b(j,n) = n b(j-1,n) + (j-1) b(j-2,n-1): element j either joins one of the n
    // blocks of a partition of the first j-1, or pairs with one of them to found a block.
    {
        std::lock_guard lock(mu);
        if (auto it = memo.find({j, n}); it != memo.end()) return it->second;
    }
    std::vector<std::vector<BigInt>> b(j + 1, std::vector<BigInt>(n + 1, 0));
    b[0][0] = 1;
    for (int jj = 1; jj <= j; ++jj) {
        for (int nn = 0; nn <= n; ++nn) {
            BigInt v = nn * b[jj - 1][nn];
            if (jj >= 2 && nn >= 1) v += (jj - 1) * b[jj - 2][nn - 1];
            b[jj][nn] = v;
        }
    }
    std::lock_guard lock(mu);
    memo[{j, n}] = b[j][n];
    return b[j][n];
}

BigInt count_B_n(int a, int n) {
    require_nonnegative(a, "a");
    require_nonnegative(n, "n");
    BigInt total = 0;
    for (int j = 2 * n; j <= a; ++j) total += binomial(a, j) * assoc_stirling(j, n);
    return total;
}

BigInt count_disjoint_tuples(int a, const SizeProfile& profile) {
    require_nonnegative(a, "a");
    const int sum = profile.total();
    if (sum > a) return 0;
    // a! / ((a - sum)! prod m_i!) as a product of binomials.
    BigInt r = 1;
    int left = a;
    for (int m : profile.sizes) {
        r *= binomial(left, m);
        left -= m;
    }
    return r;
}

BigInt count_O_n(int a, int n) {
    require_nonnegative(a, "a");
    require_nonnegative(n, "n");
    return boost::multiprecision::pow(BigInt(n + 1), static_cast<unsigned>(a));
}

}  // namespace fpart
