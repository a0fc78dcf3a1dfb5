#pragma once

namespace fpart {

namespace detail {

// Calls fn(acc | mask) for every k-element submask of `pool`.
template <class Fn>
void for_each_k_submask(std::uint64_t pool, int k, std::uint64_t acc, Fn&& fn) {
    if (k == 0) {
        fn(acc);
        return;
    }
    if (__builtin_popcountll(pool) < k) return;
    const std::uint64_t low = pool & (~pool + 1);
    for_each_k_submask(pool & ~low, k - 1, acc | low, fn);
    for_each_k_submask(pool & ~low, k, acc, fn);
}

template <class Fn>
void subtuple_rec(const std::vector<Subset>& q, const SizeProfile& m, std::size_t i, std::vector<Subset>& cur,
                  Fn& fn) {
    if (i == q.size()) {
        fn(static_cast<const std::vector<Subset>&>(cur));
        return;
    }
    for_each_k_submask(q[i].bits(), m.sizes[i], 0, [&](std::uint64_t mask) {
        cur[i] = Subset::from_bits(mask);
        subtuple_rec(q, m, i + 1, cur, fn);
    });
}

}  // namespace detail

template <class Fn>
void for_each_subtuple(const std::vector<Subset>& q, const SizeProfile& m, Fn&& fn) {
    std::vector<Subset> cur(q.size());
    detail::subtuple_rec(q, m, 0, cur, fn);
}

}  // namespace fpart
