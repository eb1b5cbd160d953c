#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "core.hpp"

namespace gonal {

// ---------------------------------------------------------------------------
// reachability tables (bitset sumset DP)
// ---------------------------------------------------------------------------

inline constexpr std::uint64_t kDefaultTableBytes = std::uint64_t(1) << 30;

// Boolean table over [0, N]: bit n set iff the form represents n. Built by
// one OR-shift pass per (slot, value) pair; each slot is used exactly once.
struct ReachabilityTable {
    WeightedForm form;
    std::int64_t bound;
    std::vector<std::uint64_t> words;

    bool test(std::int64_t n) const {
        if (n < 0 || n > bound) return false;
        return (words[std::size_t(n >> 6)] >> (n & 63)) & 1;
    }

    std::int64_t count_set() const {
        std::int64_t c = 0;
        for (std::uint64_t w : words) c += __builtin_popcountll(w);
        return c;
    }
};

namespace detail {

// dst |= src << shift, truncated to the table width (dst and src distinct)
inline void or_shift(std::vector<std::uint64_t>& dst,
                     const std::vector<std::uint64_t>& src, std::int64_t shift) {
    const std::size_t nw = dst.size();
    const std::size_t ws = std::size_t(shift >> 6);
    const int bs = int(shift & 63);
    if (ws >= nw) return;
    for (std::size_t i = 0; i + ws < nw; ++i) {
        dst[i + ws] |= src[i] << bs;
        if (bs != 0 && i + ws + 1 < nw) dst[i + ws + 1] |= src[i] >> (64 - bs);
    }
}

inline void mask_tail(std::vector<std::uint64_t>& words, std::int64_t bound) {
    int used = int((bound & 63) + 1);
    if (used < 64) words.back() &= (std::uint64_t(1) << used) - 1;
}

// fold one slot of weight a into the table
inline void add_slot(ReachabilityTable& t, std::int64_t a) {
    std::vector<std::uint64_t> next(t.words.size(), 0);
    for (const ValueArg& va : values_upto(t.form.order, t.bound / a))
        or_shift(next, t.words, va.value * a);
    t.words = std::move(next);
    mask_tail(t.words, t.bound);
}

inline std::vector<std::uint64_t> alloc_words(std::int64_t N, std::uint64_t max_bytes) {
    std::uint64_t nw = std::uint64_t(N / 64) + 1;
    if (nw * 8 > max_bytes)
        throw resource_error("reachability table over [0, " + std::to_string(N) +
                                 "] needs " + std::to_string(nw * 8) +
                                 " bytes (limit " + std::to_string(max_bytes) + ")",
                             nw * 8);
    return std::vector<std::uint64_t>(std::size_t(nw), 0);
}

}  // namespace detail

inline ReachabilityTable reach_table(const WeightedForm& form, std::int64_t N,
                                     std::uint64_t max_bytes = kDefaultTableBytes) {
    if (N < 0) throw argument_error("reach_table needs N >= 0");
    ReachabilityTable t{form, N, detail::alloc_words(N, max_bytes)};
    t.words[0] = 1;  // empty prefix reaches 0
    for (std::int64_t a : form.weights) detail::add_slot(t, a);
    return t;
}

// ---------------------------------------------------------------------------
// exact search: one representation / representation count
// ---------------------------------------------------------------------------

// Deterministic depth-first search: slots in index order, per-slot values in
// values_upto order. Prunes on the remaining target (an all-zero suffix is
// always admissible) and on the maximum the suffix can still contribute;
// dead (slot, remaining) states are memoized. The result is re-evaluated
// before it is returned.
inline std::optional<Representation> find_representation(const WeightedForm& form,
                                                         std::int64_t n) {
    if (n < 0) throw argument_error("find_representation needs n >= 0");
    const std::size_t ell = form.size();
    std::vector<std::vector<ValueArg>> slot_vals(ell);
    std::vector<int128> suffix_max(ell + 1, 0);
    for (std::size_t j = ell; j-- > 0;) {
        slot_vals[j] = values_upto(form.order, n / form.weights[j]);
        suffix_max[j] = suffix_max[j + 1] +
                        int128(slot_vals[j].back().value) * form.weights[j];
    }

    std::vector<std::int64_t> args(ell, 0);
    std::unordered_set<std::int64_t> dead;  // key: slot * (n+1) + remaining

    auto dfs = [&](auto&& self, std::size_t j, std::int64_t rem) -> bool {
        if (rem == 0) {
            for (std::size_t i = j; i < ell; ++i) args[i] = 0;
            return true;
        }
        if (j == ell) return false;
        if (int128(rem) > suffix_max[j]) return false;
        std::int64_t key = std::int64_t(j) * (n + 1) + rem;
        if (dead.count(key)) return false;
        for (const ValueArg& va : slot_vals[j]) {
            std::int64_t v = va.value * form.weights[j];
            if (v > rem) break;
            args[j] = va.arg;
            if (self(self, j + 1, rem - v)) return true;
        }
        dead.insert(key);
        return false;
    };

    if (!dfs(dfs, 0, n)) return std::nullopt;
    Representation rep{args, eval_form(form, args)};
    if (rep.value != n)
        throw invariant_error("find_representation produced a bad certificate for n = " +
                              std::to_string(n));
    return rep;
}

// Exact number of argument vectors (ordered slots, signed arguments) with
// eval_form = n. Enumerates arguments, not values, so colliding arguments
// (m = 3, 4) are counted separately.
inline std::uint64_t count_reps(const WeightedForm& form, std::int64_t n) {
    if (n < 0) throw argument_error("count_reps needs n >= 0");
    const std::size_t ell = form.size();
    std::unordered_map<std::int64_t, std::uint64_t> memo;  // (slot, rem) -> count

    auto count = [&](auto&& self, std::size_t j, std::int64_t rem) -> std::uint64_t {
        if (j == ell) return rem == 0 ? 1 : 0;
        std::int64_t key = std::int64_t(j) * (n + 1) + rem;
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        std::uint64_t total = 0;
        for (std::int64_t k = 0;; ++k) {
            int128 pos = int128(form.weights[j]) * eval_pm(form.order, k);
            int128 neg = k > 0 ? int128(form.weights[j]) * eval_pm(form.order, -k) : pos;
            if (pos > rem && neg > rem) break;
            if (pos <= rem) total += self(self, j + 1, rem - std::int64_t(pos));
            if (k > 0 && neg <= rem) total += self(self, j + 1, rem - std::int64_t(neg));
        }
        memo.emplace(key, total);
        return total;
    };
    return count(count, 0, n);
}

// ---------------------------------------------------------------------------
// gap scanning and empirical minimal length
// ---------------------------------------------------------------------------

struct GapReport {
    std::int64_t bound;
    std::optional<std::int64_t> first_gap;
    std::int64_t gap_count;
};

inline GapReport scan_gaps(const ReachabilityTable& t) {
    GapReport rep{t.bound, std::nullopt, 0};
    rep.gap_count = t.bound + 1 - t.count_set();
    if (rep.gap_count > 0) {
        for (std::size_t w = 0; w < t.words.size(); ++w) {
            std::uint64_t inv = ~t.words[w];
            if (w + 1 == t.words.size()) {
                int used = int((t.bound & 63) + 1);
                if (used < 64) inv &= (std::uint64_t(1) << used) - 1;
            }
            if (inv) {
                rep.first_gap = std::int64_t(w) * 64 + __builtin_ctzll(inv);
                break;
            }
        }
    }
    return rep;
}

inline GapReport first_gap(const WeightedForm& form, std::int64_t N,
                           std::uint64_t max_bytes = kDefaultTableBytes) {
    return scan_gaps(reach_table(form, N, max_bytes));
}

struct MinLenResult {
    std::optional<std::int64_t> ell;  // smallest total length, if one was found
    std::int64_t bound;               // the N the claim was checked against
};

// Smallest ell = ell1 + ell2 <= ell_max such that (1^ell1, r^ell2) represents
// every 1 <= n <= N. A finite check only: the result is an empirical claim up
// to N, not a universality certificate. Adding a slot never shrinks the
// reachable set, so a linear scan from the Guy lower bound is exact; the
// table is extended one slot at a time rather than rebuilt.
inline MinLenResult empirical_min_len(GonalOrder m, std::int64_t r, std::int64_t ell1,
                                      std::int64_t N, std::int64_t ell_max,
                                      std::uint64_t max_bytes = kDefaultTableBytes) {
    if (N < 1) throw argument_error("empirical_min_len needs N >= 1");
    if (ell_max < 1) throw argument_error("empirical_min_len needs ell_max >= 1");
    if (r < 1) throw argument_error("empirical_min_len needs r >= 1");

    std::int64_t start = std::max(guy_lower(m, r, ell1), std::max<std::int64_t>(ell1, 1));
    if (start > ell_max) return {std::nullopt, N};

    // start >= ell1, so every slot added while scanning has weight r
    ReachabilityTable t{RepeatShape(r, ell1, start - ell1).to_form(m), N,
                        detail::alloc_words(N, max_bytes)};
    t.words[0] = 1;
    for (std::int64_t a : t.form.weights) detail::add_slot(t, a);

    for (std::int64_t ell = start;; ++ell) {
        if (!scan_gaps(t).first_gap.has_value()) return {ell, N};
        if (ell == ell_max) return {std::nullopt, N};
        t.form.weights.push_back(r);
        detail::add_slot(t, r);
    }
}

}  // namespace gonal
