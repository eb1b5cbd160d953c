#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "core.hpp"
#include "tables.hpp"

namespace gonal {

// ---------------------------------------------------------------------------
// universal quaternary form Q(x) = sum_{1<=i<=j<=4} x_i x_j
// ---------------------------------------------------------------------------

inline int128 eval_quaternary(const std::array<std::int64_t, 4>& x) {
    int128 s = 0, q = 0;
    for (std::int64_t v : x) {
        s += v;
        q += int128(v) * v;
    }
    return (s * s + q) / 2;
}

namespace detail {

// compare in canonical argument order 0 < 1 < -1 < 2 < -2 < ...
inline bool canonical_less(std::int64_t a, std::int64_t b) {
    std::int64_t aa = a < 0 ? -a : a, ab = b < 0 ? -b : b;
    if (aa != ab) return aa < ab;
    return a > b;
}

}  // namespace detail

// Solve Q(x) = n exactly using 2Q = (sum x)^2 + sum x^2: enumerate the
// coordinate sum s in canonical order, then x1, x2, and close with the two
// remaining coordinates from an integer quadratic. First solution in this
// order wins, which makes the output deterministic and easy to re-derive.
inline std::array<std::int64_t, 4> solve_quaternary(std::int64_t n) {
    if (n < 0) throw argument_error("solve_quaternary needs n >= 0");
    for (std::int64_t si = 0;; ++si) {
        std::int64_t s = canonical_arg(si);
        if (s * s > 2 * n) {
            if (s > 0) continue;  // the mirrored value may still be in range
            break;
        }
        std::int64_t T = 2 * n - s * s;
        if (5 * s * s > 8 * n) continue;  // Cauchy-Schwarz: s^2 <= 4T
        for (std::int64_t i1 = 0;; ++i1) {
            std::int64_t x1 = canonical_arg(i1);
            if (x1 * x1 > T) {
                if (x1 > 0) continue;
                break;
            }
            std::int64_t T1 = T - x1 * x1;
            for (std::int64_t i2 = 0;; ++i2) {
                std::int64_t x2 = canonical_arg(i2);
                if (x2 * x2 > T1) {
                    if (x2 > 0) continue;
                    break;
                }
                std::int64_t u = s - x1 - x2;
                std::int64_t v = T1 - x2 * x2;  // x3^2 + x4^2
                std::int64_t disc = 2 * v - u * u;
                if (disc < 0) continue;
                uint128 w;
                if (!is_square(uint128(disc), w)) continue;
                std::int64_t ww = std::int64_t(w);
                if (((u + ww) & 1) != 0) continue;
                std::int64_t ra = (u + ww) / 2, rb = (u - ww) / 2;
                std::int64_t x3 = ra, x4 = rb;
                if (detail::canonical_less(rb, ra)) std::swap(x3, x4);
                std::array<std::int64_t, 4> out{x1, x2, x3, x4};
                if (eval_quaternary(out) != n)
                    throw invariant_error("quaternary solver self-check failed at n = " +
                                          std::to_string(n));
                return out;
            }
        }
    }
    throw invariant_error("quaternary form missed n = " + std::to_string(n));
}

// Five arguments on the hyperplane sum x = 0 with sum P_m(x_j) = (m-2)k.
inline std::array<std::int64_t, 5> represent_multiple(GonalOrder m, std::int64_t k) {
    if (k < 0) throw argument_error("represent_multiple needs k >= 0");
    auto q = solve_quaternary(k);
    std::array<std::int64_t, 5> out{q[0], q[1], q[2], q[3], -(q[0] + q[1] + q[2] + q[3])};
    int128 total = 0;
    for (std::int64_t x : out) total += eval_pm(m, x);
    if (total != int128(m.value() - 2) * k)
        throw invariant_error("hyperplane representation self-check failed");
    return out;
}

namespace detail {

inline void append_hyperplane(std::vector<std::int64_t>& args, GonalOrder m,
                              std::int64_t k) {
    for (std::int64_t x : represent_multiple(m, k))
        if (x != 0) args.push_back(x);
}

inline void append_repeat(std::vector<std::int64_t>& args, std::int64_t x,
                          std::int64_t count) {
    for (std::int64_t i = 0; i < count; ++i) args.push_back(x);
}

// Deterministic bounded search: first representation of n by at most
// `budget` generalized m-gonal numbers, trying larger values first. This is
// the oracle-style resolver behind the finite residual cases the closed-form
// dispatch does not cover; failures are memoized per call.
inline std::optional<std::vector<std::int64_t>> bounded_parts_search(
    GonalOrder m, std::int64_t n, std::int64_t budget) {
    std::vector<ValueArg> vals = values_upto(m, n);
    std::vector<std::int64_t> parts;
    std::map<std::pair<std::int64_t, std::int64_t>, bool> dead;
    auto dfs = [&](auto&& self, std::int64_t rem, std::int64_t left) -> bool {
        if (rem == 0) return true;
        if (left == 0) return false;
        if (dead.count({rem, left})) return false;
        for (auto it = vals.rbegin(); it != vals.rend(); ++it) {
            if (it->value > rem || it->value == 0) continue;
            parts.push_back(it->arg);
            if (self(self, rem - it->value, left - 1)) return true;
            parts.pop_back();
        }
        dead[{rem, left}] = true;
        return false;
    };
    if (!dfs(dfs, n, budget)) return std::nullopt;
    return parts;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// r = 1: every n as at most m-4 generalized m-gonal numbers (m >= 10)
// ---------------------------------------------------------------------------

namespace detail {

// residual cases of the r = 1 ladder (10 <= m <= 14, small k1), resolved by
// bounded search and cached; also emitted into the constants file
inline const std::vector<std::int64_t>& r1_residual(GonalOrder m, std::int64_t n) {
    static std::map<std::pair<std::int64_t, std::int64_t>, std::vector<std::int64_t>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(m.value(), n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto parts = bounded_parts_search(m, n, m.value() - 4);
    if (!parts)
        throw invariant_error("residual case search failed for m = " +
                              std::to_string(m.value()) + ", n = " + std::to_string(n));
    return cache.emplace(key, std::move(*parts)).first->second;
}

}  // namespace detail

// Certificate with at most m-4 parts, zero-padded to exactly m-4 slots.
// Ladder: split n = (m-2)k1 + k2 and spend five slots on the multiple of
// m-2; the remainder goes to ones, a single P_m(-1), shifted multiples, or
// P_m(2)-blocks depending on where k2 falls.
inline Representation represent_r1(GonalOrder m, std::int64_t n) {
    if (m.value() < 10)
        throw argument_error("represent_r1 covers m >= 10; use the oracle for m in 3..9");
    if (n < 1) throw argument_error("represent_r1 needs n >= 1");
    const std::int64_t mv = m.value();
    const std::int64_t k1 = n / (mv - 2);
    const std::int64_t k2 = n % (mv - 2);

    std::vector<std::int64_t> args;
    if (k2 <= mv - 9) {
        detail::append_hyperplane(args, m, k1);
        detail::append_repeat(args, 1, k2);
    } else if (k2 == mv - 3) {
        detail::append_hyperplane(args, m, k1);
        args.push_back(-1);
    } else {
        const std::int64_t k = mv - 2 - k2;  // 2 <= k <= 6
        if (mv >= k + 9 && k1 >= k - 1) {
            detail::append_hyperplane(args, m, k1 - k + 1);
            detail::append_repeat(args, -1, k);
        } else if (mv < k + 9 && k1 >= triangular(k) - 1) {
            detail::append_hyperplane(args, m, k1 + 1 - triangular(k));
            args.push_back(-k);
        } else if (mv >= k + 9) {
            // k1 < k-1
            if (mv >= 2 + 2 * k1 + k) {
                detail::append_repeat(args, 2, k1);
                detail::append_repeat(args, 1, mv - 2 - 2 * k1 - k);
            } else {
                // only (m, k1, k) = (15, 4, 6), i.e. n = 59 = P(-1) + 3 P(2) + 2
                args = {-1, 2, 2, 2, 1, 1};
            }
        } else {
            args = detail::r1_residual(m, n);
        }
    }

    if (std::int64_t(args.size()) > mv - 4)
        throw invariant_error("r = 1 certificate for n = " + std::to_string(n) +
                              " uses more than m-4 parts");
    args.resize(std::size_t(mv - 4), 0);
    Representation rep{std::move(args), 0};
    rep.value = eval_form(WeightedForm(m, std::vector<std::int64_t>(rep.args.size(), 1)),
                          rep.args);
    if (rep.value != n)
        throw invariant_error("r = 1 certificate for n = " + std::to_string(n) +
                              " failed re-evaluation");
    return rep;
}

// ---------------------------------------------------------------------------
// numbers near a multiple of m-2 in at most r-1 parts (7 <= r < m-3)
// ---------------------------------------------------------------------------

namespace detail {

inline void check_offset_domain(GonalOrder m, std::int64_t r) {
    if (r < 7 || r >= m.value() - 3)
        throw argument_error("offset representation needs 7 <= r < m-3");
}

}  // namespace detail

// Representation of k1(m-2) + k3 by at most r-1 generalized m-gonal numbers,
// or nullopt exactly on the blocked region -5 <= k3 <= -1, k1 <= |k3|-1.
// Nonnegative offsets use the hyperplane plus ones; negative offsets use a
// backward-walk entry when one exists and otherwise trade T(|k3|) multiples
// of m-2 for the single value P_m(k3).
inline std::optional<std::vector<std::int64_t>> represent_offset_multiple(
    GonalOrder m, std::int64_t r, std::int64_t k1, std::int64_t k3) {
    detail::check_offset_domain(m, r);
    if (k3 < -5 || k3 > r - 6)
        throw argument_error("offset k3 out of range [-5, r-6]");
    if (k1 < 0) throw argument_error("offset needs k1 >= 0");

    std::vector<std::int64_t> args;
    if (k3 >= 0) {
        detail::append_hyperplane(args, m, k1);
        detail::append_repeat(args, 1, k3);
    } else if (k1 <= -k3 - 1) {
        return std::nullopt;  // blocked region (covers the negative targets too)
    } else if (const GraphWalkEntry* e = graph_lookup(k1, k3)) {
        std::int64_t C = k1, D = k3, depth = e->depth;
        while (C != 0 || D != 0) {
            const GraphWalkEntry* cur = graph_lookup(C, D);
            if (!cur)
                throw invariant_error("backward walk fell off the table at (" +
                                      std::to_string(C) + ", " + std::to_string(D) + ")");
            args.push_back(cur->step);
            auto p = graph_parent(*cur);
            C = p.first;
            D = p.second;
        }
        if (std::int64_t(args.size()) != depth)
            throw invariant_error("backward walk depth mismatch");
    } else if (k1 >= triangular(-k3)) {
        detail::append_hyperplane(args, m, k1 - triangular(-k3));
        args.push_back(k3);
    } else {
        throw invariant_error("offset table gap at (k1, k3) = (" + std::to_string(k1) +
                              ", " + std::to_string(k3) + ")");
    }

    if (std::int64_t(args.size()) > r - 1)
        throw invariant_error("offset representation exceeded r-1 parts");
    int128 want = int128(m.value() - 2) * k1 + k3;
    int128 got = 0;
    for (std::int64_t x : args) got += eval_pm(m, x);
    if (got != want) throw invariant_error("offset representation failed re-evaluation");
    return args;
}

// ---------------------------------------------------------------------------
// shaped representations
// ---------------------------------------------------------------------------

struct ShapedRepresentation {
    RepeatShape shape;
    std::vector<std::int64_t> ones_args;  // unit slots actually used
    std::vector<std::int64_t> rep_args;   // weight-r slots actually used
    int128 value = 0;
};

namespace detail {

inline ShapedRepresentation make_shaped(GonalOrder m, RepeatShape shape,
                                        std::vector<std::int64_t> ones,
                                        std::vector<std::int64_t> reps, std::int64_t n) {
    if (std::int64_t(ones.size()) > shape.ell1)
        throw invariant_error("shaped certificate overflows the unit slots");
    if (std::int64_t(reps.size()) > shape.ell2)
        throw invariant_error("shaped certificate overflows the repeated slots");
    ShapedRepresentation sr{shape, std::move(ones), std::move(reps), 0};
    for (std::int64_t x : sr.ones_args) sr.value += eval_pm(m, x);
    for (std::int64_t x : sr.rep_args) sr.value += int128(shape.r) * eval_pm(m, x);
    if (sr.value != n)
        throw invariant_error("shaped certificate for n = " + std::to_string(n) +
                              " failed re-evaluation");
    return sr;
}

}  // namespace detail

// Blocked offsets with at least one repeated slot available: represents
// n = k1(m-2) + r k2 + k3 inside (1^{r-1}, r^{k2-1}) by the band rule
// j = 0 / 1 / 2 for |k3| + 2 k1 <= 6 / <= 10 / <= 13.
inline ShapedRepresentation represent_offset_with_repeats(GonalOrder m, std::int64_t r,
                                                          std::int64_t k1, std::int64_t k2,
                                                          std::int64_t k3) {
    detail::check_offset_domain(m, r);
    if (k3 < -5 || k3 > -1) throw argument_error("blocked offset needs -5 <= k3 <= -1");
    if (k1 < 0 || k1 > -k3 - 1)
        throw argument_error("blocked offset needs 0 <= k1 <= |k3|-1");
    if (k2 < 1) throw argument_error("blocked offset needs k2 >= 1");

    const std::int64_t band = -k3 + 2 * k1;
    const std::int64_t j = band <= 6 ? 0 : (band <= 10 ? 1 : 2);
    const std::int64_t ones = r + k3 - 2 * k1 + 3 * j;
    if (ones < 0 || k1 - j < 0)
        throw invariant_error("band rule produced a malformed decomposition");

    std::vector<std::int64_t> units;
    detail::append_repeat(units, 2, k1 - j);
    detail::append_repeat(units, -1, j);
    detail::append_repeat(units, 1, ones);
    std::vector<std::int64_t> reps;
    detail::append_repeat(reps, 1, k2 - 1);

    std::int64_t n = (m.value() - 2) * k1 + r * k2 + k3;
    return detail::make_shaped(m, RepeatShape(r, r - 1, k2 - 1), std::move(units),
                               std::move(reps), n);
}

// ---------------------------------------------------------------------------
// the large-r decomposer (7 <= r < m-3)
// ---------------------------------------------------------------------------

// theorem shape for (1^{r-1}, r^{ell2}): the minimal universal length
inline RepeatShape theorem_shape(GonalOrder m, std::int64_t r) {
    const std::int64_t mv = m.value();
    if (r == 2 && mv >= 14) return RepeatShape(2, 1, mv / 2 - 1);
    if (r == 3 && mv >= 14) {
        std::int64_t ell = mv % 3 == 2 ? (2 * mv - 4) / 3 : mv - 2;
        return RepeatShape(3, 2, ell - 2);
    }
    if (r == 4 && mv >= 62) return RepeatShape(4, 3, ceil_div(mv - 2, 4) - 1);
    if (r == 5 && mv >= 78) return RepeatShape(5, 4, ceil_div(mv - 3, 5) - 1);
    if (r == 6 && mv >= 93) return RepeatShape(6, 5, ceil_div(mv - 3, 6) - 1);
    if (r >= 7 && r < mv - 3) return RepeatShape(r, r - 1, ceil_div(mv - 3, r) - 1);
    throw argument_error("no certified shape for m = " + std::to_string(mv) +
                         ", r = " + std::to_string(r) +
                         "; the oracle can still search this pair empirically");
}

namespace detail {

struct UnitsReps {
    std::vector<std::int64_t> units, reps;
};

// blocked offset with no repeated slot spent yet: write m = rs + t and trade
// part of the target against s or s-1 repeated ones
inline UnitsReps exceptional_without_repeats(GonalOrder m, std::int64_t r,
                                             std::int64_t k1, std::int64_t k3) {
    const std::int64_t mv = m.value();
    const std::int64_t t = mv % r;
    const std::int64_t s = mv / r;
    UnitsReps out;
    if (t + k3 - 2 * k1 >= 0) {
        append_repeat(out.units, 2, k1 - 1);
        append_repeat(out.units, 1, t + k3 - 2 * k1);
        append_repeat(out.reps, 1, s);
        return out;
    }
    if (t <= -k3 + k1) {
        for (std::int64_t j = 0; j <= k1 - 1; ++j) {
            if (t + k3 - 2 * k1 + r + 3 * j >= 0 && t + k3 - k1 + 3 * j <= 0) {
                append_repeat(out.units, 2, k1 - j - 1);
                append_repeat(out.units, -1, j);
                append_repeat(out.units, 1, t + k3 - 2 * k1 + 3 * j + r);
                append_repeat(out.reps, 1, s - 1);
                return out;
            }
        }
        throw invariant_error("no admissible j for the shifted split at m = " +
                              std::to_string(mv) + ", k1 = " + std::to_string(k1) +
                              ", k3 = " + std::to_string(k3));
    }
    // |k3| + k1 < t < |k3| + 2 k1
    const std::int64_t tp = t - k1 + k3;  // t' = t - k1 - |k3|, 1 <= t' < k1
    const std::int64_t delta = tp == k1 - 1 ? 1 : 0;
    const std::int64_t j = tp - delta;
    const std::int64_t ones = t - 3 - 3 * j + k1 + k3;
    if (tp < 1 || tp > k1 - 1 || ones < 0 || k1 - 1 - j < 0 ||
        t + 2 * k1 + k3 - 3 * j - 4 > r - 1)
        throw invariant_error("t'/delta rule produced a malformed decomposition");
    append_repeat(out.units, -1, k1 - 1 - j);
    append_repeat(out.units, 2, j);
    append_repeat(out.units, 1, ones);
    append_repeat(out.reps, 1, s);
    return out;
}

}  // namespace detail

// Certificate inside the theorem shape (1^{r-1}, r^{ceil((m-3)/r)-1}).
// Splits n = (m-2)k1 + r k2 + k3 with -5 <= k3 <= r-6 and dispatches on
// whether the offset is blocked and whether k2 hits the top value s when
// r | m-3 (that case trades the r k2 block against one more multiple of
// m-2; note the rewrite lands on k3 - 1, and k3 = -5 instead pulls a P_m(2)
// out of the hyperplane block).
inline ShapedRepresentation represent_repeat_large(GonalOrder m, std::int64_t r,
                                                   std::int64_t n) {
    detail::check_offset_domain(m, r);
    if (n < 1) throw argument_error("represent_repeat_large needs n >= 1");
    const std::int64_t mv = m.value();
    const RepeatShape shape = theorem_shape(m, r);

    std::int64_t tres = n % (mv - 2);
    std::int64_t k1, k2, k3;
    std::int64_t k2_direct = (tres + 5) / r;
    if (k2_direct <= (mv - 3) / r) {
        k1 = n / (mv - 2);
        k2 = k2_direct;
        k3 = tres - r * k2_direct;
    } else {
        k1 = n / (mv - 2) + 1;
        k2 = 0;
        k3 = tres - (mv - 2);
    }

    const bool divides = (mv - 3) % r == 0;
    const std::int64_t s_top = (mv - 3) / r;
    const bool blocked = k3 < 0 && k1 <= -k3 - 1;

    std::vector<std::int64_t> units, reps;
    if (divides && k2 == s_top) {
        if (blocked) {
            auto sr = represent_offset_with_repeats(m, r, k1, k2, k3);
            units = std::move(sr.ones_args);
            reps = std::move(sr.rep_args);
        } else if (k3 == -5) {
            // n = (k1-1)(m-2) + P_m(2) + (r-7) ones + r(s-1) repeated ones
            detail::append_hyperplane(units, m, k1 - 1);
            units.push_back(2);
            detail::append_repeat(units, 1, r - 7);
            detail::append_repeat(reps, 1, s_top - 1);
        } else {
            auto lem = represent_offset_multiple(m, r, k1 + 1, k3 - 1);
            if (!lem) throw invariant_error("top-k2 rewrite hit a blocked offset");
            units = std::move(*lem);
        }
    } else if (blocked) {
        if (k2 >= 1) {
            auto sr = represent_offset_with_repeats(m, r, k1, k2, k3);
            units = std::move(sr.ones_args);
            reps = std::move(sr.rep_args);
        } else {
            auto ur = detail::exceptional_without_repeats(m, r, k1, k3);
            units = std::move(ur.units);
            reps = std::move(ur.reps);
        }
    } else {
        auto lem = represent_offset_multiple(m, r, k1, k3);
        if (!lem) throw invariant_error("unblocked offset came back empty");
        units = std::move(*lem);
        detail::append_repeat(reps, 1, k2);
    }
    return detail::make_shaped(m, shape, std::move(units), std::move(reps), n);
}

// ---------------------------------------------------------------------------
// the small-r decomposers (r = 2..6)
// ---------------------------------------------------------------------------

namespace detail {

// r = 2 residual cases resolved through the stored case table
inline UnitsReps r2_case_lookup(GonalOrder m, std::int64_t n, std::int64_t ell2) {
    const std::int64_t mv = m.value();
    for (const R2CaseRow& row : r2_case_table()) {
        if (row.par == MParity::odd && mv % 2 == 0) continue;
        if (row.par == MParity::even && mv % 2 == 1) continue;
        if (n < row.lo.at(mv) || n > row.hi.at(mv)) continue;
        for (std::int64_t x1 : row.xs) {
            int128 p1 = eval_pm(m, x1);
            if ((int128(n) - p1) % 2 != 0) continue;
            int128 rest = int128(n) - p1;
            for (std::int64_t x : row.tail) rest -= 2 * eval_pm(m, x);
            if (rest < 0) break;
            std::int64_t half = std::int64_t(rest / 2);
            if (half > ell2 - std::int64_t(row.tail.size()))
                throw invariant_error("doubled-weight case row cannot absorb n = " +
                                      std::to_string(n));
            UnitsReps out;
            out.units.push_back(x1);
            out.reps = row.tail;
            append_repeat(out.reps, 1, half);
            return out;
        }
    }
    throw invariant_error("no doubled-weight case row covers n = " + std::to_string(n));
}

inline UnitsReps small_r2(GonalOrder m, std::int64_t n) {
    const std::int64_t mv = m.value();
    const std::int64_t ell = mv / 2;
    const std::int64_t ell2 = ell - 1;
    const std::int64_t period = 2 * (mv - 2);

    std::int64_t rho = n % period;
    std::int64_t c = rho <= 2 * mv - 15 ? rho : rho - period;
    std::int64_t k3 = ((c % 2) + 2) % 2;
    std::int64_t k2 = (c - k3) / 2;
    std::int64_t k1 = (n - c) / period;

    UnitsReps out;
    if (k2 >= 0 && k2 <= ell - 6) {
        out.units.push_back(k3);
        append_hyperplane(out.reps, m, k1);
        append_repeat(out.reps, 1, k2);
        return out;
    }
    if (k2 >= ell - 5) {
        // move the unit slot to P_m(j), j in {-1, 2}, matching parity
        std::int64_t j = (mv - k3) % 2 == 0 ? 2 : -1;
        std::int64_t pj = j == 2 ? mv : mv - 3;
        std::int64_t k = k2 + (k3 - pj) / 2;
        if (k < -5 || k > ell - 6)
            throw invariant_error("doubled-weight shift left k out of range");
        if (k >= 0) {
            out.units.push_back(j);
            append_hyperplane(out.reps, m, k1);
            append_repeat(out.reps, 1, k);
            return out;
        }
        if (auto lem = represent_offset_multiple(m, 7, k1, k)) {
            out.units.push_back(j);
            out.reps = std::move(*lem);
            return out;
        }
        return r2_case_lookup(m, n, ell2);
    }
    // -5 <= k2 <= -1
    if (auto lem = represent_offset_multiple(m, 7, k1, k2)) {
        out.units.push_back(k3);
        out.reps = std::move(*lem);
        return out;
    }
    return r2_case_lookup(m, n, ell2);
}

// r = 3 residual cases (m = 2 mod 3): deterministic bounded search over
// two unit slots plus at most ell2 triple-weight slots, memoized
inline const UnitsReps& r3_residual(GonalOrder m, std::int64_t n, std::int64_t ell2) {
    static std::map<std::pair<std::int64_t, std::int64_t>, UnitsReps> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(m.value(), n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    for (std::int64_t i1 = 0;; ++i1) {
        std::int64_t x1 = canonical_arg(i1);
        int128 p1 = eval_pm(m, x1);
        if (p1 > n) {
            if (x1 > 0) continue;
            break;
        }
        for (std::int64_t i2 = i1;; ++i2) {
            std::int64_t x2 = canonical_arg(i2);
            int128 p12 = p1 + eval_pm(m, x2);
            if (p12 > n) {
                if (x2 > 0) continue;
                break;
            }
            if ((int128(n) - p12) % 3 != 0) continue;
            auto parts = bounded_parts_search(m, std::int64_t((int128(n) - p12) / 3), ell2);
            if (parts) {
                UnitsReps out;
                out.units = {x1, x2};
                out.reps = std::move(*parts);
                return cache.emplace(key, std::move(out)).first->second;
            }
        }
    }
    throw invariant_error("triple-weight residual search failed for m = " +
                          std::to_string(m.value()) + ", n = " + std::to_string(n));
}

inline UnitsReps small_r3(GonalOrder m, std::int64_t n) {
    const std::int64_t mv = m.value();
    UnitsReps out;
    if (mv % 3 != 2) {
        // 3 * (r = 1 certificate) plus the residue in the two unit slots
        append_repeat(out.units, 1, n % 3);
        if (n / 3 >= 1)
            for (std::int64_t x : represent_r1(m, n / 3).args)
                if (x != 0) out.reps.push_back(x);
        return out;
    }

    const std::int64_t ell2 = (2 * mv - 10) / 3;
    const std::int64_t period = 3 * (mv - 2);
    const std::int64_t k1 = n / period;
    const std::int64_t k3 = n % period;

    const K3Row* row = nullptr;
    for (const K3Row& r : k3_table())
        if (r.value.at(mv) == k3) {
            row = &r;
            break;
        }

    if (!row) {
        // unblocked residue: pick a unit pair in the class of n, then place
        // Q = (n - u)/3 on the triple slots by the multiple-of-(m-2) ladder
        for (const UnitPair& up : r3_unit_pairs(int(k3 % 3))) {
            std::int64_t u = up.value.at(mv);
            if (u > n || (n - u) % 3 != 0) continue;
            std::int64_t Q = (n - u) / 3;
            std::int64_t k = Q / (mv - 2), c = Q % (mv - 2);
            out.units = {up.x1, up.x2};
            if ((k > 0 ? 5 : 0) + c <= ell2) {
                append_hyperplane(out.reps, m, k);
                append_repeat(out.reps, 1, c);
                return out;
            }
            if (c == mv - 3 && (k > 0 ? 5 : 0) + 1 <= ell2) {
                append_hyperplane(out.reps, m, k);
                out.reps.push_back(-1);
                return out;
            }
            // pull one multiple into P_m(2): Q = (m-2)(k-1) + m + (c-2)
            if (k >= 1 && c >= 2 && (k > 1 ? 5 : 0) + 1 + (c - 2) <= ell2) {
                append_hyperplane(out.reps, m, k - 1);
                out.reps.push_back(2);
                append_repeat(out.reps, 1, c - 2);
                return out;
            }
            out.units.clear();
        }
        return r3_residual(m, n, ell2);
    }

    // alpha in {0, 2, 2m-6} becomes the unit pair; the rest is 3 times an
    // offset representation
    std::int64_t alpha = row->alpha.at(mv);
    if (alpha == 0)
        out.units = {0, 0};
    else if (alpha == 2)
        out.units = {1, 1};
    else
        out.units = {-1, -1};

    if (row->k <= 5 && k1 >= row->k - row->j0) {
        auto lem = represent_offset_multiple(m, 7, k1 + row->j0, -row->k);
        if (!lem) throw invariant_error("blocked-set offset unexpectedly empty");
        out.reps = std::move(*lem);
        return out;
    }
    if (row->k == 6) {
        if (mv >= 17 && k1 >= 5) {
            auto lem = represent_offset_multiple(m, 7, k1, -5);
            if (!lem) throw invariant_error("blocked-set offset unexpectedly empty");
            out.reps = std::move(*lem);
            out.reps.push_back(-1);
            return out;
        }
        if (mv == 14 && k1 >= 15) {
            // 3m-22 = 20 here and P_14(6) = 186 = 15(m-2) + 6 closes the gap
            append_hyperplane(out.reps, m, k1 - 15);
            out.reps.push_back(6);
            return out;
        }
    }
    return r3_residual(m, n, ell2);
}

inline UnitsReps small_r456(GonalOrder m, std::int64_t r, std::int64_t n,
                            std::int64_t ell2) {
    const std::int64_t mv = m.value();
    const std::int64_t period = r * (mv - 2);
    const std::int64_t rho = n % period;
    const std::int64_t K = n / period;

    const DispatchRow* row = nullptr;
    for (const DispatchRow& dr : dispatch_table())
        if (dr.r == r && rho >= dr.lo.at(mv) && rho <= dr.hi.at(mv)) {
            row = &dr;
            break;
        }
    if (!row)
        throw invariant_error("no dispatch row for residue " + std::to_string(rho) +
                              " at r = " + std::to_string(r));

    std::int64_t best_s = -1, best_coef = 0, best_off = 0;
    for (const SRange& seg : row->sets) {
        std::int64_t lo = seg.coef * mv + seg.lo;
        std::int64_t hi = seg.coef * mv + seg.hi;
        hi = std::min(hi, rho);
        if (hi < lo) continue;
        std::int64_t cand = hi - ((hi - rho) % r + r) % r;
        if (cand < lo) continue;
        if (cand > best_s) {
            best_s = cand;
            best_coef = seg.coef;
            best_off = cand - seg.coef * mv;
        }
    }
    if (best_s < 0)
        throw invariant_error("dispatch row has no candidate for residue " +
                              std::to_string(rho));
    const SCert* cert = s_certificate(r, best_coef, best_off);
    if (!cert) throw invariant_error("missing part certificate for s = " +
                                     std::to_string(best_s));

    std::int64_t k2 = (rho - best_s) / r;
    if (k2 > ell2)
        throw invariant_error("dispatch exceeded the repeated-slot budget at n = " +
                              std::to_string(n));

    UnitsReps out;
    out.units = cert->args;
    if (k2 <= ell2 - 5) {
        append_hyperplane(out.reps, m, K);
        append_repeat(out.reps, 1, k2);
    } else {
        std::int64_t k = std::min<std::int64_t>(5, K);
        if (k2 - 2 * k < 0) throw invariant_error("shifted split went negative");
        if (K > 5) append_hyperplane(out.reps, m, K - 5);
        append_repeat(out.reps, 2, k);
        append_repeat(out.reps, 1, k2 - 2 * k);
    }
    return out;
}

}  // namespace detail

// Certificate inside the theorem shape for r in {2, ..., 6}; the procedure
// differs per r (doubled-weight case table, triple-weight residue analysis,
// interval dispatch for 4..6).
inline ShapedRepresentation represent_repeat_small(GonalOrder m, std::int64_t r,
                                                   std::int64_t n) {
    if (n < 1) throw argument_error("represent_repeat_small needs n >= 1");
    const std::int64_t mv = m.value();
    auto domain_fail = [&]() {
        throw argument_error("(m, r) = (" + std::to_string(mv) + ", " + std::to_string(r) +
                             ") is outside the certified domain; use the oracle instead");
    };
    if (r < 2 || r > 6) domain_fail();
    if ((r == 2 || r == 3) && mv < 14) domain_fail();
    if (r == 4 && mv < 62) domain_fail();
    if (r == 5 && mv < 78) domain_fail();
    if (r == 6 && mv < 93) domain_fail();

    const RepeatShape shape = theorem_shape(m, r);
    detail::UnitsReps ur;
    if (r == 2)
        ur = detail::small_r2(m, n);
    else if (r == 3)
        ur = detail::small_r3(m, n);
    else
        ur = detail::small_r456(m, r, n, shape.ell2);
    return detail::make_shaped(m, shape, std::move(ur.units), std::move(ur.reps), n);
}

}  // namespace gonal
