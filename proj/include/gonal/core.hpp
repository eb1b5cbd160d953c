#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "int128.hpp"

namespace gonal {

// ---------------------------------------------------------------------------
// domain types
// ---------------------------------------------------------------------------

// The order m of a polygonal number family, m >= 3 (triangular, square, ...).
class GonalOrder {
public:
    explicit GonalOrder(std::int64_t m) : m_(m) {
        if (m < 3)
            throw argument_error("gonal order must be >= 3, got " + std::to_string(m));
        if (m > kMaxOrder)
            throw argument_error("gonal order " + std::to_string(m) +
                                 " exceeds the exact-evaluation envelope");
    }
    std::int64_t value() const { return m_; }

    friend bool operator==(GonalOrder a, GonalOrder b) { return a.m_ == b.m_; }
    friend bool operator!=(GonalOrder a, GonalOrder b) { return a.m_ != b.m_; }

    // keeps (m-2)*x^2 inside 128 bits for |x| <= kMaxArg
    static constexpr std::int64_t kMaxOrder = std::int64_t(1) << 36;
    static constexpr std::int64_t kMaxArg = std::int64_t(1) << 44;

private:
    std::int64_t m_;
};

// A weighted sum of generalized m-gonal numbers: sum_j weights[j] * P_m(x_j).
struct WeightedForm {
    WeightedForm(GonalOrder m, std::vector<std::int64_t> w)
        : order(m), weights(std::move(w)) {
        if (weights.empty())
            throw argument_error("weighted form needs at least one slot");
        for (std::int64_t a : weights)
            if (a < 1)
                throw argument_error("form weights must be positive, got " +
                                     std::to_string(a));
    }
    GonalOrder order;
    std::vector<std::int64_t> weights;

    std::size_t size() const { return weights.size(); }
};

// Weight vector (1,...,1,r,...,r): 1 repeated ell1 times, r repeated ell2 times.
struct RepeatShape {
    RepeatShape(std::int64_t r_, std::int64_t ell1_, std::int64_t ell2_)
        : r(r_), ell1(ell1_), ell2(ell2_) {
        if (r < 1) throw argument_error("repeat weight must be >= 1");
        if (ell1 < 0 || ell2 < 0 || ell1 + ell2 < 1)
            throw argument_error("repeat shape needs ell1 + ell2 >= 1");
    }
    std::int64_t r;
    std::int64_t ell1;
    std::int64_t ell2;

    std::int64_t total() const { return ell1 + ell2; }

    WeightedForm to_form(GonalOrder m) const {
        std::vector<std::int64_t> w;
        w.reserve(std::size_t(total()));
        for (std::int64_t i = 0; i < ell1; ++i) w.push_back(1);
        for (std::int64_t i = 0; i < ell2; ++i) w.push_back(r);
        return WeightedForm(m, std::move(w));
    }
};

// An explicit argument vector together with the value it evaluates to.
struct Representation {
    std::vector<std::int64_t> args;
    int128 value = 0;
};

// ---------------------------------------------------------------------------
// small integer helpers shared across the library
// ---------------------------------------------------------------------------

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
    // b > 0; exact for negative a as well
    return a > 0 ? (a - 1) / b + 1 : a / b;
}

inline std::int64_t triangular(std::int64_t k) { return k * (k + 1) / 2; }

// canonical argument order 0, 1, -1, 2, -2, ...
inline std::int64_t canonical_arg(std::int64_t idx) {
    if (idx == 0) return 0;
    std::int64_t k = (idx + 1) / 2;
    return (idx % 2 == 1) ? k : -k;
}

// ---------------------------------------------------------------------------
// evaluation and inversion
// ---------------------------------------------------------------------------

// P_m(x) = ((m-2)x^2 - (m-4)x) / 2, for any integer x (generalized).
inline int128 eval_pm(GonalOrder m, std::int64_t x) {
    if (x > GonalOrder::kMaxArg || x < -GonalOrder::kMaxArg)
        throw argument_error("gonal argument " + std::to_string(x) +
                             " exceeds the exact-evaluation envelope");
    int128 mm = m.value();
    int128 xx = x;
    return ((mm - 2) * xx * xx - (mm - 4) * xx) / 2;
}

inline int128 eval_form(const WeightedForm& form, std::span<const std::int64_t> args) {
    if (args.size() != form.size())
        throw argument_error("form has " + std::to_string(form.size()) +
                             " slots but got " + std::to_string(args.size()) +
                             " arguments");
    int128 acc = 0;
    for (std::size_t j = 0; j < args.size(); ++j)
        acc += int128(form.weights[j]) * eval_pm(form.order, args[j]);
    return acc;
}

struct ValueArg {
    std::int64_t value;
    std::int64_t arg;
    friend bool operator==(const ValueArg&, const ValueArg&) = default;
};

// All distinct generalized m-gonal values <= N, strictly increasing, each
// with one witness argument. Along 0, 1, -1, 2, -2, ... the values are
// nondecreasing for every m >= 3; the only repeats are P_3(-x) = P_3(x-1)
// and P_4(-x) = P_4(x), so dropping non-increasing candidates both
// deduplicates and keeps the witness with smallest |arg| (ties positive).
inline std::vector<ValueArg> values_upto(GonalOrder m, std::int64_t N) {
    if (N < 0) throw argument_error("values_upto needs N >= 0");
    std::vector<ValueArg> out;
    int128 last = -1;
    for (std::int64_t k = 0;; ++k) {
        int128 pos = eval_pm(m, k);
        int128 neg = k > 0 ? eval_pm(m, -k) : pos;
        if (pos > N && neg > N) break;
        if (pos <= N && pos > last) {
            out.push_back({std::int64_t(pos), k});
            last = pos;
        }
        if (k > 0 && neg <= N && neg > last) {
            out.push_back({std::int64_t(neg), -k});
            last = neg;
        }
    }
    return out;
}

// Exactly { x : P_m(x) = v }, ascending. Inverts the quadratic with an
// integer square root and divisibility checks; no floating point.
inline std::vector<std::int64_t> invert_pm(GonalOrder m, int128 v) {
    if (v < 0) throw argument_error("invert_pm needs v >= 0");
    int128 mm = m.value();
    uint128 disc = uint128((mm - 4) * (mm - 4)) + uint128(8) * uint128(mm - 2) * uint128(v);
    uint128 root;
    if (!is_square(disc, root)) return {};
    std::vector<std::int64_t> out;
    int128 r = int128(root);
    for (int sign : {-1, 1}) {
        int128 num = (mm - 4) + sign * r;
        int128 den = 2 * (mm - 2);
        if (num % den == 0) {
            auto x = std::int64_t(num / den);
            if (out.empty() || out.back() != x) out.push_back(x);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Guy-style lower bound on the number of slots of a universal
// (1^ell1, r^ell2) form: representing m-4 can only use P in {0, 1}, so
// m-4 <= ell1 + r*ell2. Specializes to m-4 for r = 1 and to
// ceil((m-3)/r) + r - 2 for ell1 = r-1.
inline std::int64_t guy_lower(GonalOrder m, std::int64_t r, std::int64_t ell1) {
    if (r < 1) throw argument_error("guy_lower needs r >= 1");
    if (ell1 < 0) throw argument_error("guy_lower needs ell1 >= 0");
    std::int64_t need = m.value() - 4 - ell1;
    std::int64_t ell = ell1 + (need > 0 ? ceil_div(need, r) : 0);
    return std::max<std::int64_t>(ell, 1);
}

}  // namespace gonal
