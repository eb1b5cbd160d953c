#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"

// Proof constants for the constructive decomposers. Everything here is data,
// not code: backward-walk entries for values near small multiples of m-2,
// the case table for the doubled-weight decomposer, the residue rows for the
// triple-weight decomposer, and the dispatch tables plus part certificates
// for weights 4..6. The canonical on-disk serialization lives in
// data/proof_tables.txt; emit/parse round-trip it byte-exactly.

namespace gonal {

// a*m + b, instantiated per order
struct Lin {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t at(std::int64_t m) const { return a * m + b; }
    friend bool operator==(const Lin&, const Lin&) = default;
};

// ---------------------------------------------------------------------------
// backward-walk table: entry (C, D, d, x) encodes a representation of
// C(m-2) + D by exactly d generalized m-gonal numbers, the last of which has
// argument x. Parents follow from the step rule below; depth-1 entries are
// the single values P_m(x) = T(|x|)(m-2) - |x| for x < 0.
// ---------------------------------------------------------------------------

struct GraphWalkEntry {
    std::int64_t C;
    std::int64_t D;  // -5 <= D <= -1
    std::int64_t depth;
    std::int64_t step;
    friend bool operator==(const GraphWalkEntry&, const GraphWalkEntry&) = default;
};

// step x moves (C, D) to the parent cell (C - T(|x|), D + x) for x < 0,
// (C, D - 1) for x = 1, and (C - 1, D - 2) for x = 2.
inline std::pair<std::int64_t, std::int64_t> graph_parent(const GraphWalkEntry& e) {
    if (e.step >= 1) return {e.C - (e.step == 2 ? 1 : 0), e.D - (e.step == 2 ? 2 : 1)};
    std::int64_t k = -e.step;
    return {e.C - triangular(k), e.D - e.step};
}

inline const std::vector<GraphWalkEntry>& graph_walk_table() {
    static const std::vector<GraphWalkEntry> t = {
        {1, -1, 1, -1},  {2, -2, 2, -1},  {2, -1, 3, 1},   {3, -3, 3, -1},
        {3, -2, 1, -2},  {3, -1, 2, 1},   {4, -4, 4, -1},  {4, -3, 2, -2},
        {4, -1, 4, 2},   {5, -5, 5, -1},  {5, -4, 3, -1},  {5, -3, 4, -2},
        {6, -5, 4, -1},  {6, -4, 2, -2},  {6, -3, 1, -3},  {7, -5, 3, -1},
        {7, -4, 2, -1},  {8, -5, 3, -1},  {8, -4, 4, 1},   {9, -5, 2, -2},
        {9, -4, 3, 1},   {10, -5, 4, -1}, {10, -4, 1, -4}, {11, -5, 2, -1},
        {12, -5, 4, -4}, {13, -5, 3, -4}, {14, -5, 5, -4}, {15, -5, 1, -5},
    };
    return t;
}

inline const GraphWalkEntry* graph_lookup(std::int64_t C, std::int64_t D) {
    for (const auto& e : graph_walk_table())
        if (e.C == C && e.D == D) return &e;
    return nullptr;
}

// ---------------------------------------------------------------------------
// case table for the r = 2 decomposer: for n in [lo, hi] pick the unit slot
// x1 from xs with P_m(x1) = n (mod 2), spend the doubled slots on the fixed
// tail, and fill the even remainder with doubled ones.
// ---------------------------------------------------------------------------

enum class MParity : std::uint8_t { any, odd, even };

struct R2CaseRow {
    Lin lo, hi;
    std::vector<std::int64_t> xs;
    std::vector<std::int64_t> tail;
    MParity par = MParity::any;
    friend bool operator==(const R2CaseRow&, const R2CaseRow&) = default;
};

inline const std::vector<R2CaseRow>& r2_case_table() {
    static const std::vector<R2CaseRow> t = {
        {{1, -13}, {1, -2}, {0, 1}, {}, MParity::any},
        {{2, -14}, {2, -7}, {-1, 2}, {}, MParity::any},
        {{3, -17}, {3, -10}, {0, 1}, {-1}, MParity::any},
        // n = 3m-8 is P_m(-2) itself; reachable in the exceptional region
        // via (k1, k') = (1, -2) with unit value m, so it needs a row
        {{3, -8}, {3, -8}, {-2}, {}, MParity::any},
        {{4, -18}, {4, -13}, {-1, 2}, {-1}, MParity::any},
        // the tail printed for this interval is (2, 2), which contradicts
        // the stated remainder bounds m-10 <= n' <= m-6; (-1, -1) fits them
        {{5, -21}, {5, -18}, {0, 1}, {-1, -1}, MParity::any},
        {{5, -17}, {5, -14}, {0, 1}, {-1, 2}, MParity::any},
        {{6, -22}, {6, -19}, {-2, 3}, {-1}, MParity::any},
        {{7, -25}, {7, -20}, {0, 1}, {-1, -1, 2}, MParity::any},
        {{8, -26}, {8, -26}, {-2, 3}, {-1, -1}, MParity::any},
        {{8, -25}, {8, -25}, {-2}, {-1, 2}, MParity::odd},
        {{8, -25}, {8, -25}, {3}, {-1, -1}, MParity::even},
        {{9, -29}, {9, -28}, {0, 1}, {-1, -1, -1, 2}, MParity::any},
        {{9, -27}, {9, -27}, {-1}, {-1, -1, -1, -1}, MParity::any},
        {{9, -26}, {9, -26}, {-2}, {-1, -1, -1}, MParity::any},
    };
    return t;
}

// ---------------------------------------------------------------------------
// residue rows for the r = 3 decomposer, m = 2 (mod 3). Each row describes
// one member k3 = value(m) of the blocked set: k3 = 3(j0(m-2) - k) + alpha,
// with alpha in {0, 2, 2m-6} fixed by k3 mod 3.
// ---------------------------------------------------------------------------

struct K3Row {
    Lin value;
    Lin alpha;
    std::int64_t j0;
    std::int64_t k;
    friend bool operator==(const K3Row&, const K3Row&) = default;
};

inline const std::vector<K3Row>& k3_table() {
    static const std::vector<K3Row> t = {
        {{2, -21}, {2, -6}, 0, 5}, {{2, -18}, {2, -6}, 0, 4},
        {{2, -15}, {2, -6}, 0, 3}, {{2, -12}, {2, -6}, 0, 2},
        {{2, -9}, {2, -6}, 0, 1},  {{3, -22}, {0, 2}, 1, 6},
        {{3, -21}, {0, 0}, 1, 5},  {{3, -19}, {0, 2}, 1, 5},
        {{3, -18}, {0, 0}, 1, 4},  {{3, -16}, {0, 2}, 1, 4},
        {{3, -15}, {0, 0}, 1, 3},  {{3, -13}, {0, 2}, 1, 3},
        {{3, -12}, {0, 0}, 1, 2},  {{3, -10}, {0, 2}, 1, 2},
    };
    return t;
}

// unit-pair values compatible with each residue class mod 3 (paper order);
// the args evaluate to the listed value for every m
struct UnitPair {
    Lin value;
    std::int64_t x1, x2;
};

inline const std::vector<UnitPair>& r3_unit_pairs(int cls) {
    static const std::vector<UnitPair> c0 = {
        {{0, 0}, 0, 0}, {{1, -2}, 1, -1}, {{1, 1}, 2, 1}};
    static const std::vector<UnitPair> c1 = {
        {{0, 1}, 1, 0}, {{2, -6}, -1, -1}, {{2, -3}, 2, -1}, {{2, 0}, 2, 2},
        {{3, -8}, -2, 0}};
    static const std::vector<UnitPair> c2 = {
        {{0, 2}, 1, 1}, {{1, -3}, -1, 0}, {{1, 0}, 2, 0}, {{3, -7}, -2, 1}};
    return cls == 0 ? c0 : (cls == 1 ? c1 : c2);
}

// ---------------------------------------------------------------------------
// r in {4, 5, 6}: representable sets below r(m-2), their certificates, and
// the interval dispatch used by the decomposer
// ---------------------------------------------------------------------------

// contiguous run { a*m + j : blo <= j <= bhi } of the representable set
struct SRange {
    std::int64_t r;
    std::int64_t coef;
    std::int64_t lo, hi;
    friend bool operator==(const SRange&, const SRange&) = default;
};

inline const std::vector<SRange>& s_ranges() {
    static const std::vector<SRange> t = {
        {4, 0, 0, 3},   {4, 1, -3, 2},  {4, 2, -6, -5}, {4, 2, -3, -2},
        {4, 2, 0, 1},   {4, 3, -9, -6}, {4, 3, -3, 0},  {4, 4, -11, -10},
        {5, 0, 0, 4},   {5, 1, -3, 3},  {5, 2, -6, 2},  {5, 3, -9, -5},
        {5, 3, -3, 1},  {5, 4, -12, 0}, {6, 0, 0, 5},   {6, 1, -3, 4},
        {6, 2, -6, 3},  {6, 3, -9, 2},  {6, 4, -12, 1}, {6, 5, -12, 0},
        {6, 6, -15, -13},
    };
    return t;
}

// argument multiset realizing s = coef*m + off with at most r-1 unit slots
struct SCert {
    std::int64_t r;
    std::int64_t coef;
    std::int64_t off;
    std::vector<std::int64_t> args;
    friend bool operator==(const SCert&, const SCert&) = default;
};

inline const std::vector<SCert>& s_certificates() {
    static const std::vector<SCert> t = {
        // r = 4
        {4, 0, 0, {}},           {4, 0, 1, {1}},
        {4, 0, 2, {1, 1}},       {4, 0, 3, {1, 1, 1}},
        {4, 1, -3, {-1}},        {4, 1, -2, {-1, 1}},
        {4, 1, -1, {-1, 1, 1}},  {4, 1, 0, {2}},
        {4, 1, 1, {2, 1}},       {4, 1, 2, {2, 1, 1}},
        {4, 2, -6, {-1, -1}},    {4, 2, -5, {-1, -1, 1}},
        {4, 2, -3, {2, -1}},     {4, 2, -2, {2, -1, 1}},
        {4, 2, 0, {2, 2}},       {4, 2, 1, {2, 2, 1}},
        {4, 3, -9, {-1, -1, -1}}, {4, 3, -8, {-2}},
        {4, 3, -7, {-2, 1}},     {4, 3, -6, {-2, 1, 1}},
        {4, 3, -3, {3}},         {4, 3, -2, {3, 1}},
        {4, 3, -1, {3, 1, 1}},   {4, 3, 0, {2, 2, 2}},
        {4, 4, -11, {-2, -1}},   {4, 4, -10, {-2, -1, 1}},
        // r = 5
        {5, 0, 0, {}},           {5, 0, 1, {1}},
        {5, 0, 2, {1, 1}},       {5, 0, 3, {1, 1, 1}},
        {5, 0, 4, {1, 1, 1, 1}}, {5, 1, -3, {-1}},
        {5, 1, -2, {-1, 1}},     {5, 1, -1, {-1, 1, 1}},
        {5, 1, 0, {2}},          {5, 1, 1, {2, 1}},
        {5, 1, 2, {2, 1, 1}},    {5, 1, 3, {2, 1, 1, 1}},
        {5, 2, -6, {-1, -1}},    {5, 2, -5, {-1, -1, 1}},
        {5, 2, -4, {-1, -1, 1, 1}}, {5, 2, -3, {2, -1}},
        {5, 2, -2, {2, -1, 1}},  {5, 2, -1, {2, -1, 1, 1}},
        {5, 2, 0, {2, 2}},       {5, 2, 1, {2, 2, 1}},
        {5, 2, 2, {2, 2, 1, 1}}, {5, 3, -9, {-1, -1, -1}},
        {5, 3, -8, {-2}},        {5, 3, -7, {-2, 1}},
        {5, 3, -6, {-2, 1, 1}},  {5, 3, -5, {-2, 1, 1, 1}},
        {5, 3, -3, {3}},         {5, 3, -2, {3, 1}},
        {5, 3, -1, {3, 1, 1}},   {5, 3, 0, {2, 2, 2}},
        {5, 3, 1, {2, 2, 2, 1}}, {5, 4, -12, {-1, -1, -1, -1}},
        {5, 4, -11, {-2, -1}},   {5, 4, -10, {-2, -1, 1}},
        {5, 4, -9, {-2, -1, 1, 1}}, {5, 4, -8, {-2, 2}},
        {5, 4, -7, {-2, 2, 1}},  {5, 4, -6, {-2, 2, 1, 1}},
        {5, 4, -5, {3, -1, 1}},  {5, 4, -4, {3, -1, 1, 1}},
        {5, 4, -3, {3, 2}},      {5, 4, -2, {3, 2, 1}},
        {5, 4, -1, {3, 2, 1, 1}}, {5, 4, 0, {2, 2, 2, 2}},
        // r = 6
        {6, 0, 0, {}},           {6, 0, 1, {1}},
        {6, 0, 2, {1, 1}},       {6, 0, 3, {1, 1, 1}},
        {6, 0, 4, {1, 1, 1, 1}}, {6, 0, 5, {1, 1, 1, 1, 1}},
        {6, 1, -3, {-1}},        {6, 1, -2, {-1, 1}},
        {6, 1, -1, {-1, 1, 1}},  {6, 1, 0, {2}},
        {6, 1, 1, {2, 1}},       {6, 1, 2, {2, 1, 1}},
        {6, 1, 3, {2, 1, 1, 1}}, {6, 1, 4, {2, 1, 1, 1, 1}},
        {6, 2, -6, {-1, -1}},    {6, 2, -5, {-1, -1, 1}},
        {6, 2, -4, {-1, -1, 1, 1}}, {6, 2, -3, {2, -1}},
        {6, 2, -2, {2, -1, 1}},  {6, 2, -1, {2, -1, 1, 1}},
        {6, 2, 0, {2, 2}},       {6, 2, 1, {2, 2, 1}},
        {6, 2, 2, {2, 2, 1, 1}}, {6, 2, 3, {2, 2, 1, 1, 1}},
        {6, 3, -9, {-1, -1, -1}}, {6, 3, -8, {-2}},
        {6, 3, -7, {-2, 1}},     {6, 3, -6, {-2, 1, 1}},
        {6, 3, -5, {-2, 1, 1, 1}}, {6, 3, -4, {-2, 1, 1, 1, 1}},
        {6, 3, -3, {3}},         {6, 3, -2, {3, 1}},
        {6, 3, -1, {3, 1, 1}},   {6, 3, 0, {2, 2, 2}},
        {6, 3, 1, {2, 2, 2, 1}}, {6, 3, 2, {2, 2, 2, 1, 1}},
        {6, 4, -12, {-1, -1, -1, -1}}, {6, 4, -11, {-2, -1}},
        {6, 4, -10, {-2, -1, 1}}, {6, 4, -9, {-2, -1, 1, 1}},
        {6, 4, -8, {-2, 2}},     {6, 4, -7, {-2, 2, 1}},
        {6, 4, -6, {-2, 2, 1, 1}}, {6, 4, -5, {3, -1, 1}},
        {6, 4, -4, {3, -1, 1, 1}}, {6, 4, -3, {3, 2}},
        {6, 4, -2, {3, 2, 1}},   {6, 4, -1, {3, 2, 1, 1}},
        {6, 4, 0, {2, 2, 2, 2}}, {6, 4, 1, {2, 2, 2, 2, 1}},
        {6, 5, -12, {-2, -1, -1, 1, 1}}, {6, 5, -11, {-2, -1, 2}},
        {6, 5, -10, {-2, -1, 2, 1}}, {6, 5, -9, {-2, -1, 2, 1, 1}},
        {6, 5, -8, {-2, 2, 2}},  {6, 5, -7, {-2, 2, 2, 1}},
        {6, 5, -6, {-2, 2, 2, 1, 1}}, {6, 5, -5, {3, 2, -1, 1}},
        {6, 5, -4, {3, 2, -1, 1, 1}}, {6, 5, -3, {3, 2, 2}},
        {6, 5, -2, {3, 2, 2, 1}}, {6, 5, -1, {3, 2, 2, 1, 1}},
        {6, 5, 0, {2, 2, 2, 2, 2}}, {6, 6, -15, {-3}},
        {6, 6, -14, {-3, 1}},    {6, 6, -13, {-3, 1, 1}},
    };
    return t;
}

inline const SCert* s_certificate(std::int64_t r, std::int64_t coef, std::int64_t off) {
    for (const auto& c : s_certificates())
        if (c.r == r && c.coef == coef && c.off == off) return &c;
    return nullptr;
}

// interval dispatch: for residues in [lo, hi] pick s from the listed runs
struct DispatchRow {
    std::int64_t r;
    Lin lo, hi;
    std::vector<SRange> sets;  // r field repeated for serialization symmetry
    friend bool operator==(const DispatchRow&, const DispatchRow&) = default;
};

inline const std::vector<DispatchRow>& dispatch_table() {
    static const std::vector<DispatchRow> t = {
        {4, {0, 0}, {1, -4}, {{4, 0, 0, 3}}},
        {4, {1, -3}, {2, -7}, {{4, 1, -3, 2}}},
        {4, {2, -6}, {2, -5}, {{4, 2, -6, -5}}},
        {4, {2, -4}, {2, -4}, {{4, 1, -1, 2}}},
        {4, {2, -3}, {3, -10}, {{4, 2, -5, -5}, {4, 2, -3, -2}, {4, 2, 0, 1}}},
        {4, {3, -9}, {3, -4}, {{4, 3, -9, -6}}},
        {4, {3, -3}, {4, -9}, {{4, 3, -3, 0}}},
        {5, {0, 0}, {1, -4}, {{5, 0, 0, 4}}},
        {5, {1, -3}, {2, -7}, {{5, 1, -3, 3}}},
        {5, {2, -6}, {3, -10}, {{5, 2, -6, 2}}},
        {5, {3, -9}, {4, -11}, {{5, 3, -9, -5}, {5, 3, -3, 1}}},
        {5, {4, -12}, {5, -11}, {{5, 4, -12, 0}}},
        {6, {0, 0}, {1, -4}, {{6, 0, 0, 5}}},
        {6, {1, -3}, {2, -7}, {{6, 1, -3, 4}}},
        {6, {2, -6}, {3, -10}, {{6, 2, -6, 3}}},
        {6, {3, -9}, {4, -11}, {{6, 3, -9, 2}}},
        {6, {4, -12}, {5, -11}, {{6, 4, -12, 1}}},
        // the printed dispatch for this interval omits the j = 2 (mod 6)
        // residues 5m-10 and 5m-4, which are representable; the full run
        // is used so that every class has a candidate
        {6, {5, -12}, {6, -16}, {{6, 5, -12, 0}}},
        {6, {6, -15}, {6, -13}, {{6, 6, -15, -13}}},
    };
    return t;
}

// lower-bound witnesses for r in {4, 5, 6} (blocked value at one fewer slot)
struct SmallRWitness {
    std::int64_t r;
    std::int64_t m_mod;   // residue of m that selects the row, -1 = default
    Lin target;
};

inline const std::vector<SmallRWitness>& small_r_witnesses() {
    static const std::vector<SmallRWitness> t = {
        {4, 3, {2, -4}},   // m = 3 (mod 4)
        {4, -1, {1, -4}},  // other m
        {5, -1, {1, -4}},
        {6, -1, {1, -4}},
    };
    return t;
}

inline Lin small_r_witness(std::int64_t r, std::int64_t m) {
    const SmallRWitness* fallback = nullptr;
    for (const auto& w : small_r_witnesses()) {
        if (w.r != r) continue;
        if (w.m_mod >= 0 && m % r == w.m_mod) return w.target;
        if (w.m_mod < 0) fallback = &w;
    }
    if (!fallback) throw argument_error("no stored witness for r = " + std::to_string(r));
    return fallback->target;
}

}  // namespace gonal
