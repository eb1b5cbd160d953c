#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "constructive.hpp"
#include "tables.hpp"

// Canonical serialization of the proof constants: one record per line,
// key=value fields, linear expressions written as <a>m<+/-b>. The committed
// copy lives at data/proof_tables.txt; emit_proof_constants() regenerates it
// byte-exactly and parse_proof_constants() reads it back, so the file both
// round-trips and stays diffable against the in-code tables.

namespace gonal {

struct ProofConstants {
    std::vector<GraphWalkEntry> graph;
    std::vector<R2CaseRow> r2_cases;
    std::vector<K3Row> k3_rows;
    std::vector<SRange> s_ranges;
    std::vector<SCert> s_certs;
    std::vector<DispatchRow> dispatch;
    // derived certificates: (m, n) -> unit args resp. (units, reps)
    std::map<std::pair<std::int64_t, std::int64_t>, std::vector<std::int64_t>> cert1;
    std::map<std::pair<std::int64_t, std::int64_t>,
             std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>>
        cert3;
};

namespace constants_detail {

inline std::string lin_str(const Lin& l) {
    std::string s = std::to_string(l.a) + "m";
    s += l.b < 0 ? "-" : "+";
    s += std::to_string(l.b < 0 ? -l.b : l.b);
    return s;
}

inline std::string list_str(const std::vector<std::int64_t>& v) {
    if (v.empty()) return "-";
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}

inline Lin parse_lin(const std::string& s, int line) {
    std::size_t mp = s.find('m');
    if (mp == std::string::npos || mp + 1 >= s.size())
        throw parse_error("line " + std::to_string(line) + ": bad linear term '" + s + "'");
    Lin l;
    l.a = std::stoll(s.substr(0, mp));
    l.b = std::stoll(s.substr(mp + 1));
    return l;
}

inline std::vector<std::int64_t> parse_list(const std::string& s) {
    std::vector<std::int64_t> out;
    if (s == "-") return out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        out.push_back(std::stoll(s.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

// field accessor over "key=value" tokens
inline std::string field(const std::vector<std::string>& toks, const std::string& key,
                         int line) {
    for (const std::string& t : toks) {
        if (t.size() > key.size() && t.compare(0, key.size(), key) == 0 &&
            t[key.size()] == '=')
            return t.substr(key.size() + 1);
    }
    throw parse_error("line " + std::to_string(line) + ": missing field '" + key + "'");
}

}  // namespace constants_detail

// derived certificate domains (also what the decomposers may consult)
namespace derived {

// residual (m, n) pairs of the r = 1 ladder: 10 <= m <= 14, k in 2..6 with
// m < k+9, k1 < T(k)-1
inline std::vector<std::pair<std::int64_t, std::int64_t>> cert1_domain() {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (std::int64_t m = 10; m <= 14; ++m)
        for (std::int64_t k = 2; k <= 6; ++k) {
            if (m >= k + 9) continue;
            for (std::int64_t k1 = 0; k1 < triangular(k) - 1; ++k1)
                out.push_back({m, (m - 2) * k1 + (m - 2 - k)});
        }
    return out;
}

// residual (m, n) pairs of the r = 3 blocked-set analysis for the stored
// audit range m in {14, 17, ..., 98}
inline std::vector<std::pair<std::int64_t, std::int64_t>> cert3_domain() {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (std::int64_t m = 14; m <= 98; m += 3) {
        for (const K3Row& row : k3_table()) {
            std::int64_t k3 = row.value.at(m);
            if (row.k <= 5) {
                for (std::int64_t k1 = 0; k1 < row.k - row.j0; ++k1)
                    out.push_back({m, 3 * (m - 2) * k1 + k3});
            } else {
                std::int64_t top = m == 14 ? 14 : 4;
                for (std::int64_t k1 = 0; k1 <= top; ++k1)
                    out.push_back({m, 3 * (m - 2) * k1 + k3});
            }
        }
    }
    return out;
}

}  // namespace derived

inline ProofConstants builtin_proof_constants() {
    ProofConstants pc;
    pc.graph = graph_walk_table();
    pc.r2_cases = r2_case_table();
    pc.k3_rows = k3_table();
    pc.s_ranges = s_ranges();
    pc.s_certs = s_certificates();
    pc.dispatch = dispatch_table();
    for (auto [m, n] : derived::cert1_domain())
        pc.cert1[{m, n}] = detail::r1_residual(GonalOrder(m), n);
    for (auto [m, n] : derived::cert3_domain()) {
        GonalOrder om(m);
        auto shape = theorem_shape(om, 3);
        const auto& ur = detail::r3_residual(om, n, shape.ell2);
        pc.cert3[{m, n}] = {ur.units, ur.reps};
    }
    return pc;
}

inline std::string emit_proof_constants(const ProofConstants& pc) {
    using constants_detail::lin_str;
    using constants_detail::list_str;
    std::ostringstream os;
    os << "# proof constants, format v1\n";
    os << "# linear terms are written Am+B or Am-B and instantiated per order m.\n";
    os << "# record kinds:\n";
    os << "#   graph C D d x        one representation of C(m-2)+D by d parts, last arg x\n";
    os << "#   t1 lo hi x d tail par   case row for the doubled-weight decomposer\n";
    os << "#   k3 value alpha j0 k  blocked residue value = 3(j0(m-2)-k)+alpha\n";
    os << "#   srange r coef lo hi  representable run {coef*m+j : lo<=j<=hi} below r(m-2)\n";
    os << "#   scert r s args       unit-slot certificate for s = coef*m+off\n";
    os << "#   tdisp r lo hi sets   interval dispatch onto representable runs\n";
    os << "#   cert1 m n args       derived residual certificate, unit weights\n";
    os << "#   cert3 m n units reps derived residual certificate, weights (1,1,3...)\n";
    os << "\n# backward-walk table (values near small multiples of m-2)\n";
    for (const auto& e : pc.graph)
        os << "graph " << e.C << " " << e.D << " " << e.depth << " " << e.step << "\n";
    os << "\n# case table for the doubled-weight decomposer\n";
    for (const auto& r : pc.r2_cases) {
        os << "t1 lo=" << lin_str(r.lo) << " hi=" << lin_str(r.hi) << " x=" << list_str(r.xs)
           << " d=" << r.tail.size() << " tail=" << list_str(r.tail) << " par="
           << (r.par == MParity::any ? "any" : r.par == MParity::odd ? "odd" : "even")
           << "\n";
    }
    os << "\n# blocked residues for the triple-weight decomposer (m = 2 mod 3)\n";
    for (const auto& r : pc.k3_rows)
        os << "k3 value=" << lin_str(r.value) << " alpha=" << lin_str(r.alpha)
           << " j0=" << r.j0 << " k=" << r.k << "\n";
    os << "\n# representable runs below r(m-2) for r-1 unit slots\n";
    for (const auto& r : pc.s_ranges)
        os << "srange r=" << r.r << " coef=" << r.coef << " lo=" << r.lo << " hi=" << r.hi
           << "\n";
    os << "\n# unit-slot certificates for the runs above\n";
    for (const auto& c : pc.s_certs)
        os << "scert r=" << c.r << " s=" << lin_str({c.coef, c.off})
           << " args=" << list_str(c.args) << "\n";
    os << "\n# interval dispatch for r in {4,5,6}\n";
    for (const auto& d : pc.dispatch) {
        os << "tdisp r=" << d.r << " lo=" << lin_str(d.lo) << " hi=" << lin_str(d.hi);
        for (const auto& seg : d.sets)
            os << " set=" << seg.coef << ":" << seg.lo << ":" << seg.hi;
        os << "\n";
    }
    os << "\n# derived residual certificates (unit weights)\n";
    for (const auto& [key, args] : pc.cert1)
        os << "cert1 m=" << key.first << " n=" << key.second << " args=" << list_str(args)
           << "\n";
    os << "\n# derived residual certificates (weights 1,1,3,...)\n";
    for (const auto& [key, ur] : pc.cert3)
        os << "cert3 m=" << key.first << " n=" << key.second
           << " units=" << list_str(ur.first) << " reps=" << list_str(ur.second) << "\n";
    return os.str();
}

inline ProofConstants parse_proof_constants(const std::string& text) {
    using namespace constants_detail;
    ProofConstants pc;
    std::istringstream is(text);
    std::string lineStr;
    int line = 0;
    while (std::getline(is, lineStr)) {
        ++line;
        if (lineStr.empty() || lineStr[0] == '#') continue;
        std::istringstream ls(lineStr);
        std::vector<std::string> toks;
        for (std::string t; ls >> t;) toks.push_back(t);
        if (toks.empty()) continue;
        const std::string& kind = toks[0];
        if (kind == "graph") {
            if (toks.size() != 5)
                throw parse_error("line " + std::to_string(line) + ": graph needs 4 fields");
            pc.graph.push_back({std::stoll(toks[1]), std::stoll(toks[2]),
                                std::stoll(toks[3]), std::stoll(toks[4])});
        } else if (kind == "t1") {
            R2CaseRow r;
            r.lo = parse_lin(field(toks, "lo", line), line);
            r.hi = parse_lin(field(toks, "hi", line), line);
            r.xs = parse_list(field(toks, "x", line));
            r.tail = parse_list(field(toks, "tail", line));
            std::string par = field(toks, "par", line);
            r.par = par == "any" ? MParity::any : par == "odd" ? MParity::odd : MParity::even;
            if (std::stoll(field(toks, "d", line)) != std::int64_t(r.tail.size()))
                throw parse_error("line " + std::to_string(line) + ": d != tail length");
            pc.r2_cases.push_back(std::move(r));
        } else if (kind == "k3") {
            K3Row r;
            r.value = parse_lin(field(toks, "value", line), line);
            r.alpha = parse_lin(field(toks, "alpha", line), line);
            r.j0 = std::stoll(field(toks, "j0", line));
            r.k = std::stoll(field(toks, "k", line));
            pc.k3_rows.push_back(r);
        } else if (kind == "srange") {
            pc.s_ranges.push_back({std::stoll(field(toks, "r", line)),
                                   std::stoll(field(toks, "coef", line)),
                                   std::stoll(field(toks, "lo", line)),
                                   std::stoll(field(toks, "hi", line))});
        } else if (kind == "scert") {
            SCert c;
            c.r = std::stoll(field(toks, "r", line));
            Lin s = parse_lin(field(toks, "s", line), line);
            c.coef = s.a;
            c.off = s.b;
            c.args = parse_list(field(toks, "args", line));
            pc.s_certs.push_back(std::move(c));
        } else if (kind == "tdisp") {
            DispatchRow d;
            d.r = std::stoll(field(toks, "r", line));
            d.lo = parse_lin(field(toks, "lo", line), line);
            d.hi = parse_lin(field(toks, "hi", line), line);
            for (const std::string& t : toks) {
                if (t.rfind("set=", 0) != 0) continue;
                std::string body = t.substr(4);
                std::size_t c1 = body.find(':');
                std::size_t c2 = body.find(':', c1 + 1);
                if (c1 == std::string::npos || c2 == std::string::npos)
                    throw parse_error("line " + std::to_string(line) + ": bad set field");
                d.sets.push_back({d.r, std::stoll(body.substr(0, c1)),
                                  std::stoll(body.substr(c1 + 1, c2 - c1 - 1)),
                                  std::stoll(body.substr(c2 + 1))});
            }
            pc.dispatch.push_back(std::move(d));
        } else if (kind == "cert1") {
            pc.cert1[{std::stoll(field(toks, "m", line)), std::stoll(field(toks, "n", line))}] =
                parse_list(field(toks, "args", line));
        } else if (kind == "cert3") {
            pc.cert3[{std::stoll(field(toks, "m", line)),
                      std::stoll(field(toks, "n", line))}] = {
                parse_list(field(toks, "units", line)),
                parse_list(field(toks, "reps", line))};
        } else {
            throw parse_error("line " + std::to_string(line) + ": unknown record kind '" +
                              kind + "'");
        }
    }
    return pc;
}

inline bool operator==(const ProofConstants& a, const ProofConstants& b) {
    return a.graph == b.graph && a.r2_cases == b.r2_cases && a.k3_rows == b.k3_rows &&
           a.s_ranges == b.s_ranges && a.s_certs == b.s_certs && a.dispatch == b.dispatch &&
           a.cert1 == b.cert1 && a.cert3 == b.cert3;
}

}  // namespace gonal
