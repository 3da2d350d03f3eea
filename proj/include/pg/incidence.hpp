#pragma once

// Point-line incidence structures and partial geometry parameter arithmetic.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pg {

using Line = std::vector<int>;  // strictly sorted point indices

/// A finite incidence structure: points 0..v-1, lines as sorted point sets.
/// The line list order is the canonical line indexing.
struct IncidenceStructure {
    int v = 0;
    std::vector<Line> lines;

    int b() const { return static_cast<int>(lines.size()); }

    bool operator==(const IncidenceStructure&) const = default;

    /// Throws if a line is unsorted, has duplicates, or indexes out of range.
    void validate() const {
        for (const Line& l : lines) {
            for (size_t i = 0; i < l.size(); ++i) {
                if (l[i] < 0 || l[i] >= v)
                    throw std::invalid_argument("line point index out of range");
                if (i > 0 && l[i] <= l[i - 1])
                    throw std::invalid_argument("line not strictly sorted");
            }
        }
    }
};

/// Parameter bundle for a pg(s,t,alpha) arising from degrees d, d'.
struct PgParams {
    int d = 0, dPrime = 0;
    int s = 0, t = 0, alpha = 0;
    long long v = 0, b = 0;
    int q() const { return d * dPrime; }

    bool operator==(const PgParams&) const = default;
};

/// s = d(d'-1), t = d'(d-1), alpha = (d-1)(d'-1),
/// v = (s+1)(dd'+1), b = (t+1)(dd'+1).
inline PgParams params_from_dd(int d, int dPrime) {
    if (d < 2 || dPrime < 2)
        throw std::invalid_argument("params_from_dd requires d, d' >= 2");
    PgParams p;
    p.d = d;
    p.dPrime = dPrime;
    p.s = d * (dPrime - 1);
    p.t = dPrime * (d - 1);
    p.alpha = (d - 1) * (dPrime - 1);
    long long q1 = static_cast<long long>(d) * dPrime + 1;
    p.v = (p.s + 1) * q1;
    p.b = (p.t + 1) * q1;
    return p;
}

/// Same bundle expressed through the plane order: s = q-d, t = q(d-1)/d,
/// alpha = (q-d)(d-1)/d. Equals params_from_dd(d, q/d).
inline PgParams params_from_qd(int q, int d) {
    if (d < 2 || q <= d || q % d != 0)
        throw std::invalid_argument("params_from_qd requires d >= 2, d | q, q > d");
    return params_from_dd(d, q / d);
}

/// Recover (d, d') from pg parameters of the form s = d(d'-1), t = d'(d-1):
/// d = t - alpha + 1, d' = s - alpha + 1. Empty if the shape does not fit.
inline std::optional<PgParams> params_from_sta(int s, int t, int alpha) {
    int d = t - alpha + 1;
    int dPrime = s - alpha + 1;
    if (d < 2 || dPrime < 2) return std::nullopt;
    PgParams p = params_from_dd(d, dPrime);
    if (p.s != s || p.t != t || p.alpha != alpha) return std::nullopt;
    return p;
}

/// Outcome of exhaustive partial-geometry axiom verification.
struct PgVerdict {
    bool is_pg = false;
    int s = -1, t = -1, alpha = -1;
    std::string violation;  // empty iff is_pg
};

/// Checks the four partial geometry axioms exhaustively:
/// 1. two distinct points on at most one common line,
/// 2. uniform line size s+1 (s >= 1),
/// 3. uniform point degree t+1 (t >= 1),
/// 4. every non-incident point-line pair sees exactly alpha connecting lines.
inline PgVerdict verify_pg(const IncidenceStructure& S) {
    PgVerdict out;
    S.validate();
    if (S.v == 0 || S.lines.empty()) {
        out.violation = "empty structure";
        return out;
    }
    // axiom 2
    size_t lineSize = S.lines[0].size();
    for (int j = 0; j < S.b(); ++j) {
        if (S.lines[j].size() != lineSize) {
            out.violation = "axiom 2: line " + std::to_string(j) +
                            " has size " + std::to_string(S.lines[j].size()) +
                            " != " + std::to_string(lineSize);
            return out;
        }
    }
    if (lineSize < 2) {
        out.violation = "axiom 2: line size < 2 (s >= 1 required)";
        return out;
    }
    // axiom 3
    std::vector<int> degree(S.v, 0);
    for (const Line& l : S.lines)
        for (int p : l) ++degree[p];
    for (int p = 0; p < S.v; ++p) {
        if (degree[p] != degree[0]) {
            out.violation = "axiom 3: point " + std::to_string(p) + " has degree " +
                            std::to_string(degree[p]) + " != " + std::to_string(degree[0]);
            return out;
        }
    }
    if (degree[0] < 2) {
        out.violation = "axiom 3: point degree < 2 (t >= 1 required)";
        return out;
    }
    // axiom 1: pairwise point joins
    std::vector<std::vector<int>> throughPoint(S.v);
    for (int j = 0; j < S.b(); ++j)
        for (int p : S.lines[j]) throughPoint[p].push_back(j);
    for (int j = 0; j < S.b(); ++j) {
        const Line& l = S.lines[j];
        for (size_t a = 0; a < l.size(); ++a)
            for (size_t c = a + 1; c < l.size(); ++c) {
                const auto& ta = throughPoint[l[a]];
                const auto& tc = throughPoint[l[c]];
                std::vector<int> inter;
                std::set_intersection(ta.begin(), ta.end(), tc.begin(), tc.end(),
                                      std::back_inserter(inter));
                if (inter.size() > 1) {
                    out.violation = "axiom 1: points " + std::to_string(l[a]) + "," +
                                    std::to_string(l[c]) + " on " +
                                    std::to_string(inter.size()) + " lines";
                    return out;
                }
            }
    }
    int s = static_cast<int>(lineSize) - 1;
    int t = degree[0] - 1;
    // axiom 4
    std::vector<int8_t> onLine(static_cast<size_t>(S.v), 0);
    int alpha = -1;
    for (int j = 0; j < S.b(); ++j) {
        const Line& l = S.lines[j];
        for (int p : l) onLine[p] = 1;
        for (int p = 0; p < S.v; ++p) {
            if (onLine[p]) continue;
            int count = 0;
            for (int m : throughPoint[p]) {
                const Line& lm = S.lines[m];
                std::vector<int> inter;
                std::set_intersection(lm.begin(), lm.end(), l.begin(), l.end(),
                                      std::back_inserter(inter));
                if (!inter.empty()) ++count;
            }
            if (alpha < 0) alpha = count;
            if (count != alpha || count < 1) {
                out.violation = "axiom 4: point " + std::to_string(p) + ", line " +
                                std::to_string(j) + " sees " + std::to_string(count) +
                                " lines (alpha = " + std::to_string(alpha) + ")";
                return out;
            }
        }
        for (int p : l) onLine[p] = 0;
    }
    if (alpha < 1) {
        out.violation = "axiom 4: no non-incident point-line pair";
        return out;
    }
    out.is_pg = true;
    out.s = s;
    out.t = t;
    out.alpha = alpha;
    return out;
}

/// Dual structure: point i of the output is line i of the input, line j of the
/// output collects the input lines through input point j. dual(dual(S)) == S.
inline IncidenceStructure dual(const IncidenceStructure& S) {
    S.validate();
    IncidenceStructure D;
    D.v = S.b();
    D.lines.assign(static_cast<size_t>(S.v), {});
    for (int j = 0; j < S.b(); ++j)
        for (int p : S.lines[j]) D.lines[p].push_back(j);
    return D;  // fill order is ascending in j, so lines come out sorted
}

}  // namespace pg
