#pragma once

// Projective planes, maximal arcs and their duals, and the arc-to-partial-
// geometry construction together with pencil-derived orthogonal families.

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pg/incidence.hpp"
#include "pg/parallel.hpp"

namespace pg {

/// GF(2^k) for k = 1..4 with fixed primitive polynomials
/// x^2+x+1, x^3+x+1, x^4+x+1. Elements are bit patterns 0..2^k-1.
class GF2k {
  public:
    explicit GF2k(int order) : q_(order) {
        switch (order) {
            case 2: k_ = 1; poly_ = 0b11; break;
            case 4: k_ = 2; poly_ = 0b111; break;
            case 8: k_ = 3; poly_ = 0b1011; break;
            case 16: k_ = 4; poly_ = 0b10011; break;
            default: throw std::invalid_argument("GF2k: order must be 2, 4, 8 or 16");
        }
    }

    int order() const { return q_; }
    int add(int a, int b) const { return a ^ b; }
    int mul(int a, int b) const {
        int r = 0;
        while (b) {
            if (b & 1) r ^= a;
            b >>= 1;
            a <<= 1;
            if (a & q_) a ^= poly_;
        }
        return r;
    }

  private:
    int q_, k_, poly_;
};

struct ProjectivePlane {
    int q = 0;
    IncidenceStructure structure;
};

struct MaximalArc {
    const ProjectivePlane* plane = nullptr;
    std::vector<int> points;  // sorted point indices
    int degree = 0;
};

/// Returns q iff S satisfies all projective plane axioms: v = b = q^2+q+1,
/// uniform line size q+1, uniform point degree q+1, two points on exactly one
/// line and two lines meeting in exactly one point.
inline std::optional<int> verify_plane(const IncidenceStructure& S,
                                       std::string* why = nullptr) {
    auto refuse = [&](const std::string& m) {
        if (why) *why = m;
        return std::nullopt;
    };
    S.validate();
    if (S.v < 7 || S.v != S.b()) return refuse("v != b or too small");
    if (S.lines[0].empty()) return refuse("empty line");
    int q = static_cast<int>(S.lines[0].size()) - 1;
    if (S.v != q * q + q + 1) return refuse("v != q^2+q+1");
    std::vector<int> degree(S.v, 0);
    for (int j = 0; j < S.b(); ++j) {
        if (static_cast<int>(S.lines[j].size()) != q + 1)
            return refuse("line " + std::to_string(j) + " has wrong size");
        for (int p : S.lines[j]) ++degree[p];
    }
    for (int p = 0; p < S.v; ++p)
        if (degree[p] != q + 1)
            return refuse("point " + std::to_string(p) + " has wrong degree");
    std::vector<Bitset> lineBits;
    lineBits.reserve(S.b());
    for (const Line& l : S.lines) {
        Bitset b(S.v);
        for (int p : l) b.set(p);
        lineBits.push_back(std::move(b));
    }
    for (int a = 0; a < S.b(); ++a)
        for (int b = a + 1; b < S.b(); ++b)
            if (lineBits[a].and_count(lineBits[b]) != 1)
                return refuse("lines " + std::to_string(a) + "," + std::to_string(b) +
                              " do not meet in one point");
    // two points on exactly one line follows from counting: every pair of the
    // v points lies on at least... check directly anyway
    std::vector<std::vector<int>> pairLine(S.v, std::vector<int>(S.v, 0));
    for (const Line& l : S.lines)
        for (size_t x = 0; x < l.size(); ++x)
            for (size_t y = x + 1; y < l.size(); ++y) {
                if (++pairLine[l[x]][l[y]] > 1)
                    return refuse("points " + std::to_string(l[x]) + "," +
                                  std::to_string(l[y]) + " on two lines");
            }
    for (int x = 0; x < S.v; ++x)
        for (int y = x + 1; y < S.v; ++y)
            if (pairLine[x][y] != 1)
                return refuse("points " + std::to_string(x) + "," + std::to_string(y) +
                              " on no line");
    if (why) why->clear();
    return q;
}

namespace detail {

/// Homogeneous coordinate triples over GF(q), normalized so the last nonzero
/// coordinate is 1, enumerated in lexicographic order of (a, b, c).
inline std::vector<std::array<int, 3>> pg2_points(int q) {
    std::vector<std::array<int, 3>> pts;
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            for (int c = 0; c < q; ++c) {
                if (a == 0 && b == 0 && c == 0) continue;
                // normalized: last nonzero coordinate equals 1
                int last = c != 0 ? c : (b != 0 ? b : a);
                if (last == 1) pts.push_back({a, b, c});
            }
    return pts;
}

}  // namespace detail

/// PG(2,q) over GF(q) for q in {2,4,8,16}. Point i and line i carry the same
/// normalized coordinate triple; incidence is a vanishing dot product.
inline ProjectivePlane desarguesian_plane(int q) {
    GF2k f(q);
    auto coords = detail::pg2_points(q);
    int n = q * q + q + 1;
    if (static_cast<int>(coords.size()) != n)
        throw std::logic_error("point enumeration size mismatch");
    ProjectivePlane plane;
    plane.q = q;
    plane.structure.v = n;
    plane.structure.lines.resize(n);
    for (int j = 0; j < n; ++j) {
        const auto& u = coords[j];
        for (int i = 0; i < n; ++i) {
            const auto& p = coords[i];
            int dot = f.add(f.add(f.mul(u[0], p[0]), f.mul(u[1], p[1])),
                            f.mul(u[2], p[2]));
            if (dot == 0) plane.structure.lines[j].push_back(i);
        }
    }
    std::string why;
    if (!verify_plane(plane.structure, &why))
        throw std::logic_error("generated plane failed verification: " + why);
    return plane;
}

/// Coordinate triples of the generated plane, index-aligned with its points.
inline std::vector<std::array<int, 3>> plane_coordinates(const ProjectivePlane& p) {
    return detail::pg2_points(p.q);
}

/// Returns the arc degree d iff pts meets every line in 0 or exactly d >= 2
/// points; otherwise a refusal naming a witnessing line.
inline std::optional<int> verify_arc(const ProjectivePlane& P, const std::vector<int>& pts,
                                     std::string* why = nullptr) {
    auto refuse = [&](const std::string& m) {
        if (why) *why = m;
        return std::nullopt;
    };
    std::vector<int8_t> inArc(static_cast<size_t>(P.structure.v), 0);
    for (int p : pts) inArc[p] = 1;
    int d = 0;
    for (int j = 0; j < P.structure.b(); ++j) {
        int hit = 0;
        for (int p : P.structure.lines[j])
            if (inArc[p]) ++hit;
        if (hit == 0) continue;
        if (d == 0) d = hit;
        if (hit != d)
            return refuse("line " + std::to_string(j) + " meets arc in " +
                          std::to_string(hit) + " points, expected 0 or " +
                          std::to_string(d));
    }
    if (d < 2) return refuse("intersection degree below 2");
    if (P.q % d != 0) return refuse("degree does not divide the plane order");
    if (why) why->clear();
    return d;
}

/// The conic {(t^2, t, 1)} plus (1,0,0) and (0,1,0): a regular hyperoval of
/// size q+2 in the generated Desarguesian plane.
inline MaximalArc regular_hyperoval(const ProjectivePlane& P) {
    GF2k f(P.q);
    auto coords = plane_coordinates(P);
    auto index_of = [&](std::array<int, 3> c) {
        auto it = std::find(coords.begin(), coords.end(), c);
        if (it == coords.end()) throw std::logic_error("coordinate not found");
        return static_cast<int>(it - coords.begin());
    };
    std::vector<int> pts;
    for (int t = 0; t < P.q; ++t) pts.push_back(index_of({f.mul(t, t), t, 1}));
    pts.push_back(index_of({1, 0, 0}));
    pts.push_back(index_of({0, 1, 0}));
    std::sort(pts.begin(), pts.end());
    std::string why;
    auto d = verify_arc(P, pts, &why);
    if (!d || *d != 2)
        throw std::logic_error("regular hyperoval failed arc verification: " + why);
    return MaximalArc{&P, std::move(pts), 2};
}

/// The dual plane, with point i = line i of P.
inline ProjectivePlane dual_plane(const ProjectivePlane& P) {
    ProjectivePlane D;
    D.q = P.q;
    D.structure = dual(P.structure);
    return D;
}

/// Indices of the lines of P disjoint from the arc; a maximal arc of degree
/// q/d in the dual plane. The caller owns dualP, which must be dual_plane(*A.plane).
inline MaximalArc dual_arc(const MaximalArc& A, const ProjectivePlane& dualP) {
    const ProjectivePlane& P = *A.plane;
    std::vector<int8_t> inArc(static_cast<size_t>(P.structure.v), 0);
    for (int p : A.points) inArc[p] = 1;
    std::vector<int> pts;
    for (int j = 0; j < P.structure.b(); ++j) {
        bool hit = false;
        for (int p : P.structure.lines[j])
            if (inArc[p]) { hit = true; break; }
        if (!hit) pts.push_back(j);
    }
    int dPrime = P.q / A.degree;
    std::string why;
    auto d = verify_arc(dualP, pts, &why);
    if (!d || *d != dPrime)
        throw std::logic_error("dual arc failed verification: " + why);
    return MaximalArc{&dualP, std::move(pts), dPrime};
}

/// Output of the arc-to-geometry construction with the index maps back into
/// the plane (needed to compare pencil families against line indexings).
struct ArcGeometry {
    IncidenceStructure geometry;
    std::vector<int> pointOfPlanePoint;  // plane point -> geometry point or -1
    std::vector<int> lineOfPlaneLine;    // plane line -> geometry line or -1
    std::vector<int> planePointOfPoint;  // geometry point -> plane point
    std::vector<int> planeLineOfLine;    // geometry line -> plane line
    PgParams params;
};

/// Points: plane points off the arc; lines: restrictions of the secant lines.
/// Dense re-indexing preserves the plane order on both sides.
inline ArcGeometry construction1(const ProjectivePlane& P, const MaximalArc& A) {
    std::string why;
    auto dOpt = verify_arc(P, A.points, &why);
    if (!dOpt) throw std::invalid_argument("construction1: invalid arc: " + why);
    int d = *dOpt;
    int q = P.q;
    ArcGeometry out;
    out.pointOfPlanePoint.assign(static_cast<size_t>(P.structure.v), -1);
    std::vector<int8_t> inArc(static_cast<size_t>(P.structure.v), 0);
    for (int p : A.points) inArc[p] = 1;
    for (int p = 0; p < P.structure.v; ++p)
        if (!inArc[p]) {
            out.pointOfPlanePoint[p] = static_cast<int>(out.planePointOfPoint.size());
            out.planePointOfPoint.push_back(p);
        }
    out.geometry.v = static_cast<int>(out.planePointOfPoint.size());
    out.lineOfPlaneLine.assign(static_cast<size_t>(P.structure.b()), -1);
    for (int j = 0; j < P.structure.b(); ++j) {
        int hit = 0;
        for (int p : P.structure.lines[j])
            if (inArc[p]) ++hit;
        if (hit != d) continue;
        Line restricted;
        for (int p : P.structure.lines[j])
            if (!inArc[p]) restricted.push_back(out.pointOfPlanePoint[p]);
        out.lineOfPlaneLine[j] = static_cast<int>(out.geometry.lines.size());
        out.planeLineOfLine.push_back(j);
        out.geometry.lines.push_back(std::move(restricted));
    }
    PgVerdict ver = verify_pg(out.geometry);
    if (!ver.is_pg)
        throw std::logic_error("construction1 output is not a pg: " + ver.violation);
    auto params = params_from_qd(q, d);
    if (ver.s != params.s || ver.t != params.t || ver.alpha != params.alpha)
        throw std::logic_error("construction1 parameters disagree with q, d");
    out.params = params;
    return out;
}

/// One parallel class per arc point: the q+1 pencil lines through it,
/// restricted to the geometry. Meets the primal bound with tightness.
inline OrthogonalFamily pencil_orthogonal_family(const ProjectivePlane& P,
                                                 const MaximalArc& A,
                                                 const ArcGeometry& G) {
    std::vector<std::vector<int>> throughPoint(P.structure.v);
    for (int j = 0; j < P.structure.b(); ++j)
        for (int p : P.structure.lines[j]) throughPoint[p].push_back(j);
    std::vector<ParallelClass> classes;
    classes.reserve(A.points.size());
    for (int x : A.points) {
        ParallelClass c;
        for (int j : throughPoint[x]) {
            int li = G.lineOfPlaneLine[j];
            if (li < 0)
                throw std::logic_error("pencil line through an arc point is not secant");
            c.line_indices.push_back(li);
        }
        std::sort(c.line_indices.begin(), c.line_indices.end());
        classes.push_back(std::move(c));
    }
    OrthogonalFamily fam = make_orthogonal_family(G.geometry, std::move(classes));
    if (!check_tightness(fam, G.params))
        throw std::logic_error("pencil family does not meet the orthogonality bound");
    return fam;
}

}  // namespace pg
