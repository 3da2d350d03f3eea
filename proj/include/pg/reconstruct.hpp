#pragma once

// Rebuilding a projective plane of order q = dd' from a partial geometry
// together with bound-meeting orthogonal families in it and its dual.

#include <stdexcept>
#include <string>
#include <vector>

#include "pg/arcs.hpp"
#include "pg/autiso.hpp"
#include "pg/incidence.hpp"
#include "pg/parallel.hpp"

namespace pg {

struct ReconstructionInput {
    IncidenceStructure G;
    OrthogonalFamily C;       // in G, size d(dd'-d'+1)
    OrthogonalFamily Cprime;  // in dual(G), size d'(d'd-d+1)
};

struct Reconstruction {
    ProjectivePlane plane;
    MaximalArc arc;      // the new points, degree d (references `plane`)
    MaximalArc dualArc;  // the new lines as dual-plane points, degree d'
    ProjectivePlane dualPlaneStorage;
};

/// Builds the plane: each line l of G becomes l* = points(l) + the classes of
/// C through l; each class of C' becomes the line of its q+1 labeling points.
/// New points sit after the v original points in C's order; new lines after
/// the b original lines in C''s order. The output is always verified.
inline Reconstruction reconstruct(const ReconstructionInput& input) {
    const IncidenceStructure& G = input.G;
    PgVerdict ver = verify_pg(G);
    if (!ver.is_pg)
        throw std::invalid_argument("reconstruct: G is not a pg: " + ver.violation);
    auto paramsOpt = params_from_sta(ver.s, ver.t, ver.alpha);
    if (!paramsOpt)
        throw std::invalid_argument("reconstruct: parameters not of the (d,d') form");
    PgParams p = *paramsOpt;
    PgParams pDualView = params_from_dd(p.dPrime, p.d);  // dual geometry's bundle
    if (!check_tightness(input.C, p))
        throw std::invalid_argument("reconstruct: C does not meet the primal bound");
    if (!check_tightness(input.Cprime, pDualView))
        throw std::invalid_argument("reconstruct: C' does not meet the dual bound");

    int q = p.q();
    int v = G.v, b = G.b();
    int m = input.C.m(), mPrime = input.Cprime.m();

    Reconstruction out;
    out.plane.q = q;
    IncidenceStructure& plane = out.plane.structure;
    plane.v = v + m;
    plane.lines.reserve(static_cast<size_t>(b) + mPrime);
    // membership of each G-line in the classes of C
    std::vector<std::vector<int>> classesOfLine(b);
    for (int i = 0; i < m; ++i)
        for (int li : input.C.classes[i].line_indices) classesOfLine[li].push_back(i);
    for (int li = 0; li < b; ++li) {
        Line lStar = G.lines[li];
        for (int i : classesOfLine[li]) lStar.push_back(v + i);
        plane.lines.push_back(std::move(lStar));  // class indices ascend past v
    }
    // lines from C': a class of dual lines is a set of G-point labels
    for (int i = 0; i < mPrime; ++i) {
        Line l = Line(input.Cprime.classes[i].line_indices.begin(),
                      input.Cprime.classes[i].line_indices.end());
        plane.lines.push_back(std::move(l));
    }
    std::string why;
    auto qOpt = verify_plane(plane, &why);
    if (!qOpt || *qOpt != q)
        throw std::invalid_argument("reconstruct: output fails plane axioms: " + why);

    // the new points form a degree-d maximal arc, the new lines its dual arc
    std::vector<int> arcPts(m);
    for (int i = 0; i < m; ++i) arcPts[i] = v + i;
    auto dOpt = verify_arc(out.plane, arcPts, &why);
    if (!dOpt || *dOpt != p.d)
        throw std::logic_error("reconstruct: new points are not a degree-d arc: " + why);
    out.arc = MaximalArc{&out.plane, std::move(arcPts), p.d};
    out.dualPlaneStorage = dual_plane(out.plane);
    out.dualArc = dual_arc(out.arc, out.dualPlaneStorage);
    if (out.dualArc.degree != p.dPrime)
        throw std::logic_error("reconstruct: dual arc degree mismatch");
    for (int j : out.dualArc.points)
        if (j < b) throw std::logic_error("reconstruct: dual arc contains an old line");
    return out;
}

/// Pencil family of the dual side, computed directly in the plane: one class
/// per line disjoint from the arc, holding the geometry points on that line.
/// Its classes live in dual(geometry) whose lines are indexed by G's points.
inline OrthogonalFamily dual_pencil_family(const ProjectivePlane& P, const MaximalArc& A,
                                           const ArcGeometry& G) {
    std::vector<int8_t> inArc(static_cast<size_t>(P.structure.v), 0);
    for (int p : A.points) inArc[p] = 1;
    std::vector<ParallelClass> classes;
    for (int j = 0; j < P.structure.b(); ++j) {
        bool hit = false;
        for (int p : P.structure.lines[j])
            if (inArc[p]) { hit = true; break; }
        if (hit) continue;
        ParallelClass c;
        for (int p : P.structure.lines[j]) c.line_indices.push_back(G.pointOfPlanePoint[p]);
        std::sort(c.line_indices.begin(), c.line_indices.end());
        classes.push_back(std::move(c));
    }
    IncidenceStructure dualGeom = dual(G.geometry);
    OrthogonalFamily fam = make_orthogonal_family(dualGeom, std::move(classes));
    PgParams dualParams = params_from_dd(G.params.dPrime, G.params.d);
    if (!check_tightness(fam, dualParams))
        throw std::logic_error("dual pencil family does not meet the bound");
    return fam;
}

/// True iff running the construction on (P, A), taking the pencil families on
/// both sides, and reconstructing yields a plane isomorphic to P.
inline bool roundtrip_check(const ProjectivePlane& P, const MaximalArc& A) {
    ArcGeometry G = construction1(P, A);
    ReconstructionInput input;
    input.G = G.geometry;
    input.C = pencil_orthogonal_family(P, A, G);
    input.Cprime = dual_pencil_family(P, A, G);
    Reconstruction rec = reconstruct(input);
    if (rec.plane.q != P.q) return false;
    return are_isomorphic(rec.plane.structure, P.structure);
}

}  // namespace pg
