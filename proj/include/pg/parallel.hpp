#pragma once

// Parallel classes of lines, orthogonality of classes, maximum pairwise
// orthogonal families, and the counting identities attached to them.

#include <optional>
#include <stdexcept>
#include <vector>

#include "pg/cliques.hpp"
#include "pg/graph.hpp"
#include "pg/incidence.hpp"

namespace pg {

/// A set of pairwise disjoint lines partitioning the point set.
struct ParallelClass {
    std::vector<int> line_indices;  // sorted ascending
    bool operator==(const ParallelClass&) const = default;
};

/// Pairwise orthogonal parallel classes (every two share exactly one line),
/// with per-line membership multiplicities k_i.
struct OrthogonalFamily {
    std::vector<ParallelClass> classes;
    std::vector<int> multiplicities;  // size b, k_i per line

    int m() const { return static_cast<int>(classes.size()); }
};

/// Vertices = lines, adjacency = empty intersection.
inline Graph disjointness_graph(const IncidenceStructure& S) {
    Graph g(S.b());
    for (int a = 0; a < S.b(); ++a)
        for (int b = a + 1; b < S.b(); ++b) {
            std::vector<int> inter;
            std::set_intersection(S.lines[a].begin(), S.lines[a].end(),
                                  S.lines[b].begin(), S.lines[b].end(),
                                  std::back_inserter(inter));
            if (inter.empty()) g.add_edge(a, b);
        }
    return g;
}

/// All parallel classes, found as cliques of size v/(s+1) in the disjointness
/// graph and validated as point-set partitions. Lexicographic order.
inline std::vector<ParallelClass> all_parallel_classes(const IncidenceStructure& S,
                                                       int threads = 1) {
    PgVerdict ver = verify_pg(S);
    if (!ver.is_pg)
        throw std::invalid_argument("all_parallel_classes: not a pg: " + ver.violation);
    int lineSize = ver.s + 1;
    if (S.v % lineSize != 0)
        throw std::invalid_argument("all_parallel_classes: (s+1) does not divide v");
    int classSize = S.v / lineSize;
    Graph dis = disjointness_graph(S);
    CliqueQuery q;
    q.target_size = classSize;
    q.mode = CliqueMode::enumerate_all;
    q.threads = threads;
    CliqueResult res = enumerate_cliques(dis, q);
    std::vector<ParallelClass> out;
    out.reserve(res.cliques.size());
    for (auto& c : res.cliques) {
        std::vector<int8_t> covered(static_cast<size_t>(S.v), 0);
        int total = 0;
        for (int li : c)
            for (int p : S.lines[li]) {
                if (!covered[p]) ++total;
                covered[p] = 1;
            }
        if (total != S.v)
            throw std::logic_error("disjoint clique fails to cover the point set");
        out.push_back(ParallelClass{std::move(c)});
    }
    return out;
}

/// Vertices = classes, adjacency = sharing exactly one line.
inline Graph orthogonality_graph(const std::vector<ParallelClass>& classes) {
    Graph g(static_cast<int>(classes.size()));
    for (size_t a = 0; a < classes.size(); ++a)
        for (size_t b = a + 1; b < classes.size(); ++b) {
            std::vector<int> inter;
            std::set_intersection(classes[a].line_indices.begin(),
                                  classes[a].line_indices.end(),
                                  classes[b].line_indices.begin(),
                                  classes[b].line_indices.end(),
                                  std::back_inserter(inter));
            if (inter.size() == 1) g.add_edge(static_cast<int>(a), static_cast<int>(b));
        }
    return g;
}

/// Packages selected classes with multiplicities and enforces the family
/// invariants: pairwise orthogonality and the two counting identities
/// sum k_i = m(q+1) and sum k_i(k_i - 1) = m(m-1).
inline OrthogonalFamily make_orthogonal_family(const IncidenceStructure& S,
                                               std::vector<ParallelClass> classes) {
    OrthogonalFamily f;
    f.classes = std::move(classes);
    f.multiplicities.assign(static_cast<size_t>(S.b()), 0);
    long long m = f.m();
    for (size_t a = 0; a < f.classes.size(); ++a) {
        for (int li : f.classes[a].line_indices) ++f.multiplicities[li];
        for (size_t b = a + 1; b < f.classes.size(); ++b) {
            std::vector<int> inter;
            std::set_intersection(f.classes[a].line_indices.begin(),
                                  f.classes[a].line_indices.end(),
                                  f.classes[b].line_indices.begin(),
                                  f.classes[b].line_indices.end(),
                                  std::back_inserter(inter));
            if (inter.size() != 1)
                throw std::invalid_argument("classes are not pairwise orthogonal");
        }
    }
    long long sum = 0, sumPairs = 0;
    for (int k : f.multiplicities) {
        sum += k;
        sumPairs += static_cast<long long>(k) * (k - 1);
    }
    if (m > 0) {
        long long classSize = static_cast<long long>(f.classes[0].line_indices.size());
        if (sum != m * classSize || sumPairs != m * (m - 1))
            throw std::logic_error("orthogonal family counting identities violated");
    }
    return f;
}

/// Upper bound of the orthogonality theorem: d(dd'-d'+1) on the primal side,
/// d'(d'd-d+1) on the dual side.
enum class BoundSide { primal, dual };

inline long long theorem1_bound(const PgParams& p, BoundSide side) {
    long long d = p.d, dp = p.dPrime;
    return side == BoundSide::primal ? d * (d * dp - dp + 1) : dp * (dp * d - d + 1);
}

/// Maximum set of pairwise orthogonal parallel classes, as the lexicographically
/// least maximum clique of the orthogonality graph over all classes.
inline OrthogonalFamily max_orthogonal_family(const IncidenceStructure& S,
                                              int threads = 1) {
    std::vector<ParallelClass> classes = all_parallel_classes(S, threads);
    if (classes.empty())
        throw std::invalid_argument("max_orthogonal_family: no parallel classes");
    Graph orth = orthogonality_graph(classes);
    std::vector<int> pick = max_clique(orth);
    std::vector<ParallelClass> chosen;
    chosen.reserve(pick.size());
    for (int i : pick) chosen.push_back(classes[i]);
    return make_orthogonal_family(S, std::move(chosen));
}

/// True iff the family meets the primal bound for p, in which case every line
/// must appear in exactly p.d classes (asserted).
inline bool check_tightness(const OrthogonalFamily& f, const PgParams& p) {
    if (f.m() != theorem1_bound(p, BoundSide::primal)) return false;
    for (int k : f.multiplicities)
        if (k != p.d)
            throw std::logic_error("bound met but some line is not in exactly d classes");
    return true;
}

}  // namespace pg
