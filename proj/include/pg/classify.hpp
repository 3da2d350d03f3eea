#pragma once

// Classification pipeline for the pg(4,6,3) geometries on the complement of
// the triangular graph T(10): build the compatibility graph of the 945
// perfect matchings of a 10-set, enumerate its 63-cliques (each one the line
// set of a partial geometry), fingerprint the stream, and split it into
// isomorphism classes with orbit-stabilizer accounting over S10.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "pg/autiso.hpp"
#include "pg/cliques.hpp"
#include "pg/gf2.hpp"
#include "pg/incidence.hpp"
#include "pg/parallel.hpp"
#include "pg/srg.hpp"

namespace pg {

/// The perfect matchings of {0..n-1} (maximum cliques of the T(n) complement,
/// n even), lexicographically ordered by their edge-index sequences; two
/// matchings are adjacent when they share at most one edge. n = 10 gives the
/// 945-vertex graph whose 63-cliques are the pg(4,6,3) line sets.
struct OmegaGraph {
    int points = 0;            // n
    int edges = 0;             // n(n-1)/2, the T(n) vertex count
    Graph graph;
    std::vector<std::vector<int>> matchings;  // sorted edge indices per vertex
    std::vector<uint64_t> edgeMask;           // edge membership, edges <= 64
    std::vector<std::vector<int>> edgeIndex;  // (i,j) -> T(n) vertex
    std::unordered_map<uint64_t, int> maskToVertex;

    /// Number of lines through each point when the matchings form a partial
    /// geometry line set: (t+1) for pg on the T(n) complement.
    int cover_degree() const { return (points / 2 - 1) * (points / 2 - 2) / 2 + 1; }
    /// Line-set size of such a partial geometry.
    int geometry_size() const { return edges * cover_degree() / (points / 2); }

    /// Vertex holding exactly the given edge set, or -1.
    int vertex_of_mask(uint64_t mask) const {
        auto it = maskToVertex.find(mask);
        return it == maskToVertex.end() ? -1 : it->second;
    }
};

inline OmegaGraph build_omega(int points = 10) {
    if (points < 4 || points % 2 != 0 || points > 11)
        throw std::invalid_argument("point count must be even, between 4 and 10");
    OmegaGraph omega;
    omega.points = points;
    omega.edges = points * (points - 1) / 2;
    omega.edgeIndex.assign(points, std::vector<int>(points, -1));
    int idx = 0;
    for (int i = 0; i < points; ++i)
        for (int j = i + 1; j < points; ++j) {
            omega.edgeIndex[i][j] = idx;
            omega.edgeIndex[j][i] = idx;
            ++idx;
        }
    // Enumerate matchings by repeatedly pairing the smallest unused point;
    // that order is already lexicographic in the edge-index sequences.
    std::vector<int> edges;
    std::vector<bool> used(points, false);
    std::function<void()> rec = [&]() {
        int first = 0;
        while (first < points && used[first]) ++first;
        if (first == points) {
            omega.matchings.push_back(edges);
            return;
        }
        used[first] = true;
        for (int second = first + 1; second < points; ++second) {
            if (used[second]) continue;
            used[second] = true;
            edges.push_back(omega.edgeIndex[first][second]);
            rec();
            edges.pop_back();
            used[second] = false;
        }
        used[first] = false;
    };
    rec();
    if (!std::is_sorted(omega.matchings.begin(), omega.matchings.end()))
        throw std::logic_error("matching order is off");
    int n = static_cast<int>(omega.matchings.size());
    omega.edgeMask.reserve(n);
    for (int v = 0; v < n; ++v) {
        uint64_t mask = 0;
        for (int e : omega.matchings[v]) mask |= uint64_t(1) << e;
        omega.edgeMask.push_back(mask);
        omega.maskToVertex.emplace(mask, v);
    }
    omega.graph = Graph(n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (std::popcount(omega.edgeMask[a] & omega.edgeMask[b]) <= 1)
                omega.graph.add_edge(a, b);
    return omega;
}

namespace detail {

/// Exact-cover pruning usable with the generic clique engine: a full line
/// set covers every edge exactly cover_degree() times, so a branch dies as
/// soon as some edge has fewer remaining candidate lines than its deficit.
class EdgeCoverFilter : public ExtensionFilter {
  public:
    explicit EdgeCoverFilter(const OmegaGraph& omega)
        : omega_(&omega), count_(omega.edges, 0) {
        int n = omega.graph.n();
        throughEdge_.assign(omega.edges, Bitset(n));
        for (int v = 0; v < n; ++v)
            for (int e : omega.matchings[v]) throughEdge_[e].set(v);
    }

    bool push(int v) override {
        bool ok = true;
        for (int e : omega_->matchings[v])
            if (++count_[e] > omega_->cover_degree()) ok = false;
        return ok;
    }
    void pop(int v) override {
        for (int e : omega_->matchings[v]) --count_[e];
    }
    bool feasible(int chosen, const Bitset& candidates) override {
        (void)chosen;
        for (int e = 0; e < omega_->edges; ++e) {
            int need = omega_->cover_degree() - count_[e];
            if (need > 0 && throughEdge_[e].and_count(candidates) < need)
                return false;
        }
        return true;
    }
    std::unique_ptr<ExtensionFilter> clone() const override {
        return std::make_unique<EdgeCoverFilter>(*this);
    }

  private:
    const OmegaGraph* omega_;
    std::vector<Bitset> throughEdge_;
    std::vector<int> count_;
};

/// Exact-cover search for the full line sets: binary branching on a line
/// through the tightest uncovered edge (fewest available candidates). When an
/// edge has exactly as many candidates as it still needs, the exclusion
/// branch is skipped — every such line is forced. Much faster on the dense
/// matching graph than ascending-vertex clique search.
struct GeometrySearch {
    const OmegaGraph& omega;
    const std::function<void(const std::vector<int>&)>& sink;
    int coverDegree;
    int targetSize;
    std::vector<Bitset> throughEdge;
    std::vector<int> count;
    std::vector<int> chosen;
    long long total = 0;

    GeometrySearch(const OmegaGraph& o,
                   const std::function<void(const std::vector<int>&)>& s)
        : omega(o),
          sink(s),
          coverDegree(o.cover_degree()),
          targetSize(o.geometry_size()),
          count(o.edges, 0) {
        int n = omega.graph.n();
        throughEdge.assign(omega.edges, Bitset(n));
        for (int v = 0; v < n; ++v)
            for (int e : omega.matchings[v]) throughEdge[e].set(v);
    }

    void run() {
        Bitset all(omega.graph.n());
        for (int v = 0; v < omega.graph.n(); ++v) all.set(v);
        recurse(all);
    }

    void recurse(const Bitset& candidates) {
        if (static_cast<int>(chosen.size()) == targetSize) {
            ++total;
            if (sink) {
                std::vector<int> clique = chosen;
                std::sort(clique.begin(), clique.end());
                sink(clique);
            }
            return;
        }
        int branchEdge = -1, branchAvail = 0;
        bool forced = false;
        for (int e = 0; e < omega.edges; ++e) {
            int need = coverDegree - count[e];
            if (need <= 0) continue;
            int avail = throughEdge[e].and_count(candidates);
            if (avail < need) return;
            if (avail == need) {
                branchEdge = e;
                branchAvail = avail;
                forced = true;
                break;
            }
            if (branchEdge < 0 || avail < branchAvail) {
                branchEdge = e;
                branchAvail = avail;
            }
        }
        // every edge saturated forces |chosen| = targetSize already
        if (branchEdge < 0)
            throw std::logic_error("cover saturated below target size");

        Bitset through = throughEdge[branchEdge];
        through.and_with(candidates);
        int v = through.first();

        // include v, unless it would overshoot some edge's cover degree
        bool fits = true;
        for (int e : omega.matchings[v])
            if (count[e] >= coverDegree) { fits = false; break; }
        if (fits) {
            for (int e : omega.matchings[v]) ++count[e];
            chosen.push_back(v);
            Bitset next = candidates;
            next.and_with(omega.graph.neighbors(v));
            next.reset(v);
            recurse(next);
            chosen.pop_back();
            for (int e : omega.matchings[v]) --count[e];
        }

        // exclude v (impossible when the branch edge was tight)
        if (!forced) {
            Bitset rest = candidates;
            rest.reset(v);
            recurse(rest);
        }
    }
};

}  // namespace detail

/// Line set of a clique as an incidence structure: the T(n) vertices
/// (2-subsets of {0..n-1} in lexicographic order) become points, the chosen
/// matchings become lines.
inline IncidenceStructure clique_to_structure(const OmegaGraph& omega,
                                              const std::vector<int>& clique) {
    IncidenceStructure S;
    S.v = omega.edges;
    S.lines.reserve(clique.size());
    for (int v : clique)
        S.lines.emplace_back(omega.matchings[v].begin(), omega.matchings[v].end());
    return S;
}

/// True when the clique's line set is a partial geometry whose point graph is
/// the T(n) complement (geometricity in the sense of the cliques-cover
/// criterion for pseudo-geometric graphs).
inline bool is_geometric_line_set(const OmegaGraph& omega,
                                  const std::vector<int>& clique) {
    Graph tbar = triangular_graph(omega.points).complement();
    std::vector<std::vector<int>> asCliques;
    asCliques.reserve(clique.size());
    for (int v : clique) asCliques.push_back(omega.matchings[v]);
    return bose_geometric_check(tbar, asCliques);
}

/// Streams every full-size clique (ascending vertex lists, deterministic
/// order) to the sink and returns how many there are; for n = 10 these are
/// the 63-cliques. Omit the sink to just count. Every streamed clique is
/// verified to be a geometric line set before it is handed over.
inline long long enumerate_geometries(
    const OmegaGraph& omega,
    const std::function<void(const std::vector<int>&)>& sink = {}) {
    Graph tbar = triangular_graph(omega.points).complement();
    std::function<void(const std::vector<int>&)> checkedSink =
        [&](const std::vector<int>& clique) {
            std::vector<std::vector<int>> asCliques;
            asCliques.reserve(clique.size());
            for (int v : clique) asCliques.push_back(omega.matchings[v]);
            if (!bose_geometric_check(tbar, asCliques))
                throw std::logic_error("enumerated line set is not geometric");
            if (sink) sink(clique);
        };
    detail::GeometrySearch search(omega, checkedSink);
    search.run();
    return search.total;
}

/// Order of the S_n stabilizer of a clique, by direct filtering of all n!
/// point permutations (independent of the automorphism-group machinery; the
/// geometry's full automorphism group coincides with this stabilizer because
/// T(n)-complement adjacency is collinearity).
inline unsigned long long sn_stabilizer_order(const OmegaGraph& omega,
                                              const std::vector<int>& clique) {
    std::vector<char> member(omega.graph.n(), 0);
    for (int v : clique) member[v] = 1;
    std::vector<int> perm(omega.points);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::array<int, 2>> edgePoints(omega.edges);
    int idx = 0;
    for (int i = 0; i < omega.points; ++i)
        for (int j = i + 1; j < omega.points; ++j) edgePoints[idx++] = {i, j};
    unsigned long long order = 0;
    do {
        bool stabilizes = true;
        for (int v : clique) {
            uint64_t image = 0;
            for (int e : omega.matchings[v]) {
                auto [a, b] = edgePoints[e];
                image |= uint64_t(1) << omega.edgeIndex[perm[a]][perm[b]];
            }
            int w = omega.vertex_of_mask(image);
            if (w < 0 || !member[w]) {
                stabilizes = false;
                break;
            }
        }
        if (stabilizes) ++order;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return order;
}

struct GeometryClass {
    std::vector<int> representative_clique;  // first member seen
    IncidenceStructure representative;
    int parallel_class_count = 0;
    int rank = 0;  // 2-rank of the incidence matrix
    unsigned long long aut_order = 0;
    unsigned long long sn_stabilizer = 0;
    long long bucket_count = 0;  // geometries sharing this fingerprint
    long long orbit_size = 0;    // n! / sn_stabilizer
};

struct ClassificationReport {
    long long total_geometries = 0;
    std::vector<GeometryClass> classes;  // ordered by fingerprint
    bool accounting_valid = false;       // orbit sizes sum to the total
};

struct ClassifyOptions {
    int threads = 1;  // used for the per-geometry parallel-class counts
    std::function<void(long long)> progress;  // called every progress_step
    long long progress_step = 1000;
};

/// Full classification over the T(n) complement (n = 10: the pg(4,6,3)
/// census): stream the full-size cliques, fingerprint each by
/// (parallel-class count, 2-rank), keep one representative per fingerprint,
/// then compute exact group orders and check the orbit-stabilizer
/// accounting. Throws if a representative's automorphism order disagrees
/// with its directly-computed S_n stabilizer order.
inline ClassificationReport classify_geometries(const OmegaGraph& omega,
                                                const ClassifyOptions& options = {}) {
    ClassificationReport report;
    std::map<std::pair<int, int>, size_t> bucketOf;

    auto handle = [&](const std::vector<int>& clique) {
        IncidenceStructure S = clique_to_structure(omega, clique);
        int classes = static_cast<int>(all_parallel_classes(S, options.threads).size());
        int rank = rank2(S);
        auto key = std::make_pair(classes, rank);
        auto [it, inserted] = bucketOf.emplace(key, report.classes.size());
        if (inserted) {
            GeometryClass cls;
            cls.representative_clique = clique;
            cls.representative = std::move(S);
            cls.parallel_class_count = classes;
            cls.rank = rank;
            cls.bucket_count = 1;
            report.classes.push_back(std::move(cls));
        } else {
            ++report.classes[it->second].bucket_count;
        }
        ++report.total_geometries;
        if (options.progress && report.total_geometries % options.progress_step == 0)
            options.progress(report.total_geometries);
    };
    enumerate_geometries(omega, handle);

    std::vector<size_t> byKey(report.classes.size());
    std::iota(byKey.begin(), byKey.end(), size_t{0});
    std::sort(byKey.begin(), byKey.end(), [&](size_t a, size_t b) {
        const auto& x = report.classes[a];
        const auto& y = report.classes[b];
        return std::make_pair(x.parallel_class_count, x.rank) <
               std::make_pair(y.parallel_class_count, y.rank);
    });
    std::vector<GeometryClass> ordered;
    ordered.reserve(report.classes.size());
    for (size_t i : byKey) ordered.push_back(std::move(report.classes[i]));
    report.classes = std::move(ordered);

    unsigned long long factorial = 1;
    for (int i = 2; i <= omega.points; ++i) factorial *= i;
    long long orbitTotal = 0;
    for (auto& cls : report.classes) {
        cls.aut_order = aut_order(cls.representative);
        cls.sn_stabilizer = sn_stabilizer_order(omega, cls.representative_clique);
        if (cls.aut_order != cls.sn_stabilizer)
            throw std::logic_error(
                "automorphism group order disagrees with the point stabilizer");
        cls.orbit_size = static_cast<long long>(factorial / cls.sn_stabilizer);
        orbitTotal += cls.orbit_size;
    }
    report.accounting_valid = orbitTotal == report.total_geometries;
    return report;
}

}  // namespace pg
