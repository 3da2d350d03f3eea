#pragma once

// Canonical labeling, automorphism group order, and isomorphism testing for
// incidence structures. The structure is modeled as a vertex-colored bipartite
// graph (points vs lines); canonicalization is equitable-partition refinement
// with individualization backtracking, pruning by node invariants and by
// orbits of the automorphisms found so far. Group orders come from a
// Schreier-Sims stabilizer chain over the discovered generators.

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "pg/graph.hpp"
#include "pg/incidence.hpp"

namespace pg {

using Perm = std::vector<int>;  // perm[i] = image of i

inline Perm perm_identity(int n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}
inline Perm perm_compose(const Perm& a, const Perm& b) {  // (a*b)(x) = a(b(x))
    Perm c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
    return c;
}
inline Perm perm_inverse(const Perm& a) {
    Perm inv(a.size());
    for (size_t i = 0; i < a.size(); ++i) inv[a[i]] = static_cast<int>(i);
    return inv;
}
inline bool perm_is_identity(const Perm& a) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != static_cast<int>(i)) return false;
    return true;
}

/// Deterministic Schreier-Sims stabilizer chain; supports membership tests
/// and exact group order for the permutation groups arising here. Kept
/// simple: whenever a sift leaves a nontrivial residue the affected levels
/// are recomputed to a fixpoint.
class PermGroup {
  public:
    explicit PermGroup(int n) : n_(n) {}

    unsigned long long order() const {
        unsigned long long o = 1;
        for (const auto& level : transversals_) o *= level.size();
        return o;
    }

    bool contains(const Perm& g) const {
        Perm r = g;
        for (size_t l = 0; l < base_.size(); ++l) {
            auto it = transversals_[l].find(r[base_[l]]);
            if (it == transversals_[l].end()) return false;
            r = perm_compose(perm_inverse(it->second), r);
        }
        return perm_is_identity(r);
    }

    /// Adds a generator (no-op if already a member).
    void add(const Perm& g) {
        if (perm_is_identity(g) || contains(g)) return;
        gens_.push_back(g);
        ensure_base_point(g);
        close();
    }

    const std::vector<Perm>& generators() const { return gens_; }

  private:
    // Generators at level l: those fixing base_[0..l-1] pointwise.
    bool fixes_prefix(const Perm& g, size_t level) const {
        for (size_t i = 0; i < level; ++i)
            if (g[base_[i]] != base_[i]) return false;
        return true;
    }

    void ensure_base_point(const Perm& g) {
        if (!fixes_prefix(g, base_.size())) return;
        for (int i = 0; i < n_; ++i)
            if (g[i] != i) {
                base_.push_back(i);
                transversals_.emplace_back();
                transversals_.back()[i] = perm_identity(n_);
                return;
            }
        throw std::logic_error("identity slipped through");
    }

    void rebuild_level(size_t level, const std::vector<const Perm*>& acting) {
        auto& trans = transversals_[level];
        trans.clear();
        trans[base_[level]] = perm_identity(n_);
        std::vector<int> frontier{base_[level]};
        while (!frontier.empty()) {
            int p = frontier.back();
            frontier.pop_back();
            for (const Perm* g : acting) {
                int q = (*g)[p];
                if (!trans.count(q)) {
                    trans[q] = perm_compose(*g, trans[p]);
                    frontier.push_back(q);
                }
            }
        }
    }

    // Residue of g after sifting from `level` on, together with the level the
    // sift got stuck at (base_.size() when it ran through). Empty when g is
    // in the chain.
    std::pair<Perm, size_t> sift_from(size_t level, const Perm& g) const {
        Perm r = g;
        size_t l = level;
        for (; l < base_.size(); ++l) {
            auto it = transversals_[l].find(r[base_[l]]);
            if (it == transversals_[l].end()) return {r, l};
            r = perm_compose(perm_inverse(it->second), r);
        }
        if (perm_is_identity(r)) return {Perm{}, l};
        return {r, l};
    }

    // Re-establish the chain from the deepest level up: rebuild each level's
    // transversal and sift its Schreier generators; a nontrivial residue is
    // added as a generator and processing resumes at its stuck level.
    void close() {
        int i = static_cast<int>(base_.size()) - 1;
        while (i >= 0) {
            std::vector<const Perm*> acting;
            for (const Perm& g : gens_)
                if (fixes_prefix(g, static_cast<size_t>(i))) acting.push_back(&g);
            rebuild_level(static_cast<size_t>(i), acting);
            bool grew = false;
            const auto& trans = transversals_[static_cast<size_t>(i)];
            for (auto it = trans.begin(); it != trans.end() && !grew; ++it) {
                for (const Perm* g : acting) {
                    Perm schreier = perm_compose(
                        perm_inverse(trans.at((*g)[it->first])),
                        perm_compose(*g, it->second));
                    auto [residue, stuck] = sift_from(static_cast<size_t>(i) + 1,
                                                      schreier);
                    if (residue.empty()) continue;
                    bool newLevel = stuck == base_.size();
                    gens_.push_back(std::move(residue));
                    if (newLevel) ensure_base_point(gens_.back());
                    i = static_cast<int>(newLevel ? base_.size() - 1 : stuck);
                    grew = true;
                    break;
                }
            }
            if (!grew) --i;
        }
    }

    int n_;
    std::vector<int> base_;
    std::vector<Perm> gens_;
    std::vector<std::map<int, Perm>> transversals_;
};

struct CanonicalForm {
    std::vector<uint8_t> certificate;
    unsigned long long aut_order = 1;
    Perm relabeling;  // canonical position -> original vertex
};

namespace detail {

using Cells = std::vector<std::vector<int>>;  // ordered partition, cells sorted

struct ColoredGraph {
    Graph g;
    std::vector<int> colors;
};

/// Equitable refinement (1-dimensional Weisfeiler-Leman) of an ordered
/// partition. Split cells are ordered by neighbor count ascending.
inline void refine(const Graph& g, Cells& cells) {
    std::vector<std::vector<int>> queue(cells.begin(), cells.end());
    while (!queue.empty()) {
        std::vector<int> splitterVerts = std::move(queue.back());
        queue.pop_back();
        Bitset splitter(g.n());
        for (int v : splitterVerts) splitter.set(v);
        Cells next;
        next.reserve(cells.size());
        for (auto& cell : cells) {
            if (cell.size() == 1) {
                next.push_back(std::move(cell));
                continue;
            }
            std::map<int, std::vector<int>> byCount;
            for (int v : cell) byCount[g.neighbors(v).and_count(splitter)].push_back(v);
            if (byCount.size() == 1) {
                next.push_back(std::move(cell));
                continue;
            }
            for (auto& [cnt, group] : byCount) {
                queue.push_back(group);
                next.push_back(std::move(group));
            }
        }
        cells = std::move(next);
    }
}

inline Cells initial_cells(const ColoredGraph& cg) {
    std::map<int, std::vector<int>> byColor;
    for (int v = 0; v < cg.g.n(); ++v) byColor[cg.colors[v]].push_back(v);
    Cells cells;
    for (auto& [c, verts] : byColor) cells.push_back(std::move(verts));
    return cells;
}

/// Hash of the quotient structure: per cell its color, size, and (equitable)
/// neighbor counts into every cell. Isomorphism-invariant by construction.
inline uint64_t node_invariant(const ColoredGraph& cg, const Cells& cells) {
    uint64_t h = 1469598103934665603ull;
    auto mix = [&h](uint64_t x) {
        h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    std::vector<Bitset> cellBits;
    cellBits.reserve(cells.size());
    for (const auto& cell : cells) {
        Bitset b(cg.g.n());
        for (int v : cell) b.set(v);
        cellBits.push_back(std::move(b));
    }
    for (size_t i = 0; i < cells.size(); ++i) {
        mix(cells[i].size());
        mix(static_cast<uint64_t>(cg.colors[cells[i][0]]) + 77);
        int rep = cells[i][0];
        for (size_t j = 0; j < cells.size(); ++j)
            mix(static_cast<uint64_t>(cg.g.neighbors(rep).and_count(cellBits[j])));
    }
    return h;
}

inline std::vector<uint64_t> leaf_certificate(const ColoredGraph& cg,
                                              const Perm& posToVertex) {
    int n = cg.g.n();
    std::vector<uint64_t> cert;
    cert.reserve(n + static_cast<size_t>(n) * ((n + 63) / 64));
    for (int p = 0; p < n; ++p) cert.push_back(cg.colors[posToVertex[p]]);
    Perm vertexToPos = perm_inverse(posToVertex);
    for (int p = 0; p < n; ++p) {
        Bitset row(n);
        const Bitset& adj = cg.g.neighbors(posToVertex[p]);
        for (int u = adj.first(); u >= 0; u = adj.next(u + 1)) row.set(vertexToPos[u]);
        cert.insert(cert.end(), row.w.begin(), row.w.end());
    }
    return cert;
}

class CanonicalSearch {
  public:
    explicit CanonicalSearch(const ColoredGraph& cg)
        : cg_(cg), group_(cg.g.n()) {}

    CanonicalForm run() {
        int n = cg_.g.n();
        CanonicalForm out;
        if (n == 0) {
            out.relabeling = {};
            return out;
        }
        Cells cells = initial_cells(cg_);
        path_.clear();
        descend(cells, 0);
        out.aut_order = group_.order();
        out.relabeling = bestPerm_;
        out.certificate.reserve(bestCert_.size() * 8 + 8);
        auto pushWord = [&out](uint64_t w) {
            for (int k = 0; k < 8; ++k) out.certificate.push_back((w >> (8 * k)) & 0xff);
        };
        pushWord(static_cast<uint64_t>(n));
        for (uint64_t w : bestCert_) pushWord(w);
        return out;
    }

  private:
    // Returns the comparison state of this path against the best trace:
    // caller passes whether the path so far is still equal to the best trace.
    void descend(Cells cells, int depth) {
        refine(cg_.g, cells);
        uint64_t inv = node_invariant(cg_, cells);
        if (depth < static_cast<int>(bestTrace_.size())) {
            if (inv < bestTrace_[depth]) return;  // provably non-canonical path
            if (inv > bestTrace_[depth]) {
                bestTrace_.resize(depth);
                bestTrace_.push_back(inv);
                haveBest_ = false;  // trace improved; certificate restarts
            }
        } else {
            bestTrace_.push_back(inv);
        }

        // discrete partition: a candidate labeling
        bool discrete = true;
        for (const auto& c : cells)
            if (c.size() > 1) { discrete = false; break; }
        if (discrete) {
            Perm posToVertex;
            posToVertex.reserve(cells.size());
            for (const auto& c : cells) posToVertex.push_back(c[0]);
            auto cert = leaf_certificate(cg_, posToVertex);
            if (!haveFirst_) {
                // the first leaf is the stable anchor for automorphism
                // detection; it also seeds the running maximum
                firstCert_ = cert;
                firstPerm_ = posToVertex;
                firstPath_ = path_;
                haveFirst_ = true;
                bestCert_ = std::move(cert);
                bestPerm_ = std::move(posToVertex);
                bestPath_ = path_;
                haveBest_ = true;
                return;
            }
            int jump = -1;
            auto record = [&](const Perm& anchor, const std::vector<int>& anchorPath) {
                Perm a(cg_.g.n());
                for (size_t p = 0; p < posToVertex.size(); ++p)
                    a[anchor[p]] = posToVertex[p];
                if (!perm_is_identity(a)) {
                    autos_.push_back(a);
                    group_.add(a);
                }
                size_t common = 0;
                while (common < path_.size() && common < anchorPath.size() &&
                       path_[common] == anchorPath[common])
                    ++common;
                jump = std::max(jump, static_cast<int>(common));
            };
            bool matchedBest = false;
            if (haveBest_ && cert == bestCert_) {
                record(bestPerm_, bestPath_);
                matchedBest = true;
            }
            if (cert == firstCert_ && (!matchedBest || bestCert_ != firstCert_))
                record(firstPerm_, firstPath_);
            if (!matchedBest && (!haveBest_ || cert > bestCert_)) {
                bestCert_ = std::move(cert);
                bestPerm_ = std::move(posToVertex);
                bestPath_ = path_;
                haveBest_ = true;
            }
            if (jump >= 0) jumpDepth_ = jump;
            return;
        }

        // target cell: first largest non-singleton (grows the individualized
        // closure fastest on incidence graphs; isomorphism-invariant choice)
        int target = -1;
        size_t largest = 0;
        for (size_t i = 0; i < cells.size(); ++i)
            if (cells[i].size() > largest) {
                largest = cells[i].size();
                target = static_cast<int>(i);
            }

        std::vector<int> branched;
        for (int u : cells[target]) {
            if (in_prior_orbit(u, branched)) continue;
            branched.push_back(u);
            Cells next;
            next.reserve(cells.size() + 1);
            for (size_t i = 0; i < cells.size(); ++i) {
                if (static_cast<int>(i) != target) {
                    next.push_back(cells[i]);
                    continue;
                }
                next.push_back({u});
                std::vector<int> rest;
                for (int w : cells[i])
                    if (w != u) rest.push_back(w);
                next.push_back(std::move(rest));
            }
            path_.push_back(u);
            descend(std::move(next), depth + 1);
            path_.pop_back();
            if (jumpDepth_ >= 0) {
                if (static_cast<int>(path_.size()) > jumpDepth_) return;
                jumpDepth_ = -1;  // back at the divergence node; resume
            }
        }
    }

    /// True iff u lies in the orbit of an already-branched vertex under the
    /// subgroup of discovered automorphisms fixing the individualized prefix.
    bool in_prior_orbit(int u, const std::vector<int>& branched) {
        if (branched.empty()) return false;
        std::vector<const Perm*> fixing;
        for (const Perm& g : autos_) {
            bool ok = true;
            for (int p : path_)
                if (g[p] != p) { ok = false; break; }
            if (ok) fixing.push_back(&g);
        }
        if (fixing.empty()) return false;
        // orbit of u via union-find-free BFS
        Bitset orbit(cg_.g.n());
        orbit.set(u);
        std::vector<int> frontier{u};
        while (!frontier.empty()) {
            int x = frontier.back();
            frontier.pop_back();
            for (const Perm* g : fixing) {
                int y = (*g)[x];
                if (!orbit.test(y)) {
                    orbit.set(y);
                    frontier.push_back(y);
                }
            }
        }
        for (int b : branched)
            if (orbit.test(b)) return true;
        return false;
    }

    const ColoredGraph& cg_;
    PermGroup group_;
    std::vector<Perm> autos_;  // discovered automorphisms, unsifted
    std::vector<int> path_;
    std::vector<int> bestPath_;
    std::vector<int> firstPath_;
    std::vector<uint64_t> firstCert_;
    Perm firstPerm_;
    bool haveFirst_ = false;
    std::vector<uint64_t> bestTrace_;
    std::vector<uint64_t> bestCert_;
    Perm bestPerm_;
    bool haveBest_ = false;
    int jumpDepth_ = -1;
};

inline ColoredGraph incidence_colored_graph(const IncidenceStructure& S) {
    ColoredGraph cg;
    int n = S.v + S.b();
    cg.g = Graph(n);
    cg.colors.assign(n, 0);
    for (int j = 0; j < S.b(); ++j) {
        cg.colors[S.v + j] = 1;
        for (int p : S.lines[j]) cg.g.add_edge(p, S.v + j);
    }
    return cg;
}

}  // namespace detail

/// Canonical form of the point/line incidence graph, with the exact order of
/// the automorphism group (point and line permutations preserving incidence).
inline CanonicalForm canonical_form(const IncidenceStructure& S) {
    S.validate();
    detail::ColoredGraph cg = detail::incidence_colored_graph(S);
    detail::CanonicalSearch search(cg);
    return search.run();
}

inline unsigned long long aut_order(const IncidenceStructure& S) {
    return canonical_form(S).aut_order;
}

inline bool are_isomorphic(const IncidenceStructure& a, const IncidenceStructure& b) {
    if (a.v != b.v || a.b() != b.b()) return false;
    return canonical_form(a).certificate == canonical_form(b).certificate;
}

}  // namespace pg
