#pragma once

// Exact-size clique enumeration and maximum clique search on bitset graphs.
// Branch and bound over candidate bitsets with greedy-coloring bounds; the
// exact-size mode additionally prunes branches with |current| + |candidates|
// below the target. Vertices are explored in ascending order, so output is
// deterministic and lexicographically sorted.

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <thread>
#include <vector>

#include "pg/graph.hpp"

namespace pg {

enum class CliqueMode { enumerate_all, count_only, find_max };

struct CliqueQuery {
    int target_size = 1;
    CliqueMode mode = CliqueMode::enumerate_all;
    std::optional<long long> limit;  // enumerate_all cap
    int threads = 1;                 // top-level branch fan-out
    // Streaming sink: when set, cliques are handed over in lexicographic
    // order instead of being buffered (the search runs sequentially and
    // CliqueResult.cliques stays empty). Return false to stop the search.
    std::function<bool(const std::vector<int>&)> on_clique;
};

/// Domain-specific pruning hook for exact-size searches. push/pop bracket a
/// tentative vertex choice; push returning false vetoes the branch (pop is
/// still called for it). feasible may inspect the remaining candidates.
class ExtensionFilter {
  public:
    virtual ~ExtensionFilter() = default;
    virtual bool push(int v) = 0;
    virtual void pop(int v) = 0;
    virtual bool feasible(int chosen, const Bitset& candidates) {
        (void)chosen;
        (void)candidates;
        return true;
    }
    virtual std::unique_ptr<ExtensionFilter> clone() const = 0;
};

struct CliqueResult {
    long long count = 0;
    std::vector<std::vector<int>> cliques;  // empty in count_only mode
    bool limit_exceeded = false;
};

namespace detail {

/// Zero all bits at positions <= v.
inline void clear_through(Bitset& b, int v) {
    int word = v >> 6;
    for (int w = 0; w < word; ++w) b.w[w] = 0;
    if ((v & 63) == 63)
        b.w[word] = 0;
    else
        b.w[word] &= ~uint64_t(0) << ((v & 63) + 1);
}

/// Greedy coloring of the subgraph induced on `cand`; returns the number of
/// color classes (clipped at cutoff), an upper bound on clique size in cand.
inline int greedy_color_bound(const Graph& g, const Bitset& cand, int cutoff) {
    Bitset uncolored = cand;
    int colors = 0;
    while (uncolored.any()) {
        ++colors;
        if (colors >= cutoff) return cutoff;
        Bitset avail = uncolored;
        for (int v = avail.first(); v >= 0; v = avail.next(v + 1)) {
            uncolored.reset(v);
            for (size_t w = 0; w < avail.w.size(); ++w)
                avail.w[w] &= ~g.neighbors(v).w[w];
        }
    }
    return colors;
}

struct ExactSizeSearch {
    const Graph& g;
    int target;
    CliqueMode mode;
    long long limit;
    ExtensionFilter* filter;
    const std::function<bool(const std::vector<int>&)>* sink;
    CliqueResult out;
    std::vector<int> current;

    ExactSizeSearch(const Graph& graph, int k, CliqueMode m, long long lim,
                    ExtensionFilter* f,
                    const std::function<bool(const std::vector<int>&)>* s = nullptr)
        : g(graph), target(k), mode(m), limit(lim), filter(f), sink(s) {}

    bool emit() {
        ++out.count;
        if (sink && *sink) return (*sink)(current);
        if (mode == CliqueMode::enumerate_all) {
            if (out.count > limit) {
                out.limit_exceeded = true;
                return false;
            }
            out.cliques.push_back(current);
        }
        return true;
    }

    // candidates: vertices adjacent to all of `current` with index above the
    // last chosen vertex. Returns false to abort the whole search (limit hit).
    bool recurse(const Bitset& candidates) {
        int chosen = static_cast<int>(current.size());
        if (chosen == target) return emit();
        int avail = candidates.count();
        if (chosen + avail < target) return true;
        if (filter && !filter->feasible(chosen, candidates)) return true;
        int remaining = avail;
        for (int v = candidates.first(); v >= 0; v = candidates.next(v + 1)) {
            if (chosen + remaining < target) break;
            --remaining;
            bool ok = !filter || filter->push(v);
            if (ok) {
                Bitset next = candidates;
                next.and_with(g.neighbors(v));
                clear_through(next, v);
                current.push_back(v);
                bool cont = recurse(next);
                current.pop_back();
                if (!cont) {
                    if (filter) filter->pop(v);
                    return false;
                }
            }
            if (filter) filter->pop(v);
        }
        return true;
    }
};

inline CliqueResult enumerate_range(const Graph& g, const CliqueQuery& query,
                                    long long limit, ExtensionFilter* filter,
                                    int first, int last) {
    detail::ExactSizeSearch search(g, query.target_size, query.mode, limit, filter,
                                   &query.on_clique);
    for (int v = first; v < last; ++v) {
        bool ok = !filter || filter->push(v);
        bool cont = true;
        if (ok) {
            Bitset next = g.neighbors(v);
            clear_through(next, v);
            search.current.assign(1, v);
            cont = search.recurse(next);
            search.current.clear();
        }
        if (filter) filter->pop(v);
        if (!cont) break;
    }
    return std::move(search.out);
}

}  // namespace detail

/// All cliques of exactly query.target_size, sorted ascending inside each
/// clique and lexicographically across cliques. In count_only mode only the
/// count is produced. A supplied filter narrows the search (see
/// ExtensionFilter); with threads > 1 each worker gets its own clone.
inline CliqueResult enumerate_cliques(const Graph& g, const CliqueQuery& query,
                                      ExtensionFilter* filter = nullptr) {
    if (query.target_size < 1)
        throw std::invalid_argument("target_size must be >= 1");
    long long limit = query.limit.value_or(std::numeric_limits<long long>::max());

    int threads = std::max(1, query.threads);
    if (query.on_clique) threads = 1;  // keep the stream in lex order
    if (threads == 1 || g.n() < 2 * threads)
        return detail::enumerate_range(g, query, limit, filter, 0, g.n());

    // Branch v covers cliques whose least vertex is v, so contiguous vertex
    // ranges partition the output and concatenation preserves lex order.
    struct Chunk {
        int first, last;
        CliqueResult result;
    };
    std::vector<Chunk> chunks;
    int per = (g.n() + threads - 1) / threads;
    for (int start = 0; start < g.n(); start += per)
        chunks.push_back({start, std::min(start + per, g.n()), {}});
    std::vector<std::thread> pool;
    for (auto& c : chunks)
        pool.emplace_back([&, chunk = &c] {
            std::unique_ptr<ExtensionFilter> own;
            if (filter) own = filter->clone();
            chunk->result = detail::enumerate_range(g, query, limit, own.get(),
                                                    chunk->first, chunk->last);
        });
    for (auto& t : pool) t.join();

    CliqueResult merged;
    for (auto& c : chunks) {
        merged.count += c.result.count;
        merged.limit_exceeded |= c.result.limit_exceeded;
        for (auto& cl : c.result.cliques) merged.cliques.push_back(std::move(cl));
    }
    if (query.mode == CliqueMode::enumerate_all && merged.count > limit) {
        merged.limit_exceeded = true;
        merged.cliques.resize(static_cast<size_t>(limit));
    }
    return merged;
}

/// A maximum clique; among maximum cliques the lexicographically least.
inline std::vector<int> max_clique(const Graph& g) {
    if (g.n() == 0) return {};
    std::vector<int> best;
    std::vector<int> current;

    std::function<void(const Bitset&)> rec = [&](const Bitset& candidates) {
        int avail = candidates.count();
        if (current.size() + avail <= best.size()) return;
        if (avail > 8) {
            int cutoff = static_cast<int>(best.size()) + 1 -
                         static_cast<int>(current.size());
            if (detail::greedy_color_bound(g, candidates, cutoff) < cutoff) return;
        }
        for (int v = candidates.first(); v >= 0; v = candidates.next(v + 1)) {
            if (current.size() + avail <= best.size()) break;
            --avail;
            Bitset next = candidates;
            next.and_with(g.neighbors(v));
            detail::clear_through(next, v);
            current.push_back(v);
            if (current.size() > best.size()) best = current;
            rec(next);
            current.pop_back();
        }
    };

    Bitset all(g.n());
    for (int v = 0; v < g.n(); ++v) all.set(v);
    rec(all);
    return best;
}

}  // namespace pg
