#pragma once

// Undirected graphs on [0, n) with packed bitset adjacency rows.

#include <cstdint>
#include <stdexcept>
#include <vector>

#if defined(__GNUC__) || defined(__clang__)
#include <bit>
#endif

namespace pg {

inline int popcount64(uint64_t x) { return std::popcount(x); }

/// Fixed-universe bitset backed by 64-bit words.
struct Bitset {
    int n = 0;
    std::vector<uint64_t> w;

    Bitset() = default;
    explicit Bitset(int universe) : n(universe), w((universe + 63) / 64, 0) {}

    bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    void set(int i) { w[i >> 6] |= uint64_t(1) << (i & 63); }
    void reset(int i) { w[i >> 6] &= ~(uint64_t(1) << (i & 63)); }

    int count() const {
        int c = 0;
        for (uint64_t x : w) c += popcount64(x);
        return c;
    }
    bool any() const {
        for (uint64_t x : w)
            if (x) return true;
        return false;
    }
    /// Lowest set bit, or -1.
    int first() const {
        for (size_t k = 0; k < w.size(); ++k)
            if (w[k]) return static_cast<int>(k * 64) + std::countr_zero(w[k]);
        return -1;
    }
    /// Lowest set bit >= from, or -1.
    int next(int from) const {
        if (from >= n) return -1;
        size_t k = from >> 6;
        uint64_t x = w[k] & (~uint64_t(0) << (from & 63));
        while (true) {
            if (x) return static_cast<int>(k * 64) + std::countr_zero(x);
            if (++k >= w.size()) return -1;
            x = w[k];
        }
    }
    void and_with(const Bitset& o) {
        for (size_t k = 0; k < w.size(); ++k) w[k] &= o.w[k];
    }
    void or_with(const Bitset& o) {
        for (size_t k = 0; k < w.size(); ++k) w[k] |= o.w[k];
    }
    int and_count(const Bitset& o) const {
        int c = 0;
        for (size_t k = 0; k < w.size(); ++k) c += popcount64(w[k] & o.w[k]);
        return c;
    }
    std::vector<int> to_vector() const {
        std::vector<int> out;
        for (int i = first(); i >= 0; i = next(i + 1)) out.push_back(i);
        return out;
    }
    bool operator==(const Bitset&) const = default;
};

/// Simple undirected graph, no loops; adjacency kept symmetric.
class Graph {
  public:
    Graph() = default;
    explicit Graph(int n) : n_(n), rows_(n, Bitset(n)) {}

    int n() const { return n_; }

    void add_edge(int u, int v) {
        if (u == v) throw std::invalid_argument("loop edge");
        rows_[u].set(v);
        rows_[v].set(u);
    }
    bool adjacent(int u, int v) const { return rows_[u].test(v); }
    const Bitset& neighbors(int u) const { return rows_[u]; }
    int degree(int u) const { return rows_[u].count(); }

    long long edge_count() const {
        long long total = 0;
        for (int u = 0; u < n_; ++u) total += degree(u);
        return total / 2;
    }

    Graph complement() const {
        Graph c(n_);
        for (int u = 0; u < n_; ++u)
            for (int v = u + 1; v < n_; ++v)
                if (!adjacent(u, v)) c.add_edge(u, v);
        return c;
    }

    bool operator==(const Graph&) const = default;

  private:
    int n_ = 0;
    std::vector<Bitset> rows_;
};

}  // namespace pg
