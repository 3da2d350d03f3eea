#pragma once

// Binary linear algebra: packed (0,1)-matrices and rank over GF(2).

#include <cstdint>
#include <vector>

#include "pg/graph.hpp"
#include "pg/incidence.hpp"

namespace pg {

/// Row-major bit matrix packed into 64-bit words. Padding bits stay zero.
struct BinaryMatrix {
    int rows = 0, cols = 0;
    int wordsPerRow = 0;
    std::vector<uint64_t> bits;

    BinaryMatrix() = default;
    BinaryMatrix(int r, int c)
        : rows(r), cols(c), wordsPerRow((c + 63) / 64),
          bits(static_cast<size_t>(r) * wordsPerRow, 0) {}

    bool get(int i, int j) const {
        return (bits[static_cast<size_t>(i) * wordsPerRow + (j >> 6)] >> (j & 63)) & 1;
    }
    void set(int i, int j) {
        bits[static_cast<size_t>(i) * wordsPerRow + (j >> 6)] |= uint64_t(1) << (j & 63);
    }
    uint64_t* row(int i) { return bits.data() + static_cast<size_t>(i) * wordsPerRow; }
    const uint64_t* row(int i) const {
        return bits.data() + static_cast<size_t>(i) * wordsPerRow;
    }
};

inline BinaryMatrix transpose(const BinaryMatrix& m) {
    BinaryMatrix t(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (m.get(i, j)) t.set(j, i);
    return t;
}

/// Line-by-point incidence matrix: bit (i,j) = 1 iff point j lies on line i.
inline BinaryMatrix incidence_matrix(const IncidenceStructure& S) {
    BinaryMatrix m(S.b(), S.v);
    for (int i = 0; i < S.b(); ++i)
        for (int j : S.lines[i]) m.set(i, j);
    return m;
}

/// Rank over GF(2) by word-parallel elimination on a working copy.
/// Pivots are the first nonzero row in column order.
inline int rank2(const BinaryMatrix& m) {
    BinaryMatrix a = m;
    int rank = 0;
    for (int col = 0; col < a.cols && rank < a.rows; ++col) {
        int word = col >> 6;
        uint64_t mask = uint64_t(1) << (col & 63);
        int pivot = -1;
        for (int i = rank; i < a.rows; ++i)
            if (a.row(i)[word] & mask) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != rank)
            for (int w = 0; w < a.wordsPerRow; ++w)
                std::swap(a.row(pivot)[w], a.row(rank)[w]);
        for (int i = 0; i < a.rows; ++i) {
            if (i == rank) continue;
            if (a.row(i)[word] & mask)
                for (int w = word; w < a.wordsPerRow; ++w) a.row(i)[w] ^= a.row(rank)[w];
        }
        ++rank;
    }
    return rank;
}

inline int rank2(const IncidenceStructure& S) { return rank2(incidence_matrix(S)); }

}  // namespace pg
