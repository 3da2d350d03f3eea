#pragma once

// Built-in fixtures (the two pg(4,6,3) geometries and the generalized
// quadrangle W(2)), orbit-presentation expansion, and the canonical text
// formats for incidence structures and arcs.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pg/arcs.hpp"
#include "pg/incidence.hpp"

namespace pg {

/// A structure given by a point permutation and line orbit representatives.
/// Everything here is 0-based; table ingestion subtracts 1 at the boundary.
struct OrbitPresentation {
    std::vector<std::vector<int>> point_cycles;
    std::vector<Line> line_orbit_representatives;
    std::vector<int> orbit_length_per_representative;
    int v = 0;
};

/// Expands each representative under the permutation: lines are ordered
/// orbit-by-orbit, representative first, images applied element-wise and
/// sorted. Rejects early orbit collapse (a repeated line before the stated
/// length) and any global duplicate.
inline IncidenceStructure expand_orbits(const OrbitPresentation& pres) {
    std::vector<int> image(pres.v);
    for (int i = 0; i < pres.v; ++i) image[i] = i;
    for (const auto& cycle : pres.point_cycles)
        for (size_t i = 0; i < cycle.size(); ++i)
            image[cycle[i]] = cycle[(i + 1) % cycle.size()];

    IncidenceStructure S;
    S.v = pres.v;
    if (pres.line_orbit_representatives.size() != pres.orbit_length_per_representative.size())
        throw std::invalid_argument("orbit presentation: rep/length count mismatch");
    for (size_t r = 0; r < pres.line_orbit_representatives.size(); ++r) {
        Line current = pres.line_orbit_representatives[r];
        std::sort(current.begin(), current.end());
        std::vector<Line> orbit;
        for (int step = 0; step < pres.orbit_length_per_representative[r]; ++step) {
            for (const Line& prev : orbit)
                if (prev == current)
                    throw std::invalid_argument("orbit collapses before stated length");
            orbit.push_back(current);
            Line next;
            next.reserve(current.size());
            for (int p : current) next.push_back(image[p]);
            std::sort(next.begin(), next.end());
            current = std::move(next);
        }
        for (Line& l : orbit) S.lines.push_back(std::move(l));
    }
    for (size_t a = 0; a < S.lines.size(); ++a)
        for (size_t b = a + 1; b < S.lines.size(); ++b)
            if (S.lines[a] == S.lines[b])
                throw std::invalid_argument("orbit expansion produced duplicate lines");
    S.validate();
    return S;
}

namespace tables {

// All table data below is stored 1-based exactly as printed and shifted to
// 0-based when materialized.

inline std::vector<std::vector<int>> cycles_0based(
    const std::vector<std::vector<int>>& oneBased) {
    std::vector<std::vector<int>> out;
    for (const auto& c : oneBased) {
        std::vector<int> z;
        for (int x : c) z.push_back(x - 1);
        out.push_back(std::move(z));
    }
    return out;
}

inline OrbitPresentation g1_presentation() {
    OrbitPresentation p;
    p.v = 45;
    std::vector<std::vector<int>> cycles;
    for (int start = 1; start <= 37; start += 9) {
        std::vector<int> c;
        for (int i = 0; i < 9; ++i) c.push_back(start + i);
        cycles.push_back(std::move(c));
    }
    p.point_cycles = cycles_0based(cycles);
    const std::vector<std::vector<int>> reps1 = {
        {9, 11, 22, 34, 42},  {1, 2, 18, 22, 30},   {1, 3, 15, 27, 42},
        {11, 12, 14, 19, 30}, {10, 19, 40, 42, 45}, {1, 5, 19, 32, 41},
        {19, 28, 29, 34, 44},
    };
    for (const auto& rep : reps1) {
        Line l;
        for (int x : rep) l.push_back(x - 1);
        p.line_orbit_representatives.push_back(std::move(l));
        p.orbit_length_per_representative.push_back(9);
    }
    return p;
}

inline OrbitPresentation g2_presentation() {
    OrbitPresentation p;
    p.v = 45;
    std::vector<std::vector<int>> cycles;
    for (int start = 1; start <= 31; start += 6) {
        std::vector<int> c;
        for (int i = 0; i < 6; ++i) c.push_back(start + i);
        cycles.push_back(std::move(c));
    }
    cycles.push_back({37, 38, 39});
    cycles.push_back({40, 41});
    cycles.push_back({42, 43});
    p.point_cycles = cycles_0based(cycles);
    const std::vector<std::pair<std::vector<int>, int>> reps1 = {
        {{14, 22, 30, 35, 40}, 6}, {{12, 25, 34, 38, 40}, 6},
        {{1, 21, 28, 35, 45}, 6},  {{1, 13, 26, 27, 43}, 6},
        {{1, 9, 18, 30, 34}, 6},   {{1, 8, 23, 39, 42}, 6},
        {{1, 11, 12, 22, 32}, 6},  {{1, 16, 17, 36, 38}, 6},
        {{1, 10, 15, 24, 33}, 6},  {{7, 10, 27, 30, 44}, 3},
        {{13, 16, 20, 23, 44}, 3}, {{19, 21, 23, 40, 43}, 2},
        {{37, 38, 39, 44, 45}, 1},
    };
    for (const auto& [rep, len] : reps1) {
        Line l;
        for (int x : rep) l.push_back(x - 1);
        p.line_orbit_representatives.push_back(std::move(l));
        p.orbit_length_per_representative.push_back(len);
    }
    return p;
}

/// The 28 parallel classes of G1, 1-based line indices as printed.
inline std::vector<std::vector<int>> g1_parallel_classes_1based() {
    return {
        {7, 10, 13, 17, 36, 41, 42, 48, 62}, {2, 12, 14, 17, 31, 37, 45, 52, 57},
        {3, 13, 15, 18, 32, 37, 38, 53, 58}, {5, 26, 28, 33, 45, 47, 48, 50, 58},
        {2, 23, 30, 34, 42, 47, 53, 54, 55}, {6, 12, 16, 18, 35, 40, 41, 47, 61},
        {3, 17, 19, 22, 23, 28, 44, 59, 61}, {2, 16, 21, 22, 27, 36, 43, 58, 60},
        {6, 11, 22, 25, 26, 31, 38, 55, 62}, {9, 14, 19, 20, 25, 34, 41, 56, 58},
        {9, 10, 12, 15, 29, 43, 44, 50, 55}, {9, 21, 28, 32, 40, 51, 52, 54, 62},
        {4, 25, 32, 36, 44, 46, 47, 49, 57}, {6, 27, 29, 34, 37, 48, 49, 51, 59},
        {7, 19, 30, 35, 38, 49, 50, 52, 60}, {8, 11, 14, 18, 28, 42, 43, 49, 63},
        {7, 12, 23, 26, 27, 32, 39, 56, 63}, {5, 11, 15, 17, 34, 39, 40, 46, 60},
        {8, 20, 31, 36, 39, 50, 51, 53, 61}, {4, 10, 14, 16, 33, 38, 39, 54, 59},
        {5, 10, 21, 24, 25, 30, 37, 61, 63}, {4, 18, 20, 23, 24, 29, 45, 60, 62},
        {3, 24, 31, 35, 43, 46, 48, 54, 56}, {8, 13, 19, 24, 27, 33, 40, 55, 57},
        {1, 2, 3, 4, 5, 6, 7, 8, 9},         {1, 22, 29, 33, 41, 46, 52, 53, 63},
        {1, 15, 20, 21, 26, 35, 42, 57, 59}, {1, 11, 13, 16, 30, 44, 45, 51, 56},
    };
}

/// The 10 parallel classes of the dual of G1; entries are G1 point labels.
inline std::vector<std::vector<int>> g1_dual_parallel_classes_1based() {
    return {
        {19, 20, 21, 22, 23, 24, 25, 26, 27}, {6, 9, 10, 15, 25, 30, 32, 43, 44},
        {4, 7, 13, 17, 23, 28, 30, 41, 42},   {2, 8, 12, 17, 27, 32, 34, 37, 45},
        {2, 5, 11, 15, 21, 28, 35, 39, 40},   {5, 8, 14, 18, 24, 29, 31, 42, 43},
        {3, 9, 13, 18, 19, 33, 35, 37, 38},   {3, 6, 12, 16, 22, 29, 36, 40, 41},
        {1, 4, 10, 14, 20, 34, 36, 38, 39},   {1, 7, 11, 16, 26, 31, 33, 44, 45},
    };
}

inline std::vector<int> g2_unique_parallel_class_1based() {
    return {25, 26, 27, 28, 29, 30, 61, 62, 63};
}

/// The 10 parallel classes of the dual of G2; entries are G2 point labels.
inline std::vector<std::vector<int>> g2_dual_parallel_classes_1based() {
    return {
        {31, 32, 33, 34, 35, 36, 42, 43, 44}, {2, 8, 15, 20, 21, 26, 30, 32, 38},
        {5, 11, 18, 23, 24, 27, 29, 35, 38},  {6, 12, 13, 19, 24, 28, 30, 36, 39},
        {4, 10, 17, 22, 23, 26, 28, 34, 37},  {8, 10, 12, 14, 16, 18, 41, 43, 45},
        {1, 7, 14, 19, 20, 25, 29, 31, 37},   {7, 9, 11, 13, 15, 17, 40, 42, 45},
        {1, 2, 3, 4, 5, 6, 40, 41, 44},       {3, 9, 16, 21, 22, 25, 27, 33, 39},
    };
}

}  // namespace tables

/// Named fixtures: "G1" and "G2" from the orbit presentations, "W2" from a
/// hyperoval in the plane of order 4.
inline IncidenceStructure builtin(const std::string& name) {
    if (name == "G1") return expand_orbits(tables::g1_presentation());
    if (name == "G2") return expand_orbits(tables::g2_presentation());
    if (name == "W2") {
        ProjectivePlane plane = desarguesian_plane(4);
        MaximalArc oval = regular_hyperoval(plane);
        return construction1(plane, oval).geometry;
    }
    throw std::invalid_argument("unknown builtin structure: " + name);
}

struct ParseError : std::runtime_error {
    int lineNumber;
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what),
          lineNumber(line) {}
};

namespace detail {

/// Strips comments and splits into meaningful (lineNumber, content) pairs.
inline std::vector<std::pair<int, std::string>> meaningful_lines(std::istream& in) {
    std::vector<std::pair<int, std::string>> out;
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream probe(raw);
        std::string token;
        if (probe >> token) out.emplace_back(number, raw);
    }
    return out;
}

}  // namespace detail

/// Reads the canonical text format: `incidence <v> <b>` followed by b lines
/// of space-separated 0-based sorted point indices. `#` starts a comment.
inline IncidenceStructure read_structure(std::istream& in) {
    auto lines = detail::meaningful_lines(in);
    if (lines.empty()) throw ParseError(0, "empty input");
    std::istringstream header(lines[0].second);
    std::string magic;
    int v = -1, b = -1;
    if (!(header >> magic >> v >> b) || magic != "incidence")
        throw ParseError(lines[0].first, "expected header `incidence <v> <b>`");
    if (v < 0 || b < 0) throw ParseError(lines[0].first, "negative v or b");
    if (static_cast<int>(lines.size()) - 1 != b)
        throw ParseError(lines[0].first,
                         "expected " + std::to_string(b) + " line records, found " +
                             std::to_string(lines.size() - 1));
    IncidenceStructure S;
    S.v = v;
    for (int j = 0; j < b; ++j) {
        auto [num, text] = lines[j + 1];
        std::istringstream row(text);
        Line l;
        int p;
        while (row >> p) {
            if (p < 0 || p >= v)
                throw ParseError(num, "point index " + std::to_string(p) + " out of range");
            if (!l.empty() && p == l.back())
                throw ParseError(num, "duplicate point " + std::to_string(p) + " in line");
            if (!l.empty() && p < l.back())
                throw ParseError(num, "points not sorted ascending");
            l.push_back(p);
        }
        if (!row.eof()) throw ParseError(num, "malformed point index");
        S.lines.push_back(std::move(l));
    }
    return S;
}

inline IncidenceStructure read_structure(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_structure(in);
}

inline void write_structure(const IncidenceStructure& S, std::ostream& out) {
    out << "incidence " << S.v << " " << S.b() << "\n";
    for (const Line& l : S.lines) {
        for (size_t i = 0; i < l.size(); ++i) out << (i ? " " : "") << l[i];
        out << "\n";
    }
}

inline void write_structure(const IncidenceStructure& S, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_structure(S, out);
}

/// An arc record: `arc <plane-ref> <d>` header plus one line of point indices.
struct ArcRecord {
    std::string planeRef;
    int degree = 0;
    std::vector<int> points;
};

/// Reads one or more arc records from a file.
inline std::vector<ArcRecord> read_arcs(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    auto lines = detail::meaningful_lines(in);
    std::vector<ArcRecord> out;
    for (size_t i = 0; i < lines.size(); i += 2) {
        std::istringstream header(lines[i].second);
        std::string magic;
        ArcRecord rec;
        if (!(header >> magic >> rec.planeRef >> rec.degree) || magic != "arc")
            throw ParseError(lines[i].first, "expected header `arc <plane-ref> <d>`");
        if (i + 1 >= lines.size())
            throw ParseError(lines[i].first, "arc header without a point line");
        std::istringstream row(lines[i + 1].second);
        int p;
        while (row >> p) rec.points.push_back(p);
        if (!row.eof()) throw ParseError(lines[i + 1].first, "malformed point index");
        std::sort(rec.points.begin(), rec.points.end());
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace pg
