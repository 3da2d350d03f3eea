#pragma once

// Strongly regular graph parameter algebra: point/line graphs of partial
// geometries, triangular graphs, spectra, the Hoffman bound, and the Bose
// geometricity criterion. All arithmetic is exact (integers / rationals).

#include <cmath>
#include <numeric>
#include <optional>
#include <tuple>
#include <stdexcept>
#include <string>
#include <vector>

#include "pg/graph.hpp"
#include "pg/incidence.hpp"

namespace pg {

struct SrgParams {
    long long n = 0, k = 0, lambda = 0, mu = 0;
    bool operator==(const SrgParams&) const = default;
};

/// Exact rational with positive denominator, always reduced.
struct Rational {
    long long num = 0, den = 1;
    Rational() = default;
    Rational(long long n, long long d = 1) : num(n), den(d) {
        if (den == 0) throw std::invalid_argument("zero denominator");
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }
    bool is_integer() const { return den == 1; }
    bool operator==(const Rational&) const = default;
};

/// Checks all vertex pairs; on success returns (n,k,lambda,mu), otherwise a
/// message naming a witnessing pair.
inline std::optional<SrgParams> is_srg(const Graph& g, std::string* why = nullptr) {
    auto refuse = [&](const std::string& m) {
        if (why) *why = m;
        return std::nullopt;
    };
    int n = g.n();
    if (n < 2) return refuse("fewer than 2 vertices");
    int k = g.degree(0);
    for (int u = 1; u < n; ++u)
        if (g.degree(u) != k)
            return refuse("not regular: vertex " + std::to_string(u));
    if (k == 0 || k == n - 1)
        return refuse("complete or edgeless graph");
    int lambda = -1, mu = -1;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            int common = g.neighbors(u).and_count(g.neighbors(v));
            if (g.adjacent(u, v)) {
                if (lambda < 0) lambda = common;
                if (common != lambda)
                    return refuse("lambda differs at pair " + std::to_string(u) + "," +
                                  std::to_string(v));
            } else {
                if (mu < 0) mu = common;
                if (common != mu)
                    return refuse("mu differs at pair " + std::to_string(u) + "," +
                                  std::to_string(v));
            }
        }
    return SrgParams{n, k, lambda, mu};
}

/// Complement parameters (n, n-1-k, n-2k+mu-2, n-2k+lambda).
inline SrgParams complement_params(const SrgParams& p) {
    SrgParams c{p.n, p.n - 1 - p.k, p.n - 2 * p.k + p.mu - 2, p.n - 2 * p.k + p.lambda};
    if (c.k < 0 || c.lambda < 0 || c.mu < 0)
        throw std::invalid_argument("complement parameters negative");
    return c;
}

/// Collinearity graph on the points of a verified partial geometry.
inline Graph point_graph(const IncidenceStructure& S) {
    PgVerdict v = verify_pg(S);
    if (!v.is_pg) throw std::invalid_argument("point_graph: not a partial geometry: " + v.violation);
    Graph g(S.v);
    for (const Line& l : S.lines)
        for (size_t a = 0; a < l.size(); ++a)
            for (size_t b = a + 1; b < l.size(); ++b) g.add_edge(l[a], l[b]);
    return g;
}

/// Concurrence graph on the lines of a verified partial geometry.
inline Graph line_graph(const IncidenceStructure& S) {
    PgVerdict v = verify_pg(S);
    if (!v.is_pg) throw std::invalid_argument("line_graph: not a partial geometry: " + v.violation);
    Graph g(S.b());
    std::vector<std::vector<int>> through(S.v);
    for (int j = 0; j < S.b(); ++j)
        for (int p : S.lines[j]) through[p].push_back(j);
    for (const auto& t : through)
        for (size_t a = 0; a < t.size(); ++a)
            for (size_t b = a + 1; b < t.size(); ++b)
                if (!g.adjacent(t[a], t[b])) g.add_edge(t[a], t[b]);
    return g;
}

/// Triangular graph T(m): vertices are the 2-subsets of {0..m-1} in
/// lexicographic order, adjacent when not disjoint.
inline Graph triangular_graph(int m) {
    if (m < 4) throw std::invalid_argument("triangular_graph requires m >= 4");
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) pairs.emplace_back(i, j);
    Graph g(static_cast<int>(pairs.size()));
    for (size_t a = 0; a < pairs.size(); ++a)
        for (size_t b = a + 1; b < pairs.size(); ++b) {
            auto [i1, j1] = pairs[a];
            auto [i2, j2] = pairs[b];
            if (i1 == i2 || i1 == j2 || j1 == i2 || j1 == j2)
                g.add_edge(static_cast<int>(a), static_cast<int>(b));
        }
    return g;
}

/// 2-subsets of {0..m-1} in the vertex order used by triangular_graph.
inline std::vector<std::pair<int, int>> triangular_vertex_labels(int m) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) pairs.emplace_back(i, j);
    return pairs;
}

struct Eigenvalues {
    long long rho1 = 0;  // non-negative root
    long long rho2 = 0;  // negative root
};

inline long long isqrt_ll(long long x) {
    if (x < 0) return -1;
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(x)));
    while (r * r > x) --r;
    while ((r + 1) * (r + 1) <= x) ++r;
    return r;
}

/// Integer roots of x^2 + (mu-lambda)x + (mu-k) = 0; empty when the
/// discriminant is not a perfect square (conference graphs).
inline std::optional<Eigenvalues> eigenvalues(const SrgParams& p) {
    long long bq = p.mu - p.lambda;
    long long cq = p.mu - p.k;
    long long disc = bq * bq - 4 * cq;
    long long r = isqrt_ll(disc);
    if (r < 0 || r * r != disc) return std::nullopt;
    if ((r - bq) % 2 != 0) return std::nullopt;
    Eigenvalues e;
    e.rho1 = (-bq + r) / 2;
    e.rho2 = (-bq - r) / 2;
    if (e.rho1 < 0 || e.rho2 >= 0) return std::nullopt;
    return e;
}

/// Multiplicities (f, g) of rho1, rho2; integral for all in-scope spectra.
inline std::optional<std::pair<long long, long long>> multiplicities(const SrgParams& p) {
    auto e = eigenvalues(p);
    if (!e) return std::nullopt;
    // f + g = n - 1, k + f*rho1 + g*rho2 = 0
    long long span = e->rho1 - e->rho2;
    long long fn = -(p.k + (p.n - 1) * e->rho2);
    if (fn % span != 0) return std::nullopt;
    long long f = fn / span;
    return std::make_pair(f, p.n - 1 - f);
}

struct HoffmanBound {
    Rational bound;           // n(-rho) / (k - rho)
    Rational exteriorDegree;  // k*c / (n-c) at c = bound
};

/// Hoffman coclique bound with the exterior degree at equality.
inline HoffmanBound hoffman_bound(const SrgParams& p) {
    auto e = eigenvalues(p);
    if (!e) throw std::invalid_argument("hoffman_bound: non-integral spectrum");
    long long rho = e->rho2;
    Rational c(p.n * (-rho), p.k - rho);
    // d = k*c/(n-c) with exact rational c
    Rational d(p.k * c.num, p.n * c.den - c.num);
    return {c, d};
}

/// Integers (s,t,alpha) with n=(s+1)(st+alpha)/alpha, k=s(t+1),
/// lambda=s-1+t(alpha-1), mu=alpha(t+1); empty if no solution exists.
inline std::optional<std::tuple<int, int, int>> pseudo_geometric_params(const SrgParams& p) {
    for (long long s = 1; s <= p.k; ++s) {
        if (p.k % s != 0) continue;
        long long t = p.k / s - 1;
        if (t < 1) continue;
        if (p.mu % (t + 1) != 0) continue;
        long long alpha = p.mu / (t + 1);
        if (alpha < 1) continue;
        if (p.lambda != s - 1 + t * (alpha - 1)) continue;
        if ((s + 1) * (s * t + alpha) != p.n * alpha) continue;
        return std::make_tuple(static_cast<int>(s), static_cast<int>(t),
                               static_cast<int>(alpha));
    }
    return std::nullopt;
}

/// Bose criterion: a pseudo-geometric graph is geometric iff it carries
/// b = (t+1)(st+alpha)/alpha cliques of size s+1 meeting pairwise in at most
/// one vertex. Returns true iff `cliques` is such a collection for g.
inline bool bose_geometric_check(const Graph& g, const std::vector<std::vector<int>>& cliques) {
    auto p = is_srg(g);
    if (!p) return false;
    auto sta = pseudo_geometric_params(*p);
    if (!sta) return false;
    auto [s, t, alpha] = *sta;
    long long b = static_cast<long long>(t + 1) * (static_cast<long long>(s) * t + alpha) / alpha;
    if (static_cast<long long>(cliques.size()) != b) return false;
    std::vector<Bitset> sets;
    sets.reserve(cliques.size());
    for (const auto& c : cliques) {
        if (static_cast<int>(c.size()) != s + 1) return false;
        for (size_t a = 0; a < c.size(); ++a)
            for (size_t d = a + 1; d < c.size(); ++d)
                if (!g.adjacent(c[a], c[d])) return false;
        Bitset bs(g.n());
        for (int v : c) bs.set(v);
        sets.push_back(std::move(bs));
    }
    for (size_t a = 0; a < sets.size(); ++a)
        for (size_t d = a + 1; d < sets.size(); ++d)
            if (sets[a].and_count(sets[d]) > 1) return false;
    return true;
}

}  // namespace pg
