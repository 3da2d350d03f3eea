#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <pg/catalog.hpp>
#include <pg/parallel.hpp>

#include <algorithm>
#include <numeric>
#include <random>

using namespace pg;

namespace {

/// Table data to the internal form: 0-based, sorted inside and across classes.
std::vector<std::vector<int>> normalized(std::vector<std::vector<int>> oneBased) {
    for (auto& c : oneBased) {
        for (int& x : c) --x;
        std::sort(c.begin(), c.end());
    }
    std::sort(oneBased.begin(), oneBased.end());
    return oneBased;
}

std::vector<std::vector<int>> normalized(const std::vector<ParallelClass>& classes) {
    std::vector<std::vector<int>> out;
    for (const auto& c : classes) out.push_back(c.line_indices);
    std::sort(out.begin(), out.end());
    return out;
}

/// Apply a point relabeling and re-sort lines into the canonical indexing.
IncidenceStructure relabel_points(const IncidenceStructure& S,
                                  const std::vector<int>& perm) {
    IncidenceStructure out;
    out.v = S.v;
    for (const Line& l : S.lines) {
        Line img;
        for (int p : l) img.push_back(perm[p]);
        std::sort(img.begin(), img.end());
        out.lines.push_back(std::move(img));
    }
    return out;
}

}  // namespace

TEST_CASE("disjointness graph of the 3x3 grid") {
    IncidenceStructure S;
    S.v = 9;
    S.lines = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6}, {1, 4, 7}, {2, 5, 8}};
    Graph d = disjointness_graph(S);
    // rows are pairwise disjoint, columns are pairwise disjoint, rows meet columns
    CHECK(d.adjacent(0, 1));
    CHECK(d.adjacent(1, 2));
    CHECK(d.adjacent(3, 4));
    CHECK_FALSE(d.adjacent(0, 3));
    CHECK(d.edge_count() == 6);

    auto classes = all_parallel_classes(S);
    REQUIRE(classes.size() == 2);
    CHECK(classes[0].line_indices == std::vector<int>{0, 1, 2});
    CHECK(classes[1].line_indices == std::vector<int>{3, 4, 5});
    // The two partitions into rows resp. columns share no line: not orthogonal.
    CHECK_THROWS_AS(make_orthogonal_family(S, classes), std::invalid_argument);
}

TEST_CASE("G1 has exactly the 28 published parallel classes, pairwise orthogonal") {
    IncidenceStructure g1 = builtin("G1");
    auto classes = all_parallel_classes(g1);
    REQUIRE(classes.size() == 28);
    CHECK(normalized(classes) == normalized(tables::g1_parallel_classes_1based()));

    OrthogonalFamily fam = make_orthogonal_family(g1, classes);
    CHECK(fam.m() == 28);
    Graph orth = orthogonality_graph(classes);
    CHECK(orth.edge_count() == 28LL * 27 / 2);  // complete: all pairs orthogonal

    PgParams p = params_from_dd(4, 2);
    CHECK(theorem1_bound(p, BoundSide::primal) == 28);
    CHECK(check_tightness(fam, p));
    for (int k : fam.multiplicities) CHECK(k == 4);
}

TEST_CASE("dual of G1 has exactly the 10 published classes") {
    IncidenceStructure d = dual(builtin("G1"));
    auto classes = all_parallel_classes(d);
    REQUIRE(classes.size() == 10);
    CHECK(normalized(classes) == normalized(tables::g1_dual_parallel_classes_1based()));

    OrthogonalFamily fam = make_orthogonal_family(d, classes);
    PgParams pDual = params_from_dd(2, 4);
    CHECK(theorem1_bound(pDual, BoundSide::primal) == 10);
    CHECK(theorem1_bound(params_from_dd(4, 2), BoundSide::dual) == 10);
    CHECK(check_tightness(fam, pDual));
    for (int k : fam.multiplicities) CHECK(k == 2);
}

TEST_CASE("G2 has exactly one parallel class, the published one") {
    IncidenceStructure g2 = builtin("G2");
    auto classes = all_parallel_classes(g2);
    REQUIRE(classes.size() == 1);
    std::vector<int> expected = tables::g2_unique_parallel_class_1based();
    for (int& x : expected) --x;
    std::sort(expected.begin(), expected.end());
    CHECK(classes[0].line_indices == expected);
}

TEST_CASE("dual of G2 has exactly the 10 published classes") {
    IncidenceStructure d = dual(builtin("G2"));
    auto classes = all_parallel_classes(d);
    REQUIRE(classes.size() == 10);
    CHECK(normalized(classes) == normalized(tables::g2_dual_parallel_classes_1based()));
    OrthogonalFamily fam = make_orthogonal_family(d, classes);
    CHECK(check_tightness(fam, params_from_dd(2, 4)));
}

TEST_CASE("counting identities hold on every produced orthogonal family") {
    auto check_identities = [](const IncidenceStructure& S, const OrthogonalFamily& f) {
        PgVerdict v = verify_pg(S);
        REQUIRE(v.is_pg);
        long long q1 = static_cast<long long>(S.v) / (v.s + 1);  // lines per class
        long long m = f.m();
        long long sum = 0, pairs = 0;
        for (int k : f.multiplicities) {
            sum += k;
            pairs += static_cast<long long>(k) * (k - 1);
        }
        CHECK(sum == m * q1);
        CHECK(pairs == m * (m - 1));
    };

    IncidenceStructure g1 = builtin("G1");
    check_identities(g1, max_orthogonal_family(g1));
    IncidenceStructure d1 = dual(g1);
    check_identities(d1, max_orthogonal_family(d1));
    IncidenceStructure w2 = builtin("W2");
    check_identities(w2, max_orthogonal_family(w2));
}

TEST_CASE("max_orthogonal_family on W2 finds all 6 classes") {
    IncidenceStructure w2 = builtin("W2");
    auto classes = all_parallel_classes(w2);
    CHECK(classes.size() == 6);
    OrthogonalFamily fam = max_orthogonal_family(w2);
    CHECK(fam.m() == 6);
    PgParams p = params_from_dd(2, 2);
    CHECK(theorem1_bound(p, BoundSide::primal) == 6);
    CHECK(check_tightness(fam, p));
}

TEST_CASE("theorem bound values for the larger parameter sets") {
    PgParams p = params_from_dd(8, 2);  // plane order 16, degree 8
    CHECK(theorem1_bound(p, BoundSide::primal) == 8 * (16 - 2 + 1));  // 120
    CHECK(theorem1_bound(p, BoundSide::dual) == 2 * (16 - 8 + 1));    // 18
    PgParams p4 = params_from_dd(4, 4);  // plane order 16, degree 4
    CHECK(theorem1_bound(p4, BoundSide::primal) == 52);
    CHECK(theorem1_bound(p4, BoundSide::dual) == 52);
}

TEST_CASE("parallel classes transform equivariantly under point relabeling") {
    IncidenceStructure g1 = builtin("G1");
    auto base = all_parallel_classes(g1);
    std::mt19937 rng(2718);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<int> perm(g1.v);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        IncidenceStructure h = relabel_points(g1, perm);
        // line j of h is the image of line j of g1, so the class index sets
        // must be identical as a set of sets
        CHECK(normalized(all_parallel_classes(h)) == normalized(base));
    }
}

TEST_CASE("non-pg input is rejected") {
    IncidenceStructure S;
    S.v = 4;
    S.lines = {{0, 1}, {2, 3}, {0, 2}};
    CHECK_THROWS_AS(all_parallel_classes(S), std::invalid_argument);
}
