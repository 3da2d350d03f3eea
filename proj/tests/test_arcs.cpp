#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <pg/arcs.hpp>
#include <pg/autiso.hpp>
#include <pg/catalog.hpp>
#include <pg/gf2.hpp>

using namespace pg;

TEST_CASE("binary field arithmetic") {
    GF2k f8(8);
    // x * x^2 = x^3 = x + 1 with the usual cubic modulus
    CHECK(f8.mul(2, 4) == 3);
    for (int q : {2, 4, 8, 16}) {
        GF2k f(q);
        // nonzero elements form a group: every a has an inverse
        for (int a = 1; a < q; ++a) {
            bool hasInverse = false;
            for (int b = 1; b < q; ++b)
                if (f.mul(a, b) == 1) hasInverse = true;
            CHECK(hasInverse);
        }
        // Frobenius: squaring is additive in characteristic 2
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b)
                CHECK(f.mul(a ^ b, a ^ b) == (f.mul(a, a) ^ f.mul(b, b)));
    }
    CHECK_THROWS_AS(GF2k(6), std::invalid_argument);
}

TEST_CASE("desarguesian planes satisfy the plane axioms") {
    for (int q : {2, 4, 8, 16}) {
        ProjectivePlane P = desarguesian_plane(q);
        CHECK(P.q == q);
        CHECK(P.structure.v == q * q + q + 1);
        CHECK(P.structure.b() == q * q + q + 1);
        std::string why;
        auto got = verify_plane(P.structure, &why);
        REQUIRE_MESSAGE(got.has_value(), why);
        CHECK(*got == q);
        CHECK(static_cast<int>(plane_coordinates(P).size()) == P.structure.v);
    }
}

TEST_CASE("verify_plane rejects near-planes") {
    ProjectivePlane P = desarguesian_plane(4);
    IncidenceStructure broken = P.structure;
    std::swap(broken.lines[0], broken.lines[1]);  // still a plane: order-free
    CHECK(verify_plane(broken).has_value());
    broken.lines[0] = broken.lines[1];  // duplicate line
    CHECK_FALSE(verify_plane(broken).has_value());
}

TEST_CASE("binary plane ranks") {
    CHECK(rank2(desarguesian_plane(4).structure) == 10);
    CHECK(rank2(desarguesian_plane(8).structure) == 28);
}

TEST_CASE("regular hyperovals") {
    for (int q : {4, 8, 16}) {
        ProjectivePlane P = desarguesian_plane(q);
        MaximalArc oval = regular_hyperoval(P);
        CHECK(static_cast<int>(oval.points.size()) == q + 2);
        CHECK(oval.degree == 2);
        std::string why;
        auto d = verify_arc(P, oval.points, &why);
        REQUIRE_MESSAGE(d.has_value(), why);
        CHECK(*d == 2);
    }
}

TEST_CASE("verify_arc rejects non-arcs") {
    ProjectivePlane P = desarguesian_plane(4);
    // A full line is not a maximal arc: its secants meet it in 5 points.
    CHECK_FALSE(verify_arc(P, P.structure.lines[0]).has_value());
    // A single point has degree pattern {0,1}, not two-valued {0,d} with d>=2.
    CHECK_FALSE(verify_arc(P, {0}).has_value());
}

TEST_CASE("dual plane and dual arc") {
    ProjectivePlane P = desarguesian_plane(8);
    ProjectivePlane D = dual_plane(P);
    CHECK(verify_plane(D.structure).value_or(-1) == 8);

    MaximalArc oval = regular_hyperoval(P);
    MaximalArc dualOval = dual_arc(oval, D);
    // exterior lines of a degree-d arc form a degree-(q/d) arc of the dual plane
    CHECK(dualOval.degree == 4);
    CHECK(dualOval.points.size() == 28);
    CHECK(verify_arc(D, dualOval.points).value_or(-1) == 4);

    ProjectivePlane P4 = desarguesian_plane(4);
    ProjectivePlane D4 = dual_plane(P4);
    MaximalArc oval4 = regular_hyperoval(P4);
    MaximalArc dual4 = dual_arc(oval4, D4);
    CHECK(dual4.degree == 2);
    CHECK(dual4.points.size() == 6);
}

TEST_CASE("construction from the plane of order 4 yields the generalized quadrangle") {
    ProjectivePlane P = desarguesian_plane(4);
    MaximalArc oval = regular_hyperoval(P);
    ArcGeometry G = construction1(P, oval);
    CHECK(G.geometry.v == 15);
    CHECK(G.geometry.b() == 15);
    CHECK(G.params == params_from_dd(2, 2));
    CHECK(verify_pg(G.geometry).is_pg);
    CHECK(are_isomorphic(G.geometry, builtin("W2")));

    // index maps are mutually inverse
    for (int p = 0; p < G.geometry.v; ++p)
        CHECK(G.pointOfPlanePoint[G.planePointOfPoint[p]] == p);
    for (int l = 0; l < G.geometry.b(); ++l)
        CHECK(G.lineOfPlaneLine[G.planeLineOfLine[l]] == l);

    OrthogonalFamily fam = pencil_orthogonal_family(P, oval, G);
    CHECK(fam.m() == 6);
    CHECK(check_tightness(fam, G.params));
}

TEST_CASE("construction from the plane of order 8 yields G1 via the dual arc") {
    ProjectivePlane P = desarguesian_plane(8);
    ProjectivePlane D = dual_plane(P);
    MaximalArc oval = regular_hyperoval(P);
    MaximalArc dualOval = dual_arc(oval, D);

    ArcGeometry G = construction1(D, dualOval);
    CHECK(G.geometry.v == 45);
    CHECK(G.geometry.b() == 63);
    CHECK(G.params == params_from_dd(4, 2));
    CHECK(are_isomorphic(G.geometry, builtin("G1")));

    OrthogonalFamily fam = pencil_orthogonal_family(D, dualOval, G);
    CHECK(fam.m() == 28);
    CHECK(check_tightness(fam, G.params));

    // the hyperoval side gives the dual geometry, a pg(6,4,3)
    ArcGeometry H = construction1(P, oval);
    CHECK(H.geometry.v == 63);
    CHECK(H.geometry.b() == 45);
    CHECK(H.params == params_from_dd(2, 4));
    CHECK(are_isomorphic(dual(H.geometry), builtin("G1")));
}

TEST_CASE("construction rejects degenerate input") {
    // q = 2: the hyperoval complement carries no geometry (alpha would be 0).
    ProjectivePlane P = desarguesian_plane(2);
    MaximalArc oval = regular_hyperoval(P);
    CHECK(oval.points.size() == 4);
    CHECK_THROWS(construction1(P, oval));
}
