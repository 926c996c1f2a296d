#include <map>
#include <sstream>

#include "doctest.h"

#include "depthmark/witness.hpp"
#include "test_support.hpp"

using namespace depthmark;
namespace dt = depthmark::testing;

TEST_CASE("witness offsets") {
    dist_matrix d(2, 1);
    d.at(0, 0) = 0.3;
    d.at(1, 0) = 0.5;
    CHECK(witness_offsets(d, 1) == std::vector<double>{0.3});
    CHECK(witness_offsets(d, 0) == std::vector<double>{0.0});

    dist_matrix d3(3, 1);
    d3.at(0, 0) = 0.5;
    d3.at(1, 0) = 0.3;
    d3.at(2, 0) = 0.7;
    CHECK(witness_offsets(d3, 2) == std::vector<double>{0.5});

    CHECK_THROWS(witness_offsets(d, 3));
}

TEST_CASE("edge insertion values") {
    SUBCASE("single witness") {
        dist_matrix d(2, 1);
        d.at(0, 0) = 0.3;
        d.at(1, 0) = 0.5;
        std::vector<double> offsets = witness_offsets(d, 1);
        dist_matrix e = edge_values(d, offsets);
        CHECK(e.at(0, 1) == doctest::Approx(0.2));
        CHECK(e.at(1, 0) == doctest::Approx(0.2));
        CHECK(e.at(0, 0) == 0.0);
    }
    SUBCASE("witness on both landmarks gives a zero edge") {
        dist_matrix d(2, 1);
        d.at(0, 0) = 0.4;
        d.at(1, 0) = 0.4;
        dist_matrix e = edge_values(d, witness_offsets(d, 1));
        CHECK(e.at(0, 1) == 0.0);
    }
    SUBCASE("minimum over witnesses") {
        dist_matrix d(2, 2);
        // candidate values 0.4 and 0.1 with nu = 0
        d.at(0, 0) = 0.4;
        d.at(1, 0) = 0.2;
        d.at(0, 1) = 0.1;
        d.at(1, 1) = 0.05;
        std::vector<double> zero(2, 0.0);
        dist_matrix e = edge_values(d, zero);
        CHECK(e.at(0, 1) == doctest::Approx(0.1));
    }
    dist_matrix empty(2, 0);
    std::vector<double> no_offsets;
    CHECK_THROWS_WITH(edge_values(empty, no_offsets), "empty witness set");
}

TEST_CASE("witnesses on the landmarks themselves") {
    std::vector<vec3> landmarks{{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}};
    dist_matrix d = landmark_witness_distances(landmarks, landmarks);
    dist_matrix e = edge_values(d, witness_offsets(d, 1));
    CHECK(e.at(0, 1) == doctest::Approx(1.0));
}

TEST_CASE("lazy witness clique rule") {
    // three landmarks with pairwise edge values (1, 1, 2): the triangle
    // appears at the max of its edges
    std::vector<vec3> landmarks{{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {0.5, 1.0, 0.0}};
    dist_matrix e(3, 3);
    e.at(0, 1) = e.at(1, 0) = 1.0;
    e.at(0, 2) = e.at(2, 0) = 1.0;
    e.at(1, 2) = e.at(2, 1) = 2.0;
    filtration f = flag_filtration(3, e, 2.1, 2);
    REQUIRE(simplex_count(f) == 7);
    const simplex& tri = f.simplices.back();
    CHECK(tri.dim == 2);
    CHECK(tri.value == doctest::Approx(2.0));

    // capping at r_max removes the heavy edge and its cofaces
    filtration capped = flag_filtration(3, e, 1.5, 2);
    CHECK(simplex_count(capped) == 5);  // 3 vertices + 2 light edges

    // an edge at exactly r_max stays
    filtration closed_cap = flag_filtration(3, e, 2.0, 2);
    CHECK(simplex_count(closed_cap) == 7);
}

TEST_CASE("lazy witness pipeline on coincident witnesses") {
    std::vector<vec3> landmarks{{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}};
    witness_config cfg{1, 2.1, 2};
    filtration f = build_lazy_witness(landmarks, landmarks, cfg);
    REQUIRE(simplex_count(f) == 3);
    CHECK(f.simplices[2].dim == 1);
    CHECK(f.simplices[2].value == doctest::Approx(1.0));

    filtration lone = build_lazy_witness(std::vector<vec3>{{0.0, 0.0, 0.0}},
                                         std::vector<vec3>{{0.2, 0.0, 0.0}}, cfg);
    CHECK(simplex_count(lone) == 1);
}

TEST_CASE("filtration structure invariants on random witness data") {
    rng gen(61ull);
    for (int rep = 0; rep < 15; ++rep) {
        point_cloud cloud = dt::random_planar_cloud(gen, 30);
        std::vector<vec3> landmarks(cloud.points.begin(), cloud.points.begin() + 8);
        witness_config cfg{1, 0.8, 2};
        filtration f = build_lazy_witness(landmarks, cloud.points, cfg);

        // order validity and the clique rule
        std::map<std::array<int, 4>, std::pair<int, double>> seen;
        for (std::size_t i = 0; i < f.simplices.size(); ++i) {
            const simplex& s = f.simplices[i];
            REQUIRE(s.value >= 0.0);
            REQUIRE(s.value <= cfg.r_max);
            if (i > 0) REQUIRE(f.simplices[i - 1].value <= s.value);
            if (s.dim == 2) {
                double worst = 0.0;
                for (int drop = 0; drop < 3; ++drop) {
                    std::array<int, 4> edge{-1, -1, -1, -1};
                    int w = 0;
                    for (int k = 0; k < 3; ++k)
                        if (k != drop) edge[w++] = s.verts[k];
                    auto it = seen.find(edge);
                    REQUIRE(it != seen.end());  // faces precede cofaces
                    worst = std::max(worst, it->second.second);
                }
                REQUIRE(s.value == doctest::Approx(worst));
            }
            seen[s.verts] = {s.dim, s.value};
        }

        // raising the cap never removes simplices or changes surviving values
        witness_config wider{1, 1.2, 2};
        filtration g = build_lazy_witness(landmarks, cloud.points, wider);
        REQUIRE(simplex_count(g) >= simplex_count(f));
        std::map<std::array<int, 4>, double> values;
        for (const simplex& s : g.simplices) values[s.verts] = s.value;
        for (const simplex& s : f.simplices) {
            auto it = values.find(s.verts);
            REQUIRE(it != values.end());
            REQUIRE(it->second == s.value);
        }
    }
}

TEST_CASE("edge values shrink as nu grows") {
    rng gen(67ull);
    point_cloud cloud = dt::random_planar_cloud(gen, 25);
    std::vector<vec3> landmarks(cloud.points.begin(), cloud.points.begin() + 6);
    dist_matrix d = landmark_witness_distances(landmarks, cloud.points);
    dist_matrix e0 = edge_values(d, witness_offsets(d, 0));
    dist_matrix e1 = edge_values(d, witness_offsets(d, 1));
    for (int a = 0; a < 6; ++a) {
        for (int b = 0; b < 6; ++b) {
            CHECK(e1.at(a, b) == e1.at(b, a));
            CHECK(e1.at(a, b) >= 0.0);
            CHECK(e1.at(a, b) <= e0.at(a, b));
        }
    }
}

TEST_CASE("filtration serialization") {
    std::vector<vec3> landmarks{{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}};
    witness_config cfg{1, 2.1, 2};
    filtration f = build_lazy_witness(landmarks, landmarks, cfg);
    std::ostringstream os;
    write_filtration(os, f);
    CHECK(os.str() == "0 : 0\n1 : 0\n0 1 : 1\n");
}
