#include <cmath>
#include <sstream>

#include "doctest.h"

#include "depthmark/persistence.hpp"
#include "oracles/bottleneck_oracle.hpp"
#include "oracles/persistence_oracle.hpp"
#include "test_support.hpp"

using namespace depthmark;
namespace dt = depthmark::testing;

namespace {

filtration triangle_boundary(double third_edge, double fill = -1.0) {
    filtration f;
    f.vertex_count = 3;
    for (int v = 0; v < 3; ++v) f.simplices.push_back({{v, -1, -1, -1}, 0, 0.0});
    f.simplices.push_back({{0, 1, -1, -1}, 1, 1.0});
    f.simplices.push_back({{0, 2, -1, -1}, 1, 1.0});
    f.simplices.push_back({{1, 2, -1, -1}, 1, third_edge});
    if (fill > 0.0) f.simplices.push_back({{0, 1, 2, -1}, 2, fill});
    return f;
}

int count_bars(const persistence_diagram& d, int dim, double birth, double death) {
    int c = 0;
    for (const bar& b : d.bars)
        c += (b.dim == dim && b.birth == birth &&
              (std::isinf(death) ? std::isinf(b.death) : b.death == death));
    return c;
}

}  // namespace

TEST_CASE("triangle boundary persistence") {
    const double inf = std::numeric_limits<double>::infinity();

    persistence_diagram open_loop = compute_persistence(triangle_boundary(2.0));
    CHECK(count_bars(open_loop, 0, 0.0, 1.0) == 2);
    CHECK(count_bars(open_loop, 0, 0.0, inf) == 1);
    CHECK(count_bars(open_loop, 1, 2.0, inf) == 1);
    CHECK(open_loop.bars.size() == 4);

    persistence_diagram filled = compute_persistence(triangle_boundary(2.0, 2.5));
    CHECK(count_bars(filled, 1, 2.0, 2.5) == 1);
    CHECK(count_bars(filled, 1, 2.0, inf) == 0);
}

TEST_CASE("single vertex persistence") {
    filtration f;
    f.vertex_count = 1;
    f.simplices.push_back({{0, -1, -1, -1}, 0, 0.0});
    persistence_diagram d = compute_persistence(f);
    REQUIRE(d.bars.size() == 1);
    CHECK(d.bars[0].dim == 0);
    CHECK(std::isinf(d.bars[0].death));
}

TEST_CASE("zero-length bars are discarded") {
    // edge arrives with its killing triangle at the same value
    filtration f = triangle_boundary(2.0, 2.0);
    persistence_diagram d = compute_persistence(f);
    CHECK(count_bars(d, 1, 2.0, 2.0) == 0);
    for (const bar& b : d.bars) CHECK(b.death > b.birth);
}

TEST_CASE("invalid face order is rejected") {
    filtration f;
    f.vertex_count = 2;
    f.simplices.push_back({{0, -1, -1, -1}, 0, 0.0});
    f.simplices.push_back({{0, 1, -1, -1}, 1, 0.5});  // vertex 1 missing
    CHECK_THROWS_WITH(compute_persistence(f), "not a filtration");

    filtration g;
    g.vertex_count = 2;
    g.simplices.push_back({{0, -1, -1, -1}, 0, 0.0});
    g.simplices.push_back({{0, 1, -1, -1}, 1, 0.5});
    g.simplices.push_back({{1, -1, -1, -1}, 0, 0.0});  // face after its coface
    CHECK_THROWS_WITH(compute_persistence(g), "not a filtration");
}

TEST_CASE("reduction agrees with the independent oracle on random witness filtrations") {
    rng gen(71ull);
    for (int rep = 0; rep < 25; ++rep) {
        point_cloud cloud = dt::random_planar_cloud(gen, 10 + static_cast<int>(gen.below(30)));
        int m = 3 + static_cast<int>(gen.below(7));
        std::vector<vec3> landmarks(cloud.points.begin(), cloud.points.begin() + m);
        witness_config cfg{static_cast<int>(gen.below(2)), 0.4 + gen.uniform(), 2 + static_cast<int>(gen.below(2))};
        filtration f = build_lazy_witness(landmarks, cloud.points, cfg);
        persistence_diagram fast = compute_persistence(f);
        persistence_diagram slow = oracle::naive_persistence_oracle(f);
        REQUIRE(oracle::same_diagram(fast, slow));

        for (int k = 0; k < 10; ++k) {
            double t = gen.uniform(0.0, cfg.r_max * 1.1);
            REQUIRE(oracle::euler_consistent(f, fast, t));
        }
    }
}

TEST_CASE("thresholded count") {
    persistence_diagram d;
    d.bars.push_back({1, 0.1, 0.6});   // lifetime 0.5
    d.bars.push_back({1, 0.2, 0.3});   // lifetime 0.1
    CHECK(thresholded_h1_count(d, 0.25) == 1);

    persistence_diagram only_inf;
    only_inf.bars.push_back({1, 0.1, std::numeric_limits<double>::infinity()});
    CHECK(thresholded_h1_count(only_inf, 0.25) == 0);

    persistence_diagram closed;
    closed.bars.push_back({1, 0.0, 0.25});
    CHECK(thresholded_h1_count(closed, 0.25) == 1);  // threshold is closed

    // monotone nonincreasing in the threshold
    persistence_diagram multi;
    multi.bars = {{1, 0.0, 0.1}, {1, 0.0, 0.3}, {1, 0.0, 0.7}, {1, 0.0, 1.4}};
    int prev = 1 << 20;
    for (double tau : {0.05, 0.1, 0.2, 0.4, 0.8, 1.6}) {
        int c = thresholded_h1_count(multi, tau);
        CHECK(c <= prev);
        prev = c;
    }
}

TEST_CASE("top lifetimes and the ratio") {
    persistence_diagram d;
    d.bars = {{1, 0.0, 0.7}, {1, 0.0, 0.3}, {1, 0.0, 0.1},
              {1, 0.0, std::numeric_limits<double>::infinity()}};
    std::vector<double> top = top_lifetimes(d, 1, 2);
    CHECK(top == std::vector<double>{0.7, 0.3});
    CHECK(lifetime_ratio(d, 1) == doctest::Approx(0.7 / 0.3));

    persistence_diagram none;
    CHECK(top_lifetimes(none, 1, 2) == std::vector<double>{0.0, 0.0});
    CHECK(std::isinf(lifetime_ratio(none, 1)));

    persistence_diagram lone;
    lone.bars = {{1, 0.0, 0.5}};
    CHECK(std::isinf(lifetime_ratio(lone, 1)));
}

TEST_CASE("bottleneck distance basics") {
    persistence_diagram a, b;
    a.bars = {{1, 0.0, 1.0}};
    b.bars = {{1, 0.0, 1.2}};
    CHECK(bottleneck_trimmed(a, a, 1, 0.0) == 0.0);
    CHECK(bottleneck_trimmed(a, b, 1, 0.0) == doctest::Approx(0.2));

    persistence_diagram empty;
    CHECK(bottleneck_trimmed(a, empty, 1, 0.0) == doctest::Approx(0.5));
    CHECK(bottleneck_trimmed(empty, empty, 1, 0.0) == 0.0);

    // trimming drops the short bar entirely
    persistence_diagram c;
    c.bars = {{1, 0.0, 1.0}, {1, 0.3, 0.32}};
    CHECK(bottleneck_trimmed(c, a, 1, 0.05) == 0.0);
}

TEST_CASE("bottleneck matches the exhaustive oracle on random diagrams") {
    rng gen(73ull);
    for (int rep = 0; rep < 60; ++rep) {
        auto random_diagram = [&gen]() {
            persistence_diagram d;
            int n = static_cast<int>(gen.below(7));
            for (int i = 0; i < n; ++i) {
                double birth = gen.uniform(0.0, 1.0);
                double life = gen.uniform(0.0, 1.0);
                d.bars.push_back({1, birth, birth + life});
            }
            return d;
        };
        persistence_diagram a = random_diagram();
        persistence_diagram b = random_diagram();
        double got = bottleneck_trimmed(a, b, 1, 0.0);
        double want = oracle::bottleneck_oracle(a, b, 1, 0.0);
        REQUIRE(got == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("bottleneck stability under witness perturbation") {
    // logged, not asserted: the distance between a diagram and its perturbed
    // counterpart should scale like the perturbation
    rng gen(79ull);
    point_cloud cloud = dt::random_planar_cloud(gen, 60);
    std::vector<vec3> landmarks(cloud.points.begin(), cloud.points.begin() + 8);
    witness_config cfg{1, 1.0, 2};
    persistence_diagram base = compute_persistence(build_lazy_witness(landmarks, cloud.points, cfg));

    for (double delta : {1e-4, 1e-3, 1e-2}) {
        point_cloud shaken = cloud;
        for (vec3& p : shaken.points) {
            p.x += gen.uniform(-delta, delta);
            p.y += gen.uniform(-delta, delta);
        }
        persistence_diagram moved =
            compute_persistence(build_lazy_witness(landmarks, shaken.points, cfg));
        double d = bottleneck_trimmed(base, moved, 1, 0.0);
        MESSAGE("delta ", delta, " -> trimmed bottleneck ", d);
        WARN(d <= 10.0 * delta);
    }
}

TEST_CASE("diagram serialization round trip") {
    persistence_diagram d;
    d.bars = {{0, 0.0, std::numeric_limits<double>::infinity()}, {1, 0.25, 0.75}};
    std::ostringstream os;
    write_diagram(os, d);
    std::istringstream is(os.str());
    persistence_diagram back = read_diagram(is);
    REQUIRE(back.bars.size() == 2);
    CHECK(back.bars[0].dim == 0);
    CHECK(std::isinf(back.bars[0].death));
    CHECK(back.bars[1].birth == doctest::Approx(0.25));
}
