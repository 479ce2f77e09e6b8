#include <catch2/catch_amalgamated.hpp>

#include "spb/geometry.hpp"

using namespace spb;

TEST_CASE("segment basics") {
    Segment l = Segment::line({0, 0}, {2, 0});
    CHECK(l.length() == Catch::Approx(2.0));
    CHECK(l.point(0.5).x == Catch::Approx(1.0));
    CHECK(l.inward_normal(0.5).y == Catch::Approx(1.0));  // interior left of +x travel

    Segment a = Segment::arc({0, 0}, 1.0, 0, kPi);
    CHECK(a.length() == Catch::Approx(kPi));
    CHECK(a.point(0.5).y == Catch::Approx(1.0));
    // ccw outer arc: inward normal points to the center
    Vec2 nu = a.inward_normal(0.5);
    CHECK(nu.y == Catch::Approx(-1.0).margin(1e-12));

    // cw traversal flips tangent and normal
    Segment cw = Segment::arc({0, 0}, 1.0, kPi, 0);
    Vec2 nu2 = cw.inward_normal(0.5);
    CHECK(nu2.y == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("segment distance") {
    Segment l = Segment::line({0, 0}, {1, 0});
    CHECK(l.distance({0.5, 0.3}) == Catch::Approx(0.3));
    CHECK(l.distance({2, 0}) == Catch::Approx(1.0));

    Segment a = Segment::arc({0, 0}, 1.0, 0, kPi / 2);
    CHECK(a.distance({2, 0}) == Catch::Approx(1.0));
    CHECK(a.distance({0, 0.5}) == Catch::Approx(0.5));
    CHECK(a.distance({-1, 0}) == Catch::Approx(std::sqrt(2.0)));  // nearest endpoint (0,1)
}

TEST_CASE("ray hits") {
    Segment l = Segment::line({1, -1}, {1, 1});
    CHECK(l.ray_hit({0, 0}, {1, 0}) == Catch::Approx(1.0));
    CHECK(std::isinf(l.ray_hit({0, 0}, {-1, 0})));

    Segment c = Segment::arc({0, 0}, 2.0, 0, 2 * kPi);
    CHECK(c.ray_hit({0, 0}, {0, 1}) == Catch::Approx(2.0));
    CHECK(c.ray_hit({1, 0}, {1, 0}) == Catch::Approx(1.0));
}

TEST_CASE("polygon utilities") {
    std::vector<Vec2> sq = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    CHECK(polygon_signed_area(sq) == Catch::Approx(1.0));
    CHECK(polygon_is_simple(sq));
    CHECK(polygon_is_convex_ccw(sq));
    CHECK(point_in_polygon(sq, {0.5, 0.5}));
    CHECK_FALSE(point_in_polygon(sq, {1.5, 0.5}));

    std::vector<Vec2> bow = {{0, 0}, {1, 1}, {1, 0}, {0, 1}};
    CHECK_FALSE(polygon_is_simple(bow));

    std::vector<Vec2> notch = {{0, 0}, {2, 0}, {2, 2}, {1, 0.5}, {0, 2}};
    CHECK(polygon_is_simple(notch));
    CHECK_FALSE(polygon_is_convex_ccw(notch));
}

TEST_CASE("gauss quadrature is spectrally exact") {
    auto f = [](double x) { return std::sin(3 * x) + x * x * x; };
    double v = gauss_integrate(f, 0.0, 2.0, 4);
    double exact = (1 - std::cos(6.0)) / 3 + 4.0;
    CHECK(v == Catch::Approx(exact).epsilon(1e-14));
}

TEST_CASE("green moments over triangle and disk") {
    // unit right triangle (0,0),(1,0),(0,1): area 1/2, int x = 1/6, int x^2 = 1/12
    std::vector<std::pair<Vec2, Vec2>> edges = {{{0, 0}, {1, 0}}, {{1, 0}, {0, 1}}, {{0, 1}, {0, 0}}};
    auto tri_moment = [&](int p, int q) {
        double s = 0;
        for (auto& [a, b] : edges) s += moment_edge_line(a, b, p, q);
        return s;
    };
    CHECK(tri_moment(0, 0) == Catch::Approx(0.5).epsilon(1e-13));
    CHECK(tri_moment(1, 0) == Catch::Approx(1.0 / 6).epsilon(1e-12));
    CHECK(tri_moment(2, 0) == Catch::Approx(1.0 / 12).epsilon(1e-12));
    CHECK(tri_moment(1, 1) == Catch::Approx(1.0 / 24).epsilon(1e-11));

    // full disk radius 2 at (1,0): area 4pi, centroid x-moment 4pi
    double m00 = moment_edge_arc({1, 0}, 2.0, 0, 2 * kPi, 0, 0);
    double m10 = moment_edge_arc({1, 0}, 2.0, 0, 2 * kPi, 1, 0);
    double m20 = moment_edge_arc({1, 0}, 2.0, 0, 2 * kPi, 2, 0);
    CHECK(m00 == Catch::Approx(4 * kPi).epsilon(1e-13));
    CHECK(m10 == Catch::Approx(4 * kPi).epsilon(1e-13));
    // int x^2 over disk = int (1+u)^2 = area + 2*0 + int u^2 = 4pi + 4pi = 8pi
    CHECK(m20 == Catch::Approx(8 * kPi).epsilon(1e-13));
}

TEST_CASE("loop area line and arc mix") {
    // stadium-like loop: rectangle [-1,1]x[-1,1] with right side replaced by a half circle
    std::vector<Segment> loop;
    loop.push_back(Segment::line({-1, -1}, {1, -1}));
    loop.push_back(Segment::arc({1, 0}, 1.0, -kPi / 2, kPi / 2));
    loop.push_back(Segment::line({1, 1}, {-1, 1}));
    loop.push_back(Segment::line({-1, 1}, {-1, -1}));
    CHECK(loop_area(loop) == Catch::Approx(4.0 + kPi / 2).epsilon(1e-14));
}
