#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "spb/invariants.hpp"
#include "spb/mesh.hpp"

using namespace spb;

namespace {

Domain unit_square() {
    DomainSpec s;
    s.kind = DomainKind::polygon;
    s.vertices = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    s.convex_hint = true;
    return generate_domain(s);
}

Domain unit_disk() {
    DomainSpec s;
    s.kind = DomainKind::disk;
    s.parameters["radius"] = 1.0;
    return generate_domain(s);
}

Domain dumbbell(double w) {
    DomainSpec s;
    s.kind = DomainKind::dumbbell;
    s.parameters = {{"ball_radius", 1.0}, {"neck_width", w}, {"neck_length", 1.0}};
    return generate_domain(s);
}

}  // namespace

TEST_CASE("square mesh at h=0.5: polygon area exact") {
    TriMesh m = triangulate(unit_square(), 0.5);
    check_mesh(m);
    CHECK(m.triangles.size() >= 8);
    CHECK(m.total_area() == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(euler_characteristic(m) == 1);
}

TEST_CASE("disk mesh area within 2%") {
    for (double h : {0.4, 0.1}) {
        TriMesh m = triangulate(unit_disk(), h);
        check_mesh(m);
        CHECK(m.total_area() == Catch::Approx(kPi).epsilon(0.02));
        CHECK(euler_characteristic(m) == 1);
    }
}

TEST_CASE("mesh quality invariants on varied domains") {
    DomainSpec hex;
    hex.kind = DomainKind::polygon;
    for (int i = 0; i < 6; ++i)
        hex.vertices.push_back({std::cos(i * kPi / 3), std::sin(i * kPi / 3)});
    DomainSpec st;
    st.kind = DomainKind::rounded_rectangle;
    st.parameters = {{"length", 1.0}, {"width", 0.2}, {"corner_radius", 0.1}};

    for (const Domain& d : {generate_domain(hex), generate_domain(st), dumbbell(0.3)}) {
        double h = (d.kind == DomainKind::rounded_rectangle) ? 0.05 : 0.1;
        TriMesh m = triangulate(d, h);
        check_mesh(m);  // throws on any violated invariant
        CHECK(m.min_angle() >= 20.0 * kPi / 180.0 - 1e-12);
        CHECK(m.max_edge() <= 1.5 * h);
        CHECK(euler_characteristic(m) == 1);
        CHECK(m.total_area() == Catch::Approx(d.area()).epsilon(0.02));
    }
}

TEST_CASE("unresolvable neck rejected with feature diagnostic") {
    try {
        triangulate(dumbbell(0.05), 0.1);
        FAIL("expected rejection");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("feature") != std::string::npos);
    }
    CHECK_THROWS_AS(triangulate(unit_square(), 5.0), std::invalid_argument);
    CHECK_THROWS_AS(triangulate(unit_square(), -1.0), std::invalid_argument);
}

TEST_CASE("refine quadruples and preserves polygon area") {
    TriMesh m = triangulate(unit_square(), 0.5);
    size_t t0 = m.triangles.size();
    TriMesh r = refine(m);
    CHECK(r.triangles.size() == 4 * t0);
    CHECK(r.h == Catch::Approx(m.h / 2));
    CHECK(r.total_area() == Catch::Approx(1.0).epsilon(1e-12));
    check_mesh(r);
    TriMesh rr = refine(r);
    CHECK(rr.total_area() == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(rr.h == Catch::Approx(0.125));
    check_mesh(rr);
}

TEST_CASE("refine re-projects boundary vertices onto the circle") {
    TriMesh m = triangulate(unit_disk(), 0.2);
    TriMesh r = refine(m);
    check_mesh(r);
    r.rebuild_boundary_flags();
    for (size_t v = 0; v < r.vertices.size(); ++v) {
        if (!r.on_boundary((int)v)) continue;
        CHECK(std::abs(r.vertices[v].norm() - 1.0) <= 1e-12);
    }
    // area converges from below, second order
    double a0 = m.total_area(), a1 = r.total_area(), a2 = refine(r).total_area();
    CHECK(a0 < a1);
    CHECK(a1 < a2);
    CHECK(a2 < kPi);
    CHECK((kPi - a2) < 0.3 * (kPi - a1));
}

TEST_CASE("mesh text format round trip") {
    TriMesh m = triangulate(unit_square(), 0.5);
    std::stringstream ss;
    write_mesh(ss, m);
    // header sanity: "V T B"
    std::stringstream probe(ss.str());
    size_t V, T, B;
    probe >> V >> T >> B;
    CHECK(V == m.vertices.size());
    CHECK(T == m.triangles.size());
    CHECK(B == m.boundary_edges.size());

    TriMesh back = read_mesh(ss);
    REQUIRE(back.vertices.size() == m.vertices.size());
    CHECK(back.total_area() == Catch::Approx(m.total_area()).epsilon(1e-15));
    CHECK(euler_characteristic(back) == 1);

    std::stringstream bad("3 1 0\n0 0\n1 0\n0 1\n0 1 7\n");
    CHECK_THROWS_AS(read_mesh(bad), std::invalid_argument);
}
