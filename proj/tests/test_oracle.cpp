#include <catch2/catch_amalgamated.hpp>

#include "spb/oracle.hpp"

using namespace spb;

TEST_CASE("bessel zeros match reference values") {
    CHECK(bessel_j_zero(0, 1) == Catch::Approx(2.404825557695773).epsilon(1e-12));
    CHECK(bessel_j_zero(0, 2) == Catch::Approx(5.520078110286311).epsilon(1e-12));
    CHECK(bessel_j_zero(1, 1) == Catch::Approx(3.831705970207512).epsilon(1e-12));
    CHECK(bessel_j_prime_zero(1, 1) == Catch::Approx(1.841183781340659).epsilon(1e-12));
    CHECK(bessel_j_prime_zero(2, 1) == Catch::Approx(3.054236928227140).epsilon(1e-12));
    // J_0' = -J_1: first nontrivial zero coincides with j_{1,1}
    CHECK(bessel_j_prime_zero(0, 1) == Catch::Approx(3.831705970207512).epsilon(1e-12));
}

TEST_CASE("bessel zero interlacing j_{m,s} < j_{m+1,s} < j_{m,s+1}") {
    for (int m = 0; m <= 10; ++m)
        for (int s = 1; s <= 10; ++s) {
            double a = bessel_j_zero(m, s), b = bessel_j_zero(m + 1, s), c = bessel_j_zero(m, s + 1);
            CHECK(a < b);
            CHECK(b < c);
        }
}

TEST_CASE("square spectra by separation of variables") {
    auto d = rectangle_spectrum(1, 1, BoundaryCondition::dirichlet, 5);
    double p2 = kPi * kPi;
    CHECK(d.eigenvalues[0] == Catch::Approx(2 * p2).epsilon(1e-13));
    CHECK(d.eigenvalues[1] == Catch::Approx(5 * p2).epsilon(1e-13));
    CHECK(d.eigenvalues[2] == Catch::Approx(5 * p2).epsilon(1e-13));
    CHECK(d.eigenvalues[3] == Catch::Approx(8 * p2).epsilon(1e-13));
    CHECK(d.eigenvalues[4] == Catch::Approx(10 * p2).epsilon(1e-13));

    auto nm = rectangle_spectrum(1, 1, BoundaryCondition::neumann, 4);
    CHECK(nm.eigenvalues[0] == 0.0);
    CHECK(nm.eigenvalues[1] == Catch::Approx(p2).epsilon(1e-13));
    CHECK(nm.eigenvalues[2] == Catch::Approx(p2).epsilon(1e-13));
    CHECK(nm.eigenvalues[3] == Catch::Approx(2 * p2).epsilon(1e-13));
    REQUIRE(nm.clusters.size() == 3);
    CHECK(nm.clusters[0].size == 1);
    CHECK(nm.clusters[1].size == 2);
    CHECK(nm.clusters[2].size == 1);

    // thin rectangle: nu_0 = pi^2 (1 + 1/eps^2)
    double eps = 0.01;
    auto thin = rectangle_spectrum(1, eps, BoundaryCondition::dirichlet, 1);
    CHECK(thin.eigenvalues[0] == Catch::Approx(p2 * (1 + 1 / (eps * eps))).epsilon(1e-13));
}

TEST_CASE("disk spectra via bessel zeros") {
    auto d = disk_spectrum(1.0, BoundaryCondition::dirichlet, 6);
    CHECK(d.eigenvalues[0] == Catch::Approx(5.783185962946785).epsilon(1e-11));  // j01^2
    // modes m = +-1 share j11^2
    CHECK(d.eigenvalues[1] == Catch::Approx(std::pow(3.831705970207512, 2)).epsilon(1e-11));
    CHECK(d.eigenvalues[2] == d.eigenvalues[1]);

    auto nm = disk_spectrum(1.0, BoundaryCondition::neumann, 6);
    CHECK(nm.eigenvalues[0] == 0.0);
    CHECK(nm.eigenvalues[1] == Catch::Approx(std::pow(1.841183781340659, 2)).epsilon(1e-11));
    CHECK(nm.eigenvalues[2] == nm.eigenvalues[1]);
    CHECK(nm.eigenvalues[3] == Catch::Approx(std::pow(3.054236928227140, 2)).epsilon(1e-11));

    // scaling: radius 2 gives one quarter of the radius-1 values
    auto d2 = disk_spectrum(2.0, BoundaryCondition::dirichlet, 6);
    for (int k = 0; k < 6; ++k)
        CHECK(d2.eigenvalues[k] == Catch::Approx(d.eigenvalues[k] / 4).epsilon(1e-12));
}

TEST_CASE("torus lattice spectrum") {
    auto t = torus_spectrum(1, 1, 10);
    CHECK(t.eigenvalues[0] == 0.0);
    double w = 4 * kPi * kPi;
    for (int k = 1; k <= 4; ++k) CHECK(t.eigenvalues[k] == Catch::Approx(w).epsilon(1e-13));
    REQUIRE(t.clusters.size() >= 3);
    CHECK(t.clusters[0].size == 1);
    CHECK(t.clusters[1].size == 4);  // (+-1, 0), (0, +-1)
    CHECK(t.clusters[2].size == 4);  // (+-1, +-1)

    // thin torus: first 50 nonzero eigenvalues are q = 0 modes, 4 pi^2 p^2
    auto thin = torus_spectrum(1, 0.01, 52);
    for (int k = 1; k <= 50; ++k) {
        int p = (k + 1) / 2;
        CHECK(thin.eigenvalues[k] == Catch::Approx(w * p * p).epsilon(1e-12));
    }
}

TEST_CASE("oracle scaling identity") {
    auto s1 = rectangle_spectrum(1, 1, BoundaryCondition::dirichlet, 10);
    auto s3 = rectangle_spectrum(3, 3, BoundaryCondition::dirichlet, 10);
    for (int k = 0; k < 10; ++k)
        CHECK(s3.eigenvalues[k] == Catch::Approx(s1.eigenvalues[k] / 9).epsilon(1e-13));

    auto t1 = torus_spectrum(1, 0.5, 8);
    auto t2 = torus_spectrum(2, 1.0, 8);
    for (int k = 0; k < 8; ++k)
        CHECK(t2.eigenvalues[k] == Catch::Approx(t1.eigenvalues[k] / 4).epsilon(1e-13));
}

TEST_CASE("revolution surface first eigenvalue beats R^2/8") {
    for (double R : {4.0, 8.0}) {
        RevolutionSurface surf{R, 256};
        auto s = revolution_spectrum(surf, 8, 6);
        CHECK(s.eigenvalues[0] == Catch::Approx(0.0).margin(1e-6 * R * R));
        double lam1 = s.eigenvalues[1];
        CHECK(lam1 >= R * R / 8);
    }
}
