#include <catch2/catch_amalgamated.hpp>

#include "spb/eigensolve.hpp"
#include "spb/oracle.hpp"

using namespace spb;

namespace {

Domain unit_square() {
    DomainSpec s;
    s.kind = DomainKind::polygon;
    s.vertices = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    return generate_domain(s);
}

Domain unit_disk() {
    DomainSpec s;
    s.kind = DomainKind::disk;
    s.parameters["radius"] = 1.0;
    return generate_domain(s);
}

}  // namespace

TEST_CASE("square spectra: FEM extrapolated vs oracle, k <= 12 at h = 0.04") {
    EigOptions opt;
    opt.k_max = 12;
    for (auto bc : {BoundaryCondition::dirichlet, BoundaryCondition::neumann}) {
        SpectrumSummary s = solve_domain_spectrum(unit_square(), bc, 0.04, opt);
        SpectrumSummary o = rectangle_spectrum(1, 1, bc, opt.k_max + 1);
        for (int k = 0; k <= opt.k_max; ++k) {
            if (o.eigenvalues[k] < 1e-9) {
                CHECK(std::abs(s.eigenvalues[k]) <= 1e-10 * s.eigenvalues[k + 1]);
            } else {
                CHECK(s.extrapolated[k] == Catch::Approx(o.eigenvalues[k]).epsilon(0.005));
                // Galerkin upper-bound property of the raw values
                CHECK(s.eigenvalues[k] >= o.eigenvalues[k] * (1 - 1e-10));
            }
        }
    }
}

TEST_CASE("disk dirichlet ground state matches the bessel oracle") {
    EigOptions opt;
    opt.k_max = 5;
    SpectrumSummary s = solve_domain_spectrum(unit_disk(), BoundaryCondition::dirichlet, 0.05, opt);
    CHECK(s.extrapolated[0] == Catch::Approx(5.783185962946785).epsilon(0.005));
    SpectrumSummary n = solve_domain_spectrum(unit_disk(), BoundaryCondition::neumann, 0.05, opt);
    CHECK(n.extrapolated[1] == Catch::Approx(std::pow(1.841183781340659, 2)).epsilon(0.005));
}

TEST_CASE("residual bound holds for every returned eigenpair") {
    TriMesh mesh = triangulate(unit_square(), 0.08);
    AssembledProblem p = assemble(mesh, BoundaryCondition::neumann);
    EigOptions opt;
    opt.k_max = 8;
    opt.tol = 1e-9;
    SpectrumSummary s = solve_lowest(p, opt);
    REQUIRE(s.residuals.size() == 9);
    for (size_t k = 0; k < s.residuals.size(); ++k)
        CHECK(s.residuals[k] <= opt.tol * std::max(std::abs(s.eigenvalues[k]), 1.0));
}

TEST_CASE("eigenvectors are M-orthonormal") {
    TriMesh mesh = triangulate(unit_square(), 0.06);
    AssembledProblem p = assemble(mesh, BoundaryCondition::dirichlet);
    EigOptions opt;
    opt.k_max = 6;
    opt.want_vectors = true;
    SpectrumSummary s = solve_lowest(p, opt);
    REQUIRE(s.eigenvectors.cols() == 7);
    Eigen::MatrixXd G = s.eigenvectors.transpose() * (p.M * s.eigenvectors);
    CHECK((G - Eigen::MatrixXd::Identity(7, 7)).norm() < 1e-8);
}

TEST_CASE("determinism: identical seeds give identical spectra") {
    TriMesh mesh = triangulate(unit_disk(), 0.1);
    AssembledProblem p = assemble(mesh, BoundaryCondition::neumann);
    EigOptions opt;
    opt.k_max = 6;
    opt.seed = 42;
    SpectrumSummary a = solve_lowest(p, opt);
    SpectrumSummary b = solve_lowest(p, opt);
    for (int k = 0; k <= 6; ++k) CHECK(a.eigenvalues[k] == b.eigenvalues[k]);
}

TEST_CASE("neumann <= dirichlet on the same mesh") {
    for (const Domain& d : {unit_square(), unit_disk()}) {
        TriMesh mesh = triangulate(d, 0.08);
        AssembledProblem pn = assemble(mesh, BoundaryCondition::neumann);
        AssembledProblem pd = assemble(mesh, BoundaryCondition::dirichlet);
        EigOptions opt;
        opt.k_max = 10;
        SpectrumSummary sn = solve_lowest(pn, opt);
        SpectrumSummary sd = solve_lowest(pd, opt);
        for (int k = 0; k <= 10; ++k) CHECK(sn.eigenvalues[k] <= sd.eigenvalues[k] * (1 + 1e-10));
    }
}

TEST_CASE("discrete eigenvalues decrease under refinement (nested spaces)") {
    TriMesh coarse = triangulate(unit_square(), 0.12);
    TriMesh fine = refine(coarse);
    EigOptions opt;
    opt.k_max = 10;
    for (auto bc : {BoundaryCondition::neumann, BoundaryCondition::dirichlet}) {
        SpectrumSummary sc = solve_lowest(assemble(coarse, bc), opt);
        SpectrumSummary sf = solve_lowest(assemble(fine, bc), opt);
        for (int k = 0; k <= 10; ++k) CHECK(sf.eigenvalues[k] <= sc.eigenvalues[k] * (1 + 1e-10));
    }
}

TEST_CASE("counting function strictness") {
    SpectrumSummary s = rectangle_spectrum(1, 1, BoundaryCondition::neumann, 12);
    double p2 = kPi * kPi;
    CHECK(counting_function(s, 1.0) == 1);             // only lambda_0 = 0
    CHECK(counting_function(s, p2 * (1 + 1e-6)) == 3);  // 0 and the pi^2 pair
    SpectrumSummary d = rectangle_spectrum(1, 1, BoundaryCondition::dirichlet, 12);
    CHECK(counting_function(d, 2 * p2) == 0);  // strict at nu_0

    CHECK_THROWS_AS(counting_function(s, 1e9), std::runtime_error);
    // exact lattice count cross-check
    CHECK(rectangle_counting(1, 1, BoundaryCondition::neumann, p2 + 1e-9) == 3);
    CHECK(counting_function(s, 20.0) == rectangle_counting(1, 1, BoundaryCondition::neumann, 20.0));
}

TEST_CASE("multiplicity clustering") {
    std::vector<double> ev = {0.0, 9.87, 9.87, 19.74};
    auto cl = cluster_multiplicities(ev, 1e-6);
    REQUIRE(cl.size() == 3);
    CHECK(cl[0].size == 1);
    CHECK(cl[1].size == 2);
    CHECK(cl[2].size == 1);

    // simple spectrum: all clusters singletons
    std::vector<double> simple = {1.0, 2.0, 3.5, 7.0};
    auto cs = cluster_multiplicities(simple, 1e-3);
    CHECK(cs.size() == 4);

    CHECK_THROWS_AS(cluster_multiplicities(simple, 0.7), std::invalid_argument);
    CHECK_THROWS_AS(cluster_multiplicities(simple, 0.0), std::invalid_argument);
}

TEST_CASE("scaling: eigenvalues transform by t^-2 within discretization error") {
    EigOptions opt;
    opt.k_max = 4;
    SpectrumSummary s1 = solve_domain_spectrum(unit_square(), BoundaryCondition::dirichlet, 0.08, opt);
    SpectrumSummary s3 =
        solve_domain_spectrum(scale_domain(unit_square(), 3.0), BoundaryCondition::dirichlet, 0.24, opt);
    for (int k = 0; k <= 4; ++k)
        CHECK(s3.extrapolated[k] == Catch::Approx(s1.extrapolated[k] / 9.0).epsilon(1e-4));
}

TEST_CASE("spectrum json fields") {
    SpectrumSummary s = rectangle_spectrum(1, 1, BoundaryCondition::neumann, 4);
    auto j = s.to_json();
    CHECK(j["bc"] == "neumann");
    CHECK(j["source"] == "oracle");
    CHECK(j["eigenvalues"].size() == 4);
    CHECK(j["clusters"][1][1] == 2);
}
