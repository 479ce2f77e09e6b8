#pragma once

// Lowest eigenpairs of the sparse symmetric pencil K u = lambda M u.
// Small problems go through a dense generalized solver; larger ones use
// shift-invert block Lanczos: a sparse Cholesky of (K - sigma M) drives a
// block Krylov space that is kept M-orthonormal by full reorthogonalization,
// with Rayleigh-Ritz extraction and explicit residual checks. Also houses the
// counting function, multiplicity clustering, and the two-mesh Richardson
// pipeline.

#include <random>

#include <Eigen/SparseCholesky>
#include <json.hpp>

#include "spb/fem.hpp"
#include "spb/invariants.hpp"

namespace spb {

struct Cluster {
    int start = 0;
    int size = 1;
    double value = 0;
};

struct SpectrumSummary {
    BoundaryCondition bc = BoundaryCondition::neumann;
    double h = 0;                      // finest mesh target edge length (0 for oracles)
    std::vector<double> eigenvalues;   // finest-mesh values (Galerkin upper) or exact
    std::vector<double> extrapolated;  // Richardson values (empty for oracles)
    std::vector<double> err_estimate;  // |extrapolated - raw| per eigenvalue
    std::vector<double> residuals;
    std::vector<Cluster> clusters;
    Eigen::MatrixXd eigenvectors;      // columns, M-orthonormal, finest mesh dofs
    std::string source = "fem";

    // Conservative accessors: upper bounds use raw Galerkin values, lower
    // bounds use extrapolated-minus-error.
    double upper(int k) const { return eigenvalues.at(k); }
    double lower(int k) const {
        if (extrapolated.empty()) return eigenvalues.at(k);
        return extrapolated.at(k) - err_estimate.at(k);
    }

    nlohmann::json to_json() const {
        nlohmann::json cl = nlohmann::json::array();
        for (const auto& c : clusters) cl.push_back({c.start, c.size});
        return {{"bc", to_string(bc)},
                {"h", h},
                {"eigenvalues", eigenvalues},
                {"clusters", cl},
                {"residuals", residuals},
                {"extrapolated", extrapolated},
                {"source", source}};
    }
};

struct EigOptions {
    int k_max = 10;
    double tol = 1e-9;
    std::uint64_t seed = 1;
    int block = 6;  // >= expected max multiplicity + 2
    bool want_vectors = false;
};

struct EigResult {
    std::vector<double> values;
    Eigen::MatrixXd vectors;  // M-orthonormal columns
    std::vector<double> residuals;
};

namespace eigdetail {

inline double rand_unit(std::mt19937_64& rng) {
    return 2.0 * ((rng() >> 11) * 0x1.0p-53) - 1.0;
}

inline std::vector<double> explicit_residuals(const Eigen::SparseMatrix<double>& K,
                                              const Eigen::SparseMatrix<double>& M,
                                              const std::vector<double>& vals,
                                              const Eigen::MatrixXd& vecs) {
    std::vector<double> res(vals.size());
    for (size_t i = 0; i < vals.size(); ++i) {
        Eigen::VectorXd u = vecs.col((long)i);
        Eigen::VectorXd mu = M * u;
        res[i] = (K * u - vals[i] * mu).norm() / std::max(mu.norm(), 1e-300);
    }
    return res;
}

}  // namespace eigdetail

// Lowest k_max+1 eigenpairs of K u = lambda M u, all eigenvalues >= sigma.
inline EigResult lowest_eigenpairs(const Eigen::SparseMatrix<double>& K,
                                   const Eigen::SparseMatrix<double>& M, double sigma,
                                   const EigOptions& opt) {
    using Eigen::MatrixXd;
    using Eigen::VectorXd;
    const int n = (int)K.rows();
    const int nev = opt.k_max + 1;
    if (nev < 1) throw std::invalid_argument("eigensolve: k_max must be >= 0");
    if (2 * nev > n)
        throw std::invalid_argument("eigensolve: k_max must stay below half the matrix dimension (n=" +
                                    std::to_string(n) + ")");

    EigResult out;
    if (n <= 500) {
        MatrixXd Kd(K), Md(M);
        Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXd> es(Kd, Md);
        if (es.info() != Eigen::Success) throw std::runtime_error("eigensolve: dense solver failed");
        out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + nev);
        out.vectors = es.eigenvectors().leftCols(nev);
        out.residuals = eigdetail::explicit_residuals(K, M, out.values, out.vectors);
        return out;
    }

    Eigen::SparseMatrix<double> A = K - sigma * M;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(A);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigensolve: factorization of (K - sigma M) failed");

    const int b = std::max(2, opt.block);
    const int m_max = std::min(n, std::max(4 * nev, nev + 10 * b) + 4 * b);
    std::mt19937_64 rng(opt.seed);

    MatrixXd Q(n, m_max), Y(n, m_max);  // basis and A*basis
    int m = 0;

    auto m_orthonormalize = [&](VectorXd& v) -> bool {
        double before = std::sqrt(v.dot(M * v));
        for (int pass = 0; pass < 2; ++pass) {
            if (m > 0) {
                VectorXd c = Q.leftCols(m).transpose() * (M * v);
                v -= Q.leftCols(m) * c;
            }
        }
        double nr = std::sqrt(std::max(v.dot(M * v), 0.0));
        if (nr < 1e-10 * (before + 1.0)) return false;
        v /= nr;
        return true;
    };

    auto append_block = [&](MatrixXd Z) {
        for (int j = 0; j < Z.cols() && m < m_max; ++j) {
            VectorXd v = Z.col(j);
            if (!m_orthonormalize(v)) {
                // direction exhausted; restart with a fresh random vector
                for (int i = 0; i < n; ++i) v[i] = eigdetail::rand_unit(rng);
                if (!m_orthonormalize(v)) continue;
            }
            Q.col(m) = v;
            Y.col(m) = solver.solve(M * v);
            ++m;
        }
    };

    {
        MatrixXd Z(n, b);
        Z.col(0).setOnes();  // captures a Neumann kernel immediately
        for (int j = 1; j < b; ++j)
            for (int i = 0; i < n; ++i) Z(i, j) = eigdetail::rand_unit(rng);
        append_block(Z);
    }

    MatrixXd vectors;
    std::vector<double> values;
    std::vector<double> resid;
    while (true) {
        // Rayleigh-Ritz on the current space for the shift-inverted operator
        MatrixXd T = Q.leftCols(m).transpose() * (M * Y.leftCols(m));
        T = 0.5 * (T + T.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(T);
        // largest theta of (K-sigma M)^{-1} M correspond to smallest lambda
        int avail = std::min(nev, m);
        values.clear();
        MatrixXd S(m, avail);
        for (int i = 0; i < avail; ++i) {
            double theta = es.eigenvalues()[m - 1 - i];
            values.push_back(sigma + 1.0 / theta);
            S.col(i) = es.eigenvectors().col(m - 1 - i);
        }
        vectors = Q.leftCols(m) * S;
        resid = eigdetail::explicit_residuals(K, M, values, vectors);
        bool ok = (avail == nev);
        for (int i = 0; ok && i < nev; ++i)
            if (resid[i] > opt.tol * std::max(std::abs(values[i]), 1.0)) ok = false;
        if (ok) break;
        if (m >= m_max) {
            double worst = *std::max_element(resid.begin(), resid.end());
            throw std::runtime_error("eigensolve: no convergence within iteration budget; achieved residual " +
                                     std::to_string(worst));
        }
        // expand with A times the newest block
        int take = std::min(b, m_max - m);
        MatrixXd Z = Y.middleCols(m - std::min(b, m), std::min(b, m)).leftCols(take);
        int m_before = m;
        append_block(Z);
        if (m == m_before)
            throw std::runtime_error("eigensolve: Krylov space stalled before convergence");
    }

    // sort ascending (Ritz order already ascending in lambda, but make it exact)
    std::vector<int> order(values.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
    std::sort(order.begin(), order.end(), [&](int a, int b2) { return values[a] < values[b2]; });
    out.values.resize(values.size());
    out.vectors.resize(n, (long)values.size());
    out.residuals.resize(values.size());
    for (size_t i = 0; i < order.size(); ++i) {
        out.values[i] = values[order[i]];
        out.vectors.col((long)i) = vectors.col(order[i]);
        out.residuals[i] = resid[order[i]];
    }
    return out;
}

// Multiplicity clustering: consecutive eigenvalues merge when the gap is below
// rel_gap * max(lambda_i, lambda_1).
inline std::vector<Cluster> cluster_multiplicities(const std::vector<double>& ev, double rel_gap) {
    if (!(rel_gap > 0 && rel_gap < 0.5))
        throw std::invalid_argument("cluster_multiplicities: rel_gap must lie in (0, 0.5)");
    std::vector<Cluster> out;
    if (ev.empty()) return out;
    double lam1 = ev.size() > 1 ? ev[1] : ev[0];
    Cluster cur{0, 1, ev[0]};
    for (size_t i = 1; i < ev.size(); ++i) {
        double scale = std::max(ev[i - 1], lam1);
        if (ev[i] - ev[i - 1] <= rel_gap * scale) {
            cur.size++;
        } else {
            out.push_back(cur);
            cur = {(int)i, 1, 0};
        }
        // representative value: running mean
    }
    out.push_back(cur);
    for (auto& c : out) {
        double s = 0;
        for (int i = 0; i < c.size; ++i) s += ev[c.start + i];
        c.value = s / c.size;
    }
    return out;
}

inline std::vector<Cluster> cluster_multiplicities(const SpectrumSummary& s, double rel_gap) {
    return cluster_multiplicities(s.eigenvalues, rel_gap);
}

// N(lambda) = #{ i : lambda_i < lambda }, strict.
inline int counting_function(const SpectrumSummary& s, double lambda) {
    if (s.eigenvalues.empty() || lambda > s.eigenvalues.back())
        throw std::runtime_error("counting_function: insufficient spectrum; largest usable lambda = " +
                                 std::to_string(s.eigenvalues.empty() ? 0.0 : s.eigenvalues.back()));
    int n = 0;
    for (double v : s.eigenvalues)
        if (v < lambda) ++n;
    return n;
}

inline SpectrumSummary solve_lowest(const AssembledProblem& p, const EigOptions& opt) {
    double sigma = (p.bc == BoundaryCondition::neumann) ? -1.0 : 0.0;
    EigResult r = lowest_eigenpairs(p.K, p.M, sigma, opt);
    SpectrumSummary s;
    s.bc = p.bc;
    s.h = p.mesh_h;
    s.eigenvalues = r.values;
    s.residuals = r.residuals;
    if (opt.want_vectors) s.eigenvectors = r.vectors;
    s.clusters = cluster_multiplicities(s.eigenvalues, 1e-6);
    return s;
}

// Meshes at h and h/2 (nested refinement), solves both, Richardson-extrapolates
// assuming O(h^2) eigenvalue error. Eigenvectors, when requested, come from the
// fine mesh; the fine mesh itself is returned through *fine_mesh when given.
inline SpectrumSummary solve_domain_spectrum(const Domain& dom, BoundaryCondition bc, double h,
                                             const EigOptions& opt, TriMesh* fine_mesh = nullptr,
                                             AssembledProblem* fine_problem = nullptr) {
    TriMesh coarse = triangulate(dom, h);
    TriMesh fine = refine(coarse);
    AssembledProblem pc = assemble(coarse, bc);
    AssembledProblem pf = assemble(fine, bc);
    EigOptions copt = opt;
    copt.want_vectors = false;
    EigResult rc = lowest_eigenpairs(pc.K, pc.M, bc == BoundaryCondition::neumann ? -1.0 : 0.0, copt);
    EigResult rf = lowest_eigenpairs(pf.K, pf.M, bc == BoundaryCondition::neumann ? -1.0 : 0.0, opt);

    SpectrumSummary s;
    s.bc = bc;
    s.h = fine.h;
    s.eigenvalues = rf.values;
    s.residuals = rf.residuals;
    if (opt.want_vectors) s.eigenvectors = rf.vectors;
    s.extrapolated.resize(rf.values.size());
    s.err_estimate.resize(rf.values.size());
    double max_rel = 0;
    for (size_t k = 0; k < rf.values.size(); ++k) {
        double corr = (rf.values[k] - rc.values[k]) / 3.0;
        s.extrapolated[k] = rf.values[k] + corr;
        s.err_estimate[k] = std::abs(corr);
        if (rf.values[k] > 1e-9) max_rel = std::max(max_rel, s.err_estimate[k] / rf.values[k]);
    }
    double rel_gap = std::max(1e-6, 20.0 * max_rel);
    if (rel_gap >= 0.5) rel_gap = 0.49;
    s.clusters = cluster_multiplicities(s.eigenvalues, rel_gap);
    if (fine_mesh) *fine_mesh = std::move(fine);
    if (fine_problem) *fine_problem = std::move(pf);
    return s;
}

}  // namespace spb
