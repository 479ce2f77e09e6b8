#pragma once

// P1 finite elements on triangle meshes: exact stiffness/mass assembly for the
// generalized eigenproblem K u = lambda M u, Dirichlet elimination, Rayleigh
// quotients, and a coordinate-format matrix dump.

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "spb/mesh.hpp"

namespace spb {

enum class BoundaryCondition { dirichlet, neumann };

inline std::string to_string(BoundaryCondition bc) {
    return bc == BoundaryCondition::dirichlet ? "dirichlet" : "neumann";
}
inline BoundaryCondition bc_from_string(const std::string& s) {
    if (s == "dirichlet") return BoundaryCondition::dirichlet;
    if (s == "neumann") return BoundaryCondition::neumann;
    throw std::invalid_argument("unknown boundary condition: " + s);
}

struct AssembledProblem {
    Eigen::SparseMatrix<double> K, M;
    BoundaryCondition bc = BoundaryCondition::neumann;
    std::vector<int> dof_map;   // mesh vertex -> matrix row (-1 eliminated)
    std::vector<Vec2> dof_pos;  // coordinates per dof
    int n = 0;
    double mesh_h = 0;
    double area = 0;

    // Nodal interpolation of a scalar field onto the dof vector.
    Eigen::VectorXd interpolate(const std::function<double(Vec2)>& f) const {
        Eigen::VectorXd u(n);
        for (int i = 0; i < n; ++i) u[i] = f(dof_pos[i]);
        return u;
    }
};

inline AssembledProblem assemble(const TriMesh& mesh, BoundaryCondition bc) {
    AssembledProblem p;
    p.bc = bc;
    p.mesh_h = mesh.h;
    mesh.rebuild_boundary_flags();

    size_t nv = mesh.vertices.size();
    p.dof_map.assign(nv, -1);
    for (size_t v = 0; v < nv; ++v) {
        if (bc == BoundaryCondition::dirichlet && mesh.on_boundary((int)v)) continue;
        p.dof_map[v] = p.n++;
        p.dof_pos.push_back(mesh.vertices[v]);
    }
    if (p.n == 0) throw std::invalid_argument("assemble: no degrees of freedom left");

    std::vector<Eigen::Triplet<double>> tk, tm;
    tk.reserve(mesh.triangles.size() * 9);
    tm.reserve(mesh.triangles.size() * 9);
    for (const auto& tr : mesh.triangles) {
        const Vec2 &a = mesh.vertices[tr[0]], &b = mesh.vertices[tr[1]], &c = mesh.vertices[tr[2]];
        double A = 0.5 * (b - a).cross(c - a);
        if (A < 1e-14) throw std::invalid_argument("assemble: degenerate triangle (area < 1e-14)");
        p.area += A;
        // grad of barycentric i is perp(opposite edge)/(2A), exact for P1
        Vec2 g[3] = {(c - b).perp() / (2 * A), (a - c).perp() / (2 * A), (b - a).perp() / (2 * A)};
        for (int i = 0; i < 3; ++i) {
            int di = p.dof_map[tr[i]];
            if (di < 0) continue;
            for (int j = 0; j < 3; ++j) {
                int dj = p.dof_map[tr[j]];
                if (dj < 0) continue;
                tk.emplace_back(di, dj, A * g[i].dot(g[j]));
                tm.emplace_back(di, dj, A / 12.0 * (i == j ? 2.0 : 1.0));
            }
        }
    }
    p.K.resize(p.n, p.n);
    p.M.resize(p.n, p.n);
    p.K.setFromTriplets(tk.begin(), tk.end());
    p.M.setFromTriplets(tm.begin(), tm.end());
    return p;
}

inline double rayleigh_quotient(const AssembledProblem& p, const Eigen::VectorXd& u) {
    if (u.size() != p.n) throw std::invalid_argument("rayleigh_quotient: size mismatch");
    double mm = u.dot(p.M * u);
    if (!(mm > 0) || mm < 1e-300) throw std::invalid_argument("rayleigh_quotient: zero M-norm");
    return u.dot(p.K * u) / mm;
}

// Coordinate text dump: header "n nnz sym", then "row col value" for the upper
// triangle (0-based indices).
inline void dump_matrix(std::ostream& os, const Eigen::SparseMatrix<double>& A) {
    long nnz = 0;
    for (int k = 0; k < A.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(A, k); it; ++it)
            if (it.row() <= it.col()) ++nnz;
    os << A.rows() << " " << nnz << " sym\n";
    char buf[96];
    for (int k = 0; k < A.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(A, k); it; ++it) {
            if (it.row() > it.col()) continue;
            std::snprintf(buf, sizeof buf, "%ld %ld %.17g\n", (long)it.row(), (long)it.col(), it.value());
            os << buf;
        }
}

}  // namespace spb
