#pragma once

// Ground-truth spectra: separable rectangles, disks via Bessel zeros, flat
// tori via lattice enumeration, and surfaces of revolution via separation of
// variables into 1D Sturm-Liouville problems solved with P1 elements.

#include "spb/eigensolve.hpp"

namespace spb {

// ---------------------------------------------------------------------------
// Bessel functions and their zeros
// ---------------------------------------------------------------------------

inline double bessel_j(int m, double x) {
    int am = std::abs(m);
    double v = std::cyl_bessel_j((double)am, x);
    return (m < 0 && (am & 1)) ? -v : v;
}

inline double bessel_j_prime(int m, double x) {
    return 0.5 * (bessel_j(m - 1, x) - bessel_j(m + 1, x));
}

namespace oracledetail {

// s-th positive root of f, scanning from x0 with the given step, then bisecting.
inline double scan_root(const std::function<double(double)>& f, double x0, double step, int s) {
    double x = x0;
    double fx = f(x);
    int found = 0;
    for (long it = 0; it < 2000000; ++it) {
        double xn = x + step;
        double fn = f(xn);
        if ((fx > 0) != (fn > 0) || fn == 0.0) {
            ++found;
            if (found == s) {
                double lo = x, hi = xn;
                for (int k = 0; k < 120 && hi - lo > 1e-15 * hi; ++k) {
                    double mid = 0.5 * (lo + hi);
                    if ((f(mid) > 0) == (fx > 0))
                        lo = mid;
                    else
                        hi = mid;
                }
                return 0.5 * (lo + hi);
            }
        }
        x = xn;
        fx = fn;
    }
    throw std::runtime_error("bessel zero scan failed");
}

}  // namespace oracledetail

// s-th positive zero of J_m (s >= 1), accurate to ~1e-13.
inline double bessel_j_zero(int m, int s) {
    if (s < 1) throw std::invalid_argument("bessel_j_zero: s >= 1");
    double start = std::max(0.5, (double)m);
    return oracledetail::scan_root([m](double x) { return bessel_j(m, x); }, start, 0.1, s);
}

// s-th positive zero of J'_m (s >= 1); the trivial zero of J'_0 at x = 0 is
// excluded (it corresponds to the constant Neumann mode, reported separately).
inline double bessel_j_prime_zero(int m, int s) {
    if (s < 1) throw std::invalid_argument("bessel_j_prime_zero: s >= 1");
    double start = std::max(0.25, 0.8 * m);
    return oracledetail::scan_root([m](double x) { return bessel_j_prime(m, x); }, start, 0.1, s);
}

// ---------------------------------------------------------------------------
// Closed-form spectra
// ---------------------------------------------------------------------------

namespace oracledetail {

inline SpectrumSummary summary_from_values(std::vector<double> vals, BoundaryCondition bc, int count) {
    std::sort(vals.begin(), vals.end());
    if ((int)vals.size() < count)
        throw std::logic_error("oracle: internal cutoff produced too few eigenvalues");
    vals.resize(count);
    SpectrumSummary s;
    s.bc = bc;
    s.source = "oracle";
    s.eigenvalues = std::move(vals);
    s.clusters = cluster_multiplicities(s.eigenvalues, 1e-9);
    return s;
}

}  // namespace oracledetail

inline SpectrumSummary rectangle_spectrum(double a, double b, BoundaryCondition bc, int count) {
    if (a <= 0 || b <= 0) throw std::invalid_argument("rectangle_spectrum: sides must be positive");
    int lo = (bc == BoundaryCondition::dirichlet) ? 1 : 0;
    double cutoff = 4 * kPi * (count + 8.0) / (a * b) + 8 * kPi * kPi * (1 / (a * a) + 1 / (b * b));
    std::vector<double> vals;
    while (true) {
        vals.clear();
        int pmax = (int)std::ceil(a * std::sqrt(cutoff) / kPi) + 1;
        int qmax = (int)std::ceil(b * std::sqrt(cutoff) / kPi) + 1;
        for (int p = lo; p <= pmax; ++p)
            for (int q = lo; q <= qmax; ++q) {
                double v = kPi * kPi * (p * (double)p / (a * a) + q * (double)q / (b * b));
                if (v <= cutoff) vals.push_back(v);
            }
        if ((int)vals.size() >= count) break;
        cutoff *= 2;
    }
    return oracledetail::summary_from_values(std::move(vals), bc, count);
}

// Exact lattice count of rectangle eigenvalues strictly below lambda.
inline long rectangle_counting(double a, double b, BoundaryCondition bc, double lambda) {
    int lo = (bc == BoundaryCondition::dirichlet) ? 1 : 0;
    long n = 0;
    int pmax = (int)(a * std::sqrt(std::max(lambda, 0.0)) / kPi) + 2;
    int qmax = (int)(b * std::sqrt(std::max(lambda, 0.0)) / kPi) + 2;
    for (int p = lo; p <= pmax; ++p)
        for (int q = lo; q <= qmax; ++q)
            if (kPi * kPi * (p * (double)p / (a * a) + q * (double)q / (b * b)) < lambda) ++n;
    return n;
}

inline SpectrumSummary disk_spectrum(double radius, BoundaryCondition bc, int count) {
    if (radius <= 0) throw std::invalid_argument("disk_spectrum: radius must be positive");
    double lam_cut = 4.0 * (count + 16.0) / (radius * radius) + 40.0 / (radius * radius);
    std::vector<double> vals;
    while (true) {
        vals.clear();
        double xcut = radius * std::sqrt(lam_cut);
        if (bc == BoundaryCondition::neumann) vals.push_back(0.0);
        for (int m = 0;; ++m) {
            double first = (bc == BoundaryCondition::dirichlet) ? bessel_j_zero(m, 1) : bessel_j_prime_zero(m, 1);
            if (first > xcut) break;
            for (int s = 1;; ++s) {
                double x = (bc == BoundaryCondition::dirichlet) ? bessel_j_zero(m, s) : bessel_j_prime_zero(m, s);
                if (x > xcut) break;
                double v = (x / radius) * (x / radius);
                vals.push_back(v);
                if (m > 0) vals.push_back(v);  // cos/sin pair
            }
        }
        if ((int)vals.size() >= count) break;
        lam_cut *= 2;
    }
    return oracledetail::summary_from_values(std::move(vals), bc, count);
}

// Flat torus R^2 / (aZ x bZ): eigenvalues 4 pi^2 (p^2/a^2 + q^2/b^2), (p,q) in Z^2.
inline SpectrumSummary torus_spectrum(double a, double b, int count) {
    if (!(a >= b && b > 0)) throw std::invalid_argument("torus_spectrum: need a >= b > 0");
    double cutoff = 4 * kPi * (count + 8.0) / (a * b) + 16 * kPi * kPi / (b * b);
    std::vector<double> vals;
    while (true) {
        vals.clear();
        int pmax = (int)std::ceil(a * std::sqrt(cutoff) / (2 * kPi)) + 1;
        int qmax = (int)std::ceil(b * std::sqrt(cutoff) / (2 * kPi)) + 1;
        for (int p = -pmax; p <= pmax; ++p)
            for (int q = -qmax; q <= qmax; ++q) {
                double v = 4 * kPi * kPi * (p * (double)p / (a * a) + q * (double)q / (b * b));
                if (v <= cutoff) vals.push_back(v);
            }
        if ((int)vals.size() >= count) break;
        cutoff *= 2;
    }
    SpectrumSummary s = oracledetail::summary_from_values(std::move(vals), BoundaryCondition::neumann, count);
    s.source = "oracle";
    return s;
}

// ---------------------------------------------------------------------------
// Surface of revolution y^2 + z^2 = exp(-2xR)/R^2, x in [0,1]
// ---------------------------------------------------------------------------

struct RevolutionSurface {
    double R = 1;
    int grid = 256;  // starting grid; doubled until lambda_1 moves < 0.1%
};

namespace oracledetail {

// One angular mode: weak form
//   int A v' w' + int B v w = lambda int C v w on [0,1], natural ends,
// with A = f/sqrt(1+f'^2), B = m^2 sqrt(1+f'^2)/f, C = f sqrt(1+f'^2).
inline std::vector<double> revolution_mode(double R, int m, int n, int nev, std::uint64_t seed) {
    auto f = [R](double x) { return std::exp(-x * R) / R; };
    auto fp = [R](double x) { return -std::exp(-x * R); };
    std::vector<Eigen::Triplet<double>> tk, tm;
    double h = 1.0 / n;
    const auto& gx = gauss16_nodes();
    const auto& gw = gauss16_weights();
    for (int e = 0; e < n; ++e) {
        double x0 = e * h;
        double k[2][2] = {{0, 0}, {0, 0}}, mm[2][2] = {{0, 0}, {0, 0}};
        for (int q = 0; q < 16; ++q) {
            double xq = x0 + 0.5 * h * (1 + gx[q]);
            double wq = 0.5 * h * gw[q];
            double fv = f(xq), fpv = fp(xq), s = std::sqrt(1 + fpv * fpv);
            double A = fv / s, B = (double)m * m * s / fv, C = fv * s;
            double phi[2] = {(x0 + h - xq) / h, (xq - x0) / h};
            double dphi[2] = {-1 / h, 1 / h};
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    k[i][j] += wq * (A * dphi[i] * dphi[j] + B * phi[i] * phi[j]);
                    mm[i][j] += wq * C * phi[i] * phi[j];
                }
        }
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                tk.emplace_back(e + i, e + j, k[i][j]);
                tm.emplace_back(e + i, e + j, mm[i][j]);
            }
    }
    Eigen::SparseMatrix<double> K(n + 1, n + 1), M(n + 1, n + 1);
    K.setFromTriplets(tk.begin(), tk.end());
    M.setFromTriplets(tm.begin(), tm.end());
    EigOptions opt;
    opt.k_max = nev - 1;
    opt.tol = 1e-9;
    opt.seed = seed;
    EigResult r = lowest_eigenpairs(K, M, -1.0, opt);
    return r.values;
}

}  // namespace oracledetail

// Merged Neumann spectrum over angular modes 0..mode_max; the grid is doubled
// until the first nonzero eigenvalue moves by less than 0.1%.
inline SpectrumSummary revolution_spectrum(const RevolutionSurface& surf, int mode_max, int count) {
    if (mode_max < 8) throw std::invalid_argument("revolution_spectrum: mode_max must be >= 8");
    if (surf.R <= 0) throw std::invalid_argument("revolution_spectrum: R must be positive");
    auto lam1_at = [&](int n) {
        auto v0 = oracledetail::revolution_mode(surf.R, 0, n, 3, 7);
        auto v1 = oracledetail::revolution_mode(surf.R, 1, n, 2, 7);
        double best = std::numeric_limits<double>::infinity();
        for (double v : v0)
            if (v > 1e-9 * std::abs(v0.back())) best = std::min(best, v);
        best = std::min(best, v1[0]);
        return best;
    };
    int n = std::max(64, surf.grid);
    double prev = lam1_at(n);
    while (true) {
        int n2 = 2 * n;
        double cur = lam1_at(n2);
        if (std::abs(cur - prev) <= 1e-3 * std::abs(cur)) {
            n = n2;
            break;
        }
        prev = cur;
        n = n2;
        if (n > (1 << 15)) throw std::runtime_error("revolution_spectrum: grid convergence failure");
    }

    int per_mode = count + 1;
    std::vector<double> vals;
    for (int m = 0; m <= mode_max; ++m) {
        auto v = oracledetail::revolution_mode(surf.R, m, n, std::min(per_mode, n / 2 - 1), 7);
        for (double x : v) {
            if (m == 0)
                vals.push_back(std::max(x, 0.0));
            else {
                vals.push_back(x);
                vals.push_back(x);  // +/- m pair
            }
        }
    }
    SpectrumSummary s = oracledetail::summary_from_values(std::move(vals), BoundaryCondition::neumann,
                                                          std::min<int>(count, (int)vals.size()));
    s.h = 1.0 / n;
    return s;
}

}  // namespace spb
