#pragma once

// Geometric invariants of a domain: extrinsic/intrinsic diameter, inradius,
// maximal interior rolling-ball radius, and area. Closed forms are used where
// the generator kind admits one; otherwise values come from dense boundary
// sampling, a background-grid shortest-path solve, or a bisection march along
// inward normals. Every sampled quantity carries an error estimate bounded by
// the caller's resolution.

#include <queue>

#include <json.hpp>

#include "spb/domain.hpp"

namespace spb {

struct GeometricInvariants {
    int n = 2;
    double d = 0;             // extrinsic diameter
    double d_bar = 0;         // intrinsic diameter
    double inradius_rho = 0;  // largest inscribed ball
    double rad = 0;           // largest interior rolling ball
    double vol = 0;           // area
    double kappa = 0;         // lower-Ricci parameter (0 throughout)
    double inj_inverse = 0;   // 1/injectivity radius (0 planar, 1/b torus)
    double err_d = 0, err_d_bar = 0, err_inradius = 0, err_rad = 0;
    double resolution = 0;

    nlohmann::json to_json() const {
        return {{"n", n},         {"d", d},
                {"d_bar", d_bar}, {"inradius", inradius_rho},
                {"rad", rad},     {"vol", vol},
                {"kappa", kappa}, {"inj_inverse", inj_inverse},
                {"err", {{"d", err_d}, {"d_bar", err_d_bar}, {"inradius", err_inradius}, {"rad", err_rad}}},
                {"resolution", resolution}};
    }

    // Scale every length field by t (exact dilation identities).
    GeometricInvariants scaled(double t) const {
        GeometricInvariants s = *this;
        s.d *= t;
        s.d_bar *= t;
        s.inradius_rho *= t;
        s.rad *= t;
        s.vol *= t * t;
        s.inj_inverse /= t;
        s.err_d *= t;
        s.err_d_bar *= t;
        s.err_inradius *= t;
        s.err_rad *= t;
        s.resolution *= t;
        return s;
    }
};

namespace detail {

// True if some boundary junction turns left (interior angle < pi). Such a
// corner forces rad = 0: no interior ball can touch the boundary there only.
inline bool has_convex_corner(const Domain& dom) {
    const auto& b = dom.boundary;
    double scale = 0;
    for (const auto& s : b) scale = std::max(scale, s.length());
    for (size_t i = 0; i < b.size(); ++i) {
        Vec2 t1 = b[i].tangent(1.0);
        Vec2 t2 = b[(i + 1) % b.size()].tangent(0.0);
        if (t1.cross(t2) > 1e-9) return true;
    }
    return false;
}

// Largest r such that the ball of radius r tangent to the boundary at p
// (inward normal nu) stays inside. The predicate "B(p + t nu, t) inside" is
// monotone in t, so plain bisection applies.
inline double tangent_ball_radius(const Domain& dom, const Vec2& p, const Vec2& nu, double t_hi) {
    auto fits = [&](double t) {
        Vec2 c = p + nu * t;
        return dom.boundary_distance(c) >= t - 1e-9 * t_hi && dom.contains(c);
    };
    if (!fits(1e-9 * t_hi)) return 0.0;
    double lo = 0, hi = t_hi;
    if (fits(t_hi)) return t_hi;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * t_hi; ++it) {
        double mid = 0.5 * (lo + hi);
        (fits(mid) ? lo : hi) = mid;
    }
    return lo;
}

inline double rolling_ball_radius(const Domain& dom, double resolution, double d_hint) {
    if (has_convex_corner(dom)) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : dom.boundary) {
        int n = std::max(4, (int)std::ceil(s.length() / resolution));
        for (int i = 0; i < n; ++i) {
            double t = (i + 0.5) / n;
            best = std::min(best, tangent_ball_radius(dom, s.point(t), s.inward_normal(t), d_hint));
        }
    }
    return best;
}

inline std::vector<Vec2> boundary_samples(const Domain& dom, double step) {
    std::vector<Vec2> pts;
    for (const auto& s : dom.boundary) {
        int n = std::max(2, (int)std::ceil(s.length() / step));
        for (int i = 0; i < n; ++i) pts.push_back(s.point((double)i / n));
    }
    return pts;
}

inline double diameter_by_sampling(const Domain& dom, double step) {
    auto pts = boundary_samples(dom, step);
    double best = 0;
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, (pts[i] - pts[j]).norm2());
    return std::sqrt(best);
}

// Deterministic compass search used to polish grid optima of exact objectives.
inline Vec2 pattern_maximize(const std::function<double(Vec2)>& f, Vec2 start, double step,
                             double tol) {
    Vec2 cur = start;
    double fc = f(cur);
    while (step > tol) {
        bool moved = false;
        for (int k = 0; k < 8; ++k) {
            double a = k * kPi / 4;
            Vec2 cand = cur + Vec2{step * std::cos(a), step * std::sin(a)};
            double fv = f(cand);
            if (fv > fc) {
                cur = cand;
                fc = fv;
                moved = true;
            }
        }
        if (!moved) step *= 0.5;
    }
    return cur;
}

// Background grid clipped to the interior, 8-neighbor shortest paths,
// then line-of-sight shortcutting of the argmax path.
struct GeodesicGrid {
    const Domain& dom;
    double step;
    BBox box;
    int nx = 0, ny = 0;
    std::vector<int> node_of_cell;  // -1 when center is outside
    std::vector<Vec2> nodes;

    explicit GeodesicGrid(const Domain& d, double s) : dom(d), step(s) {
        box = d.bbox();
        box.pad(s);
        nx = (int)std::ceil(box.width() / s);
        ny = (int)std::ceil(box.height() / s);
        node_of_cell.assign((size_t)nx * ny, -1);
        for (int iy = 0; iy < ny; ++iy)
            for (int ix = 0; ix < nx; ++ix) {
                Vec2 p{box.lo.x + (ix + 0.5) * s, box.lo.y + (iy + 0.5) * s};
                if (dom.contains(p)) {
                    node_of_cell[(size_t)iy * nx + ix] = (int)nodes.size();
                    nodes.push_back(p);
                }
            }
    }

    int cell_node(int ix, int iy) const {
        if (ix < 0 || iy < 0 || ix >= nx || iy >= ny) return -1;
        return node_of_cell[(size_t)iy * nx + ix];
    }

    int nearest_node(const Vec2& p) const {
        int best = -1;
        double bd = std::numeric_limits<double>::max();
        for (size_t i = 0; i < nodes.size(); ++i) {
            double d2 = (nodes[i] - p).norm2();
            if (d2 < bd) {
                bd = d2;
                best = (int)i;
            }
        }
        return best;
    }

    void dijkstra(int src, std::vector<double>& dist, std::vector<int>& par) const {
        size_t N = nodes.size();
        dist.assign(N, std::numeric_limits<double>::infinity());
        par.assign(N, -1);
        using QE = std::pair<double, int>;
        std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
        dist[src] = 0;
        pq.push({0, src});
        // reverse-map node -> cell for neighbor lookup
        static thread_local std::vector<std::pair<int, int>> cell;
        cell.assign(N, {-1, -1});
        for (int iy = 0; iy < ny; ++iy)
            for (int ix = 0; ix < nx; ++ix) {
                int u = node_of_cell[(size_t)iy * nx + ix];
                if (u >= 0) cell[u] = {ix, iy};
            }
        const double s = step, sd = step * std::sqrt(2.0);
        while (!pq.empty()) {
            auto [du, u] = pq.top();
            pq.pop();
            if (du > dist[u]) continue;
            auto [ix, iy] = cell[u];
            auto relax = [&](int v, double w) {
                if (v < 0) return;
                if (dist[u] + w < dist[v]) {
                    dist[v] = dist[u] + w;
                    par[v] = u;
                    pq.push({dist[v], v});
                }
            };
            relax(cell_node(ix + 1, iy), s);
            relax(cell_node(ix - 1, iy), s);
            relax(cell_node(ix, iy + 1), s);
            relax(cell_node(ix, iy - 1), s);
            // diagonals only when both orthogonal neighbors exist (no corner cutting)
            if (cell_node(ix + 1, iy) >= 0 && cell_node(ix, iy + 1) >= 0) relax(cell_node(ix + 1, iy + 1), sd);
            if (cell_node(ix - 1, iy) >= 0 && cell_node(ix, iy + 1) >= 0) relax(cell_node(ix - 1, iy + 1), sd);
            if (cell_node(ix + 1, iy) >= 0 && cell_node(ix, iy - 1) >= 0) relax(cell_node(ix + 1, iy - 1), sd);
            if (cell_node(ix - 1, iy) >= 0 && cell_node(ix, iy - 1) >= 0) relax(cell_node(ix - 1, iy - 1), sd);
        }
    }

    bool segment_inside(const Vec2& p, const Vec2& q) const {
        double len = (q - p).norm();
        int n = std::max(2, (int)std::ceil(len / (0.5 * step)));
        for (int i = 1; i < n; ++i) {
            if (!dom.contains(p + (q - p) * ((double)i / n))) return false;
        }
        return true;
    }

    double straightened_length(const std::vector<int>& par, int src, int dst) const {
        std::vector<Vec2> path;
        for (int v = dst; v != -1; v = par[v]) path.push_back(nodes[v]);
        std::reverse(path.begin(), path.end());
        if (path.empty() || (path.front() - nodes[src]).norm() > 1e-12) return 0;
        double len = 0;
        size_t i = 0;
        while (i + 1 < path.size()) {
            size_t j = path.size() - 1;
            while (j > i + 1 && !segment_inside(path[i], path[j])) --j;
            len += (path[j] - path[i]).norm();
            i = j;
        }
        return len;
    }
};

inline double intrinsic_diameter_grid(const Domain& dom, double resolution) {
    GeodesicGrid g(dom, resolution);
    if (g.nodes.empty()) throw std::runtime_error("intrinsic diameter: resolution too coarse for domain");
    std::vector<double> dist;
    std::vector<int> par;
    double best = 0;
    int src = 0;
    // farthest-point sweeps, keeping the best straightened pair
    for (int sweep = 0; sweep < 4; ++sweep) {
        g.dijkstra(src, dist, par);
        int far = src;
        double dmax = 0;
        for (size_t i = 0; i < dist.size(); ++i)
            if (dist[i] < std::numeric_limits<double>::infinity() && dist[i] > dmax) {
                dmax = dist[i];
                far = (int)i;
            }
        best = std::max(best, g.straightened_length(par, src, far));
        src = far;
    }
    return best;
}

inline double revolution_profile(double R, double x) { return std::exp(-x * R) / R; }

}  // namespace detail

inline GeometricInvariants invariants(const Domain& dom, double resolution) {
    if (resolution <= 0) throw std::invalid_argument("invariants: resolution must be positive");
    GeometricInvariants inv;
    inv.resolution = resolution;

    if (dom.kind == DomainKind::torus) {
        double a = dom.param("a"), b = dom.param("b");
        inv.d = inv.d_bar = 0.5 * std::sqrt(a * a + b * b);
        inv.vol = a * b;
        inv.inj_inverse = 1.0 / b;
        return inv;
    }
    if (dom.kind == DomainKind::revolution) {
        double R = dom.param("R");
        auto f = [R](double x) { return detail::revolution_profile(R, x); };
        auto fp = [R](double x) { return -std::exp(-x * R); };
        // extrinsic diameter: sup over (x1, x2) with opposite azimuths
        auto chord = [&](Vec2 p) {
            double x1 = std::clamp(p.x, 0.0, 1.0), x2 = std::clamp(p.y, 0.0, 1.0);
            double dy = f(x1) + f(x2), dx = x1 - x2;
            return std::sqrt(dx * dx + dy * dy);
        };
        Vec2 best{0, 1};
        double bv = 0;
        int n = 256;
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) {
                Vec2 p{(double)i / n, (double)j / n};
                double v = chord(p);
                if (v > bv) {
                    bv = v;
                    best = p;
                }
            }
        best = detail::pattern_maximize(chord, best, 1.0 / n, 1e-12);
        inv.d = inv.d_bar = chord(best);
        inv.err_d = inv.err_d_bar = 1e-9;
        inv.vol = gauss_integrate(
            [&](double x) { return 2 * kPi * f(x) * std::sqrt(1 + fp(x) * fp(x)); }, 0, 1, 128);
        return inv;
    }

    // --- planar domains ---
    inv.vol = dom.area();
    if (inv.vol <= 0) throw std::invalid_argument("invariants: degenerate (zero-area) domain");

    switch (dom.kind) {
        case DomainKind::polygon: {
            double best = 0;
            for (size_t i = 0; i < dom.poly.size(); ++i)
                for (size_t j = i + 1; j < dom.poly.size(); ++j)
                    best = std::max(best, (dom.poly[i] - dom.poly[j]).norm2());
            inv.d = std::sqrt(best);
            break;
        }
        case DomainKind::disk:
            inv.d = 2 * dom.param("radius");
            break;
        case DomainKind::rounded_rectangle: {
            double L = dom.param("length"), w = dom.param("width"), rc = dom.param("corner_radius");
            inv.d = std::hypot(L - 2 * rc, w - 2 * rc) + 2 * rc;
            break;
        }
        case DomainKind::dumbbell: {
            double rb = dom.param("ball_radius"), w = dom.param("neck_width"), L = dom.param("neck_length");
            inv.d = L + 2 * std::sqrt(rb * rb - w * w / 4) + 2 * rb;
            break;
        }
        case DomainKind::annulus_sector: {
            double ro = dom.param("r_outer"), ang = dom.param("angle");
            inv.d = (ang >= kPi) ? 2 * ro : 2 * ro * std::sin(ang / 2);
            break;
        }
        default:
            inv.d = detail::diameter_by_sampling(dom, resolution);
            inv.err_d = resolution;
            break;
    }

    // intrinsic diameter: equals d for convex domains, shortest-path grid otherwise
    if (dom.convex) {
        inv.d_bar = inv.d;
        inv.err_d_bar = 0;
    } else {
        double db = detail::intrinsic_diameter_grid(dom, resolution);
        inv.d_bar = std::max(db, inv.d);
        inv.err_d_bar = 2 * resolution;
    }

    // inradius: analytic where the kind admits it, grid + polish otherwise
    switch (dom.kind) {
        case DomainKind::disk:
            inv.inradius_rho = dom.param("radius");
            break;
        case DomainKind::rounded_rectangle:
            inv.inradius_rho = dom.param("width") / 2;
            break;
        case DomainKind::dumbbell:
            inv.inradius_rho = dom.param("ball_radius");
            break;
        default: {
            BBox box = dom.bbox();
            double step = std::min({resolution, box.width() / 8, box.height() / 8});
            Vec2 bestp;
            double bestd = -1;
            int gx = (int)std::ceil(box.width() / step), gy = (int)std::ceil(box.height() / step);
            for (int iy = 0; iy <= gy; ++iy)
                for (int ix = 0; ix <= gx; ++ix) {
                    Vec2 p{box.lo.x + ix * step, box.lo.y + iy * step};
                    if (!dom.contains(p)) continue;
                    double bd = dom.boundary_distance(p);
                    if (bd > bestd) {
                        bestd = bd;
                        bestp = p;
                    }
                }
            if (bestd < 0) throw std::runtime_error("invariants: resolution too coarse for domain");
            auto depth = [&](Vec2 p) { return dom.contains(p) ? dom.boundary_distance(p) : -dom.boundary_distance(p); };
            bestp = detail::pattern_maximize(depth, bestp, step, 1e-12 * inv.d);
            inv.inradius_rho = depth(bestp);
            inv.err_inradius = resolution;
            break;
        }
    }

    inv.rad = detail::rolling_ball_radius(dom, resolution, inv.d / 2);
    inv.err_rad = (inv.rad > 0) ? resolution : 0.0;

    // consistency: 0 <= rad <= inradius <= d/2 <= d_bar/2, with sampling slack
    double slack = 1e-9 * inv.d + inv.err_rad + inv.err_inradius;
    if (inv.rad < 0 || inv.rad > inv.inradius_rho + slack || inv.inradius_rho > inv.d / 2 + slack ||
        inv.d > inv.d_bar + 1e-9 * inv.d)
        throw std::logic_error("invariants: ordering 0 <= rad <= inradius <= d/2 <= d_bar/2 violated for " + dom.id);
    return inv;
}

}  // namespace spb
