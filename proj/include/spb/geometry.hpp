#pragma once

// Planar geometry primitives: vectors, boundary segments (lines and circular
// arcs), polygon utilities, and boundary integration helpers used throughout
// the library. Boundaries are closed loops traversed counterclockwise, so the
// domain interior always lies to the left of the travel direction.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace spb {

inline constexpr double kPi = 3.14159265358979323846;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }

    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm2() const { return x * x + y * y; }
    double norm() const { return std::sqrt(norm2()); }
    Vec2 normalized() const {
        double n = norm();
        return n > 0 ? Vec2{x / n, y / n} : Vec2{0, 0};
    }
    // 90 degree counterclockwise rotation.
    Vec2 perp() const { return {-y, x}; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

inline double dist(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

struct BBox {
    Vec2 lo{std::numeric_limits<double>::max(), std::numeric_limits<double>::max()};
    Vec2 hi{std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};

    void expand(const Vec2& p) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
    }
    void pad(double m) { lo.x -= m; lo.y -= m; hi.x += m; hi.y += m; }
    double width() const { return hi.x - lo.x; }
    double height() const { return hi.y - lo.y; }
    double diam() const { return (hi - lo).norm(); }
};

// One piece of a domain boundary. Lines run from a to b. Arcs are centered at
// `center` with radius `radius`, traversed from angle a0 to a1; a1 > a0 means
// counterclockwise traversal, a1 < a0 clockwise (used for inner boundaries).
struct Segment {
    enum class Kind { line, arc };
    Kind kind = Kind::line;
    Vec2 a, b;            // line endpoints
    Vec2 center;          // arc center
    double radius = 0.0;  // arc radius
    double a0 = 0.0, a1 = 0.0;

    static Segment line(Vec2 a, Vec2 b) {
        Segment s;
        s.kind = Kind::line;
        s.a = a;
        s.b = b;
        return s;
    }
    static Segment arc(Vec2 center, double radius, double a0, double a1) {
        Segment s;
        s.kind = Kind::arc;
        s.center = center;
        s.radius = radius;
        s.a0 = a0;
        s.a1 = a1;
        return s;
    }

    double length() const {
        if (kind == Kind::line) return (b - a).norm();
        return radius * std::abs(a1 - a0);
    }

    // t in [0,1] along the traversal direction.
    Vec2 point(double t) const {
        if (kind == Kind::line) return a + (b - a) * t;
        double ang = a0 + (a1 - a0) * t;
        return center + Vec2{radius * std::cos(ang), radius * std::sin(ang)};
    }

    Vec2 start() const { return point(0.0); }
    Vec2 end() const { return point(1.0); }

    // Unit tangent in the travel direction.
    Vec2 tangent(double t) const {
        if (kind == Kind::line) return (b - a).normalized();
        double ang = a0 + (a1 - a0) * t;
        Vec2 ccw{-std::sin(ang), std::cos(ang)};
        return (a1 >= a0) ? ccw : ccw * -1.0;
    }

    // For ccw-oriented boundaries the interior is on the left.
    Vec2 inward_normal(double t) const { return tangent(t).perp(); }

    // Distance from p to this segment (as a curve).
    double distance(const Vec2& p) const {
        if (kind == Kind::line) {
            Vec2 d = b - a;
            double len2 = d.norm2();
            if (len2 == 0) return (p - a).norm();
            double t = std::clamp((p - a).dot(d) / len2, 0.0, 1.0);
            return (p - (a + d * t)).norm();
        }
        Vec2 r = p - center;
        double ang = std::atan2(r.y, r.x);
        if (angle_on_arc(ang)) return std::abs(r.norm() - radius);
        return std::min((p - start()).norm(), (p - end()).norm());
    }

    // Whether polar angle `ang` (any branch) lies within the swept arc.
    bool angle_on_arc(double ang) const {
        double lo = std::min(a0, a1), hi = std::max(a0, a1);
        double span = hi - lo;
        if (span >= 2 * kPi - 1e-14) return true;
        double t = std::fmod(ang - lo, 2 * kPi);
        if (t < 0) t += 2 * kPi;
        return t <= span + 1e-14;
    }

    // First hit of the ray p + s*dir, s > eps, with this segment; returns
    // +inf when the ray misses.
    double ray_hit(const Vec2& p, const Vec2& dir, double eps = 1e-12) const {
        double best = std::numeric_limits<double>::infinity();
        if (kind == Kind::line) {
            // Solve p + s dir = a + u (b - a).
            Vec2 e = b - a;
            double denom = dir.cross(e);
            if (std::abs(denom) < 1e-30) return best;
            Vec2 w = a - p;
            double s = w.cross(e) / denom;
            double u = w.cross(dir) / denom;
            if (s > eps && u >= -1e-12 && u <= 1 + 1e-12) best = s;
            return best;
        }
        // Circle intersection: |p + s dir - c|^2 = r^2.
        Vec2 f = p - center;
        double A = dir.norm2();
        double B = 2 * f.dot(dir);
        double C = f.norm2() - radius * radius;
        double disc = B * B - 4 * A * C;
        if (disc < 0) return best;
        double sq = std::sqrt(disc);
        for (double s : {(-B - sq) / (2 * A), (-B + sq) / (2 * A)}) {
            if (s <= eps) continue;
            Vec2 q = p + dir * s;
            double ang = std::atan2(q.y - center.y, q.x - center.x);
            if (angle_on_arc(ang) && s < best) best = s;
        }
        return best;
    }

    Segment scaled(double t) const {
        Segment s = *this;
        if (kind == Kind::line) {
            s.a = a * t;
            s.b = b * t;
        } else {
            s.center = center * t;
            s.radius = radius * t;
        }
        return s;
    }

    // Number of chords needed so that chord length <= h and sagitta <= h^2/8.
    int chord_count(double h) const {
        if (kind == Kind::line) {
            return std::max(1, (int)std::ceil(length() / h));
        }
        double span = std::abs(a1 - a0);
        // chord length 2 r sin(theta/2) <= h
        double th_len = (h >= 2 * radius) ? span : 2 * std::asin(std::min(1.0, h / (2 * radius)));
        // sagitta r (1 - cos(theta/2)) <= h^2/8
        double c = 1.0 - h * h / (8.0 * radius);
        double th_sag = (c <= -1) ? span : 2 * std::acos(std::clamp(c, -1.0, 1.0));
        // cap the angular step so polygonal area deficit stays below 2% even
        // for coarse h (relative deficit ~ theta^2/6 per full turn)
        double th = std::min({th_len, th_sag, 0.34});
        if (th <= 0) th = span;
        return std::max(1, (int)std::ceil(span / th));
    }
};

// ---------------------------------------------------------------------------
// Polygon utilities
// ---------------------------------------------------------------------------

inline double polygon_signed_area(const std::vector<Vec2>& v) {
    double s = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        const Vec2& p = v[i];
        const Vec2& q = v[(i + 1) % v.size()];
        s += p.cross(q);
    }
    return 0.5 * s;
}

inline bool point_in_polygon(const std::vector<Vec2>& v, const Vec2& p) {
    bool in = false;
    size_t n = v.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        if ((v[i].y > p.y) != (v[j].y > p.y)) {
            double xint = v[j].x + (v[i].x - v[j].x) * (p.y - v[j].y) / (v[i].y - v[j].y);
            if (p.x < xint) in = !in;
        }
    }
    return in;
}

inline bool segments_properly_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    auto orient = [](Vec2 p, Vec2 q, Vec2 r) {
        double v = (q - p).cross(r - p);
        if (v > 1e-14) return 1;
        if (v < -1e-14) return -1;
        return 0;
    };
    int o1 = orient(a, b, c), o2 = orient(a, b, d);
    int o3 = orient(c, d, a), o4 = orient(c, d, b);
    return o1 * o2 < 0 && o3 * o4 < 0;
}

// Simple = no two non-adjacent edges intersect.
inline bool polygon_is_simple(const std::vector<Vec2>& v) {
    size_t n = v.size();
    if (n < 3) return false;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            size_t i2 = (i + 1) % n, j2 = (j + 1) % n;
            if (i == j || i2 == j || i == j2) continue;  // adjacent share a vertex
            if (segments_properly_intersect(v[i], v[i2], v[j], v[j2])) return false;
        }
    }
    return true;
}

// Convexity of a ccw simple polygon via cross products at every corner.
inline bool polygon_is_convex_ccw(const std::vector<Vec2>& v) {
    size_t n = v.size();
    if (n < 3) return false;
    double scale = 0;
    for (size_t i = 0; i < n; ++i) scale = std::max(scale, (v[(i + 1) % n] - v[i]).norm());
    for (size_t i = 0; i < n; ++i) {
        Vec2 e1 = v[(i + 1) % n] - v[i];
        Vec2 e2 = v[(i + 2) % n] - v[(i + 1) % n];
        if (e1.cross(e2) < -1e-12 * scale * scale) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

// 16-point Gauss-Legendre rule on [-1, 1].
inline const std::array<double, 16>& gauss16_nodes() {
    static const std::array<double, 16> x = {
        -0.9894009349916499, -0.9445750230732326, -0.8656312023878318, -0.7554044083550030,
        -0.6178762444026438, -0.4580167776572274, -0.2816035507792589, -0.0950125098376374,
        0.0950125098376374,  0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
        0.7554044083550030,  0.8656312023878318,  0.9445750230732326,  0.9894009349916499};
    return x;
}
inline const std::array<double, 16>& gauss16_weights() {
    static const std::array<double, 16> w = {
        0.0271524594117541, 0.0622535239386479, 0.0951585116824928, 0.1246289712555339,
        0.1495959888165767, 0.1691565193950025, 0.1826034150449236, 0.1894506104550685,
        0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
        0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};
    return w;
}

// Integrate f over [a, b] with composite 16-point Gauss (nseg panels).
inline double gauss_integrate(const std::function<double(double)>& f, double a, double b,
                              int nseg = 1) {
    const auto& xs = gauss16_nodes();
    const auto& ws = gauss16_weights();
    double total = 0;
    double h = (b - a) / nseg;
    for (int s = 0; s < nseg; ++s) {
        double lo = a + s * h;
        double mid = lo + 0.5 * h, half = 0.5 * h;
        double acc = 0;
        for (int i = 0; i < 16; ++i) acc += ws[i] * f(mid + half * xs[i]);
        total += acc * half;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Green's-theorem moments over regions bounded by directed lines and arcs.
// For the monomial x^p y^q,   integral_R x^p y^q dA = oint x^{p+1}/(p+1) y^q dy
// taken along the (ccw) boundary of R.
// ---------------------------------------------------------------------------

// Contribution of the directed straight edge a->b to the (p,q) moment.
inline double moment_edge_line(const Vec2& a, const Vec2& b, int p, int q) {
    // x(t) = ax + t dx, y(t) = ay + t dy, dy = dy dt; integrand is a polynomial
    // in t of degree p+1+q <= 4 for the moments we need; 16-pt Gauss is exact.
    double dx = b.x - a.x, dy = b.y - a.y;
    if (dy == 0.0) return 0.0;
    auto f = [&](double t) {
        double x = a.x + t * dx, y = a.y + t * dy;
        return std::pow(x, p + 1) / (p + 1) * std::pow(y, q);
    };
    return gauss_integrate(f, 0.0, 1.0) * dy;
}

// Contribution of a directed arc (center c, radius r, from ang0 to ang1).
inline double moment_edge_arc(const Vec2& c, double r, double ang0, double ang1, int p, int q) {
    // Split into spans <= pi/2 so the Gauss rule is exact to machine precision.
    double span = ang1 - ang0;
    int nseg = std::max(1, (int)std::ceil(std::abs(span) / (kPi / 2)));
    auto f = [&](double th) {
        double x = c.x + r * std::cos(th), y = c.y + r * std::sin(th);
        double dydth = r * std::cos(th);
        return std::pow(x, p + 1) / (p + 1) * std::pow(y, q) * dydth;
    };
    return gauss_integrate(f, ang0, ang1, nseg);
}

// Exact area enclosed by a ccw loop of segments.
inline double loop_area(const std::vector<Segment>& loop) {
    double s = 0;
    for (const auto& seg : loop) {
        if (seg.kind == Segment::Kind::line) {
            s += 0.5 * seg.a.cross(seg.b);
        } else {
            // (1/2) oint (x dy - y dx) with x = cx + r cos th, y = cy + r sin th
            // gives the antiderivative (1/2)(r^2 th + cx r sin th - cy r cos th).
            double r = seg.radius;
            double cx = seg.center.x, cy = seg.center.y;
            auto G = [&](double th) {
                return 0.5 * (r * r * th + cx * r * std::sin(th) - cy * r * std::cos(th));
            };
            s += G(seg.a1) - G(seg.a0);
        }
    }
    return s;
}

}  // namespace spb
