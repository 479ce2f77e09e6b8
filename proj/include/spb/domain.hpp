#pragma once

// Domain data model: parametric specs (JSON-facing), generated boundary
// representations, and dilation. Planar domains carry a ccw loop of line/arc
// segments plus an analytic inside test; the two model surfaces (flat torus,
// surface of revolution) carry parameters only and are handled by the
// closed-form oracles.

#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "spb/geometry.hpp"

namespace spb {

enum class DomainKind { polygon, disk, rounded_rectangle, dumbbell, annulus_sector, torus, revolution };

inline std::string to_string(DomainKind k) {
    switch (k) {
        case DomainKind::polygon: return "polygon";
        case DomainKind::disk: return "disk";
        case DomainKind::rounded_rectangle: return "rounded_rectangle";
        case DomainKind::dumbbell: return "dumbbell";
        case DomainKind::annulus_sector: return "annulus_sector";
        case DomainKind::torus: return "torus";
        case DomainKind::revolution: return "revolution";
    }
    return "?";
}

inline DomainKind domain_kind_from_string(const std::string& s) {
    for (DomainKind k : {DomainKind::polygon, DomainKind::disk, DomainKind::rounded_rectangle,
                         DomainKind::dumbbell, DomainKind::annulus_sector, DomainKind::torus,
                         DomainKind::revolution}) {
        if (to_string(k) == s) return k;
    }
    throw std::invalid_argument("unknown domain kind: " + s);
}

// Parametric description, JSON schema:
//   {"kind": "...", "parameters": {...}, "convex_hint": bool}
// Polygon vertices are carried inside parameters as "vertices": [[x,y],...].
struct DomainSpec {
    DomainKind kind = DomainKind::disk;
    std::map<std::string, double> parameters;
    std::vector<Vec2> vertices;  // polygon only
    bool convex_hint = false;

    nlohmann::json to_json() const {
        nlohmann::json p;
        for (const auto& [k, v] : parameters) p[k] = v;
        if (!vertices.empty()) {
            nlohmann::json vs = nlohmann::json::array();
            for (const auto& v : vertices) vs.push_back({v.x, v.y});
            p["vertices"] = vs;
        }
        return nlohmann::json{{"kind", to_string(kind)}, {"parameters", p}, {"convex_hint", convex_hint}};
    }

    static DomainSpec from_json(const nlohmann::json& j) {
        DomainSpec s;
        s.kind = domain_kind_from_string(j.at("kind").get<std::string>());
        s.convex_hint = j.value("convex_hint", false);
        if (j.contains("parameters")) {
            for (auto it = j.at("parameters").begin(); it != j.at("parameters").end(); ++it) {
                if (it.key() == "vertices") {
                    for (const auto& v : it.value()) s.vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
                } else {
                    s.parameters[it.key()] = it.value().get<double>();
                }
            }
        }
        return s;
    }
};

struct Domain {
    DomainKind kind = DomainKind::disk;
    std::string id;
    std::map<std::string, double> params;
    std::vector<Vec2> poly;          // polygon vertices (ccw)
    std::vector<Segment> boundary;   // ccw loop; empty for surfaces
    bool convex = false;
    bool is_surface = false;

    double param(const std::string& name) const {
        auto it = params.find(name);
        if (it == params.end()) throw std::invalid_argument("missing parameter: " + name);
        return it->second;
    }
    double param_or(const std::string& name, double def) const {
        auto it = params.find(name);
        return it == params.end() ? def : it->second;
    }

    bool contains(const Vec2& p) const {
        switch (kind) {
            case DomainKind::polygon:
                return point_in_polygon(poly, p);
            case DomainKind::disk: {
                Vec2 c{param_or("cx", 0), param_or("cy", 0)};
                return (p - c).norm2() <= param("radius") * param("radius");
            }
            case DomainKind::rounded_rectangle: {
                double hx = param("length") / 2 - param("corner_radius");
                double hy = param("width") / 2 - param("corner_radius");
                double dx = std::max(std::abs(p.x) - hx, 0.0);
                double dy = std::max(std::abs(p.y) - hy, 0.0);
                double rc = param("corner_radius");
                return dx * dx + dy * dy <= rc * rc;
            }
            case DomainKind::dumbbell: {
                double rb = param("ball_radius"), w = param("neck_width"), L = param("neck_length");
                if (std::abs(p.x) <= L / 2 && std::abs(p.y) <= w / 2) return true;
                double xc = L / 2 + std::sqrt(rb * rb - w * w / 4);
                if ((p - Vec2{xc, 0}).norm2() <= rb * rb) return true;
                if ((p - Vec2{-xc, 0}).norm2() <= rb * rb) return true;
                return false;
            }
            case DomainKind::annulus_sector: {
                double r = p.norm();
                if (r < param("r_inner") - 1e-15 || r > param("r_outer") + 1e-15) return false;
                double ang = std::atan2(p.y, p.x);
                if (ang < 0) ang += 2 * kPi;
                return ang <= param("angle") + 1e-15;
            }
            default:
                throw std::logic_error("contains() is not defined for model surfaces");
        }
    }

    double boundary_distance(const Vec2& p) const {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& s : boundary) best = std::min(best, s.distance(p));
        return best;
    }

    // Negative inside, positive outside.
    double signed_distance(const Vec2& p) const {
        double d = boundary_distance(p);
        return contains(p) ? -d : d;
    }

    BBox bbox() const {
        BBox b;
        for (const auto& s : boundary) {
            int n = std::max(8, s.chord_count(s.length() / 8 + 1e-300));
            for (int i = 0; i <= n; ++i) b.expand(s.point((double)i / n));
            if (s.kind == Segment::Kind::arc) {
                // axis extremes of the arc, if swept
                for (double ang : {0.0, kPi / 2, kPi, 3 * kPi / 2, -kPi / 2, -kPi, -3 * kPi / 2}) {
                    if (s.angle_on_arc(ang))
                        b.expand(s.center + Vec2{s.radius * std::cos(ang), s.radius * std::sin(ang)});
                }
            }
        }
        return b;
    }

    double perimeter() const {
        double s = 0;
        for (const auto& seg : boundary) s += seg.length();
        return s;
    }

    // Exact enclosed area for planar domains.
    double area() const {
        if (is_surface) throw std::logic_error("area(): use invariants() for model surfaces");
        return loop_area(boundary);
    }
};

namespace detail {

inline std::string fmt_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline void check_closed_ccw(const Domain& d) {
    const auto& b = d.boundary;
    for (size_t i = 0; i < b.size(); ++i) {
        Vec2 e = b[i].end(), s = b[(i + 1) % b.size()].start();
        if ((e - s).norm() > 1e-9)
            throw std::logic_error("internal: boundary loop of " + d.id + " is not closed");
    }
    if (loop_area(b) <= 0) throw std::logic_error("internal: boundary loop of " + d.id + " is not ccw");
}

}  // namespace detail

inline Domain generate_domain(const DomainSpec& spec) {
    Domain d;
    d.kind = spec.kind;
    d.params = spec.parameters;

    switch (spec.kind) {
        case DomainKind::polygon: {
            if (spec.vertices.size() < 3) throw std::invalid_argument("polygon: needs at least 3 vertices");
            if (!polygon_is_simple(spec.vertices))
                throw std::invalid_argument("polygon: vertex list is self-intersecting");
            if (polygon_signed_area(spec.vertices) <= 0)
                throw std::invalid_argument("polygon: vertices must be counterclockwise");
            d.poly = spec.vertices;
            for (size_t i = 0; i < d.poly.size(); ++i)
                d.boundary.push_back(Segment::line(d.poly[i], d.poly[(i + 1) % d.poly.size()]));
            d.convex = polygon_is_convex_ccw(d.poly);
            if (spec.convex_hint && !d.convex)
                throw std::invalid_argument("polygon: convex_hint asserted but polygon is not convex");
            d.id = "polygon_n" + std::to_string(d.poly.size());
            break;
        }
        case DomainKind::disk: {
            double r = spec.parameters.count("radius") ? spec.parameters.at("radius") : 0;
            if (r <= 0) throw std::invalid_argument("disk: radius must be positive");
            Vec2 c{d.param_or("cx", 0), d.param_or("cy", 0)};
            d.boundary.push_back(Segment::arc(c, r, 0, 2 * kPi));
            d.convex = true;
            d.id = "disk_r" + detail::fmt_g(r);
            break;
        }
        case DomainKind::rounded_rectangle: {
            double L = d.param("length"), w = d.param("width"), rc = d.param("corner_radius");
            if (L <= 0 || w <= 0) throw std::invalid_argument("rounded_rectangle: length/width must be positive");
            if (rc < 0 || rc > std::min(L, w) / 2 + 1e-15)
                throw std::invalid_argument("rounded_rectangle: corner_radius exceeds width/2");
            double hx = L / 2 - rc, hy = w / 2 - rc;
            std::vector<Segment> segs;
            segs.push_back(Segment::line({-hx, -w / 2}, {hx, -w / 2}));
            if (rc > 0) segs.push_back(Segment::arc({hx, -hy}, rc, -kPi / 2, 0));
            segs.push_back(Segment::line({L / 2, -hy}, {L / 2, hy}));
            if (rc > 0) segs.push_back(Segment::arc({hx, hy}, rc, 0, kPi / 2));
            segs.push_back(Segment::line({hx, w / 2}, {-hx, w / 2}));
            if (rc > 0) segs.push_back(Segment::arc({-hx, hy}, rc, kPi / 2, kPi));
            segs.push_back(Segment::line({-L / 2, hy}, {-L / 2, -hy}));
            if (rc > 0) segs.push_back(Segment::arc({-hx, -hy}, rc, kPi, 3 * kPi / 2));
            if (rc == 0) {
                // plain rectangle: connect the four side lines directly
                segs.clear();
                segs.push_back(Segment::line({-hx, -hy}, {hx, -hy}));
                segs.push_back(Segment::line({hx, -hy}, {hx, hy}));
                segs.push_back(Segment::line({hx, hy}, {-hx, hy}));
                segs.push_back(Segment::line({-hx, hy}, {-hx, -hy}));
            }
            for (const auto& s : segs)
                if (s.length() > 1e-14) d.boundary.push_back(s);
            d.convex = true;
            d.id = "rounded_rect_L" + detail::fmt_g(L) + "_w" + detail::fmt_g(w) + "_rc" + detail::fmt_g(rc);
            break;
        }
        case DomainKind::dumbbell: {
            double rb = d.param("ball_radius"), w = d.param("neck_width"), L = d.param("neck_length");
            if (rb <= 0 || w <= 0 || L <= 0) throw std::invalid_argument("dumbbell: parameters must be positive");
            if (w >= 2 * rb) throw std::invalid_argument("dumbbell: neck_width must be < 2*ball_radius");
            double c = std::sqrt(rb * rb - w * w / 4);
            double xc = L / 2 + c;
            double beta = std::atan2(w / 2, c);
            d.boundary.push_back(Segment::line({-L / 2, -w / 2}, {L / 2, -w / 2}));
            d.boundary.push_back(Segment::arc({xc, 0}, rb, beta - kPi, kPi - beta));
            d.boundary.push_back(Segment::line({L / 2, w / 2}, {-L / 2, w / 2}));
            d.boundary.push_back(Segment::arc({-xc, 0}, rb, beta, 2 * kPi - beta));
            d.convex = false;
            d.id = "dumbbell_rb" + detail::fmt_g(rb) + "_w" + detail::fmt_g(w) + "_L" + detail::fmt_g(L);
            break;
        }
        case DomainKind::annulus_sector: {
            double ri = d.param("r_inner"), ro = d.param("r_outer"), ang = d.param("angle");
            if (ro <= 0 || ri < 0 || ri >= ro) throw std::invalid_argument("annulus_sector: need 0 <= r_inner < r_outer");
            if (ang <= 0 || ang >= 2 * kPi) throw std::invalid_argument("annulus_sector: angle must be in (0, 2*pi)");
            Vec2 eo{ro, 0}, ei{ri, 0};
            Vec2 eoa{ro * std::cos(ang), ro * std::sin(ang)}, eia{ri * std::cos(ang), ri * std::sin(ang)};
            d.boundary.push_back(Segment::arc({0, 0}, ro, 0, ang));
            d.boundary.push_back(Segment::line(eoa, eia));
            if (ri > 0) d.boundary.push_back(Segment::arc({0, 0}, ri, ang, 0));
            d.boundary.push_back(Segment::line(ei, eo));
            d.convex = (ri == 0 && ang <= kPi + 1e-15);
            d.id = "annulus_ri" + detail::fmt_g(ri) + "_ro" + detail::fmt_g(ro) + "_a" + detail::fmt_g(ang);
            break;
        }
        case DomainKind::torus: {
            double a = d.param("a"), b = d.param("b");
            if (!(a >= b && b > 0)) throw std::invalid_argument("torus: need a >= b > 0");
            d.is_surface = true;
            d.convex = false;
            d.id = "torus_a" + detail::fmt_g(a) + "_b" + detail::fmt_g(b);
            break;
        }
        case DomainKind::revolution: {
            double R = d.param("R");
            if (R <= 0) throw std::invalid_argument("revolution: R must be positive");
            if (d.param_or("shell", 0) != 0)
                throw std::invalid_argument("revolution: only the surface model (shell=0) is supported");
            d.is_surface = true;
            d.convex = false;
            d.id = "revolution_R" + detail::fmt_g(R);
            break;
        }
    }

    if (!d.is_surface) {
        detail::check_closed_ccw(d);
        if (d.area() <= 0) throw std::invalid_argument("degenerate domain: non-positive area");
    }
    return d;
}

inline Domain scale_domain(const Domain& dom, double t) {
    if (t <= 0) throw std::invalid_argument("scale_domain: factor must be positive");
    Domain d = dom;
    for (auto& s : d.boundary) s = s.scaled(t);
    for (auto& v : d.poly) v = v * t;
    if (dom.kind == DomainKind::revolution)
        throw std::invalid_argument("scale_domain: the revolution surface family is not closed under dilation");
    for (auto& [k, v] : d.params) {
        if (k == "angle" || k == "shell") continue;  // dimensionless
        v *= t;
    }
    d.id = dom.id + "_x" + detail::fmt_g(t);
    return d;
}

}  // namespace spb
