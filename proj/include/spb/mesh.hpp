#pragma once

// Conforming triangulation of planar domains. Boundary curves are sampled at
// the target edge length (with chord-error control on arcs), interior points
// come from a triangular lattice, and a Ruppert-style pass inserts circumcenters
// or splits boundary subsegments until every kept triangle has min angle >= 20
// degrees and max edge <= 1.35 h. Uniform refinement splits each triangle in
// four and re-projects boundary midpoints onto the true curve.

#include <cstdint>
#include <deque>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "spb/domain.hpp"

namespace spb {

struct TriMesh {
    std::vector<Vec2> vertices;
    std::vector<std::array<int, 3>> triangles;  // ccw
    struct BEdge {
        int a = -1, b = -1;   // vertex indices, ordered along the boundary loop
        int seg_id = -1;      // index into `curve`, -1 when unknown (loaded meshes)
        double ta = 0, tb = 0;  // curve parameters of a and b on that segment
    };
    std::vector<BEdge> boundary_edges;
    std::vector<int> vertex_seg;   // curve segment id for boundary vertices, else -1
    std::vector<double> vertex_t;  // curve parameter for boundary vertices
    double h = 0;                  // target max edge length
    std::vector<Segment> curve;    // generating boundary, kept for re-projection

    double triangle_area(int t) const {
        const auto& tr = triangles[t];
        return 0.5 * (vertices[tr[1]] - vertices[tr[0]]).cross(vertices[tr[2]] - vertices[tr[0]]);
    }
    double total_area() const {
        double s = 0;
        for (size_t t = 0; t < triangles.size(); ++t) s += triangle_area((int)t);
        return s;
    }
    double min_angle() const {
        double best = kPi;
        for (const auto& tr : triangles) {
            for (int i = 0; i < 3; ++i) {
                Vec2 u = vertices[tr[(i + 1) % 3]] - vertices[tr[i]];
                Vec2 v = vertices[tr[(i + 2) % 3]] - vertices[tr[i]];
                double ang = std::atan2(std::abs(u.cross(v)), u.dot(v));
                best = std::min(best, ang);
            }
        }
        return best;
    }
    double max_edge() const {
        double best = 0;
        for (const auto& tr : triangles)
            for (int i = 0; i < 3; ++i)
                best = std::max(best, (vertices[tr[i]] - vertices[tr[(i + 1) % 3]]).norm());
        return best;
    }
    bool on_boundary(int v) const {
        if (boundary_flags.empty()) rebuild_boundary_flags();
        return boundary_flags[v] != 0;
    }
    void rebuild_boundary_flags() const {
        boundary_flags.assign(vertices.size(), 0);
        for (const auto& e : boundary_edges) {
            boundary_flags[e.a] = 1;
            boundary_flags[e.b] = 1;
        }
    }
    mutable std::vector<char> boundary_flags;
};

// ---------------------------------------------------------------------------
// Mesh validity / quality checks (the TriMesh invariants)
// ---------------------------------------------------------------------------

inline void check_mesh(const TriMesh& m) {
    for (size_t t = 0; t < m.triangles.size(); ++t)
        if (m.triangle_area((int)t) <= 0)
            throw std::logic_error("mesh: non-positive triangle area at " + std::to_string(t));

    // every boundary edge belongs to exactly one triangle; all one-sided edges
    // are boundary edges; boundary edges form closed loops
    std::map<std::pair<int, int>, int> edge_use;
    for (const auto& tr : m.triangles)
        for (int i = 0; i < 3; ++i) {
            int a = tr[i], b = tr[(i + 1) % 3];
            edge_use[{std::min(a, b), std::max(a, b)}]++;
        }
    std::map<std::pair<int, int>, int> bset;
    for (const auto& e : m.boundary_edges) bset[{std::min(e.a, e.b), std::max(e.a, e.b)}]++;
    for (const auto& [e, c] : edge_use) {
        if (c > 2) throw std::logic_error("mesh: edge used by more than two triangles");
        if (c == 1 && !bset.count(e)) throw std::logic_error("mesh: exposed edge not tagged as boundary");
        if (c == 2 && bset.count(e)) throw std::logic_error("mesh: interior edge tagged as boundary");
    }
    for (const auto& [e, c] : bset) {
        if (c != 1 || !edge_use.count(e) || edge_use.at(e) != 1)
            throw std::logic_error("mesh: boundary edge not used by exactly one triangle");
    }
    std::map<int, int> deg;
    for (const auto& e : m.boundary_edges) {
        deg[e.a]++;
        deg[e.b]++;
    }
    for (const auto& [v, c] : deg)
        if (c != 2) throw std::logic_error("mesh: boundary loop broken at vertex " + std::to_string(v));

    if (m.h > 0 && m.max_edge() > 1.5 * m.h) throw std::logic_error("mesh: max edge exceeds 1.5 h");
    if (m.min_angle() < 20.0 * kPi / 180.0 - 1e-12) throw std::logic_error("mesh: min angle below 20 degrees");
}

// Euler characteristic V - E + T for a simply connected mesh equals 1.
inline int euler_characteristic(const TriMesh& m) {
    std::map<std::pair<int, int>, int> edges;
    for (const auto& tr : m.triangles)
        for (int i = 0; i < 3; ++i)
            edges[{std::min(tr[i], tr[(i + 1) % 3]), std::max(tr[i], tr[(i + 1) % 3])}] = 1;
    return (int)m.vertices.size() - (int)edges.size() + (int)m.triangles.size();
}

// ---------------------------------------------------------------------------
// Delaunay / Ruppert machinery
// ---------------------------------------------------------------------------

namespace meshdetail {

inline int sign_with_guard(double det, double mag, long double detl, long double magl) {
    if (std::abs(det) > 1e-12 * mag) return det > 0 ? 1 : -1;
    if (std::abs((double)detl) > 1e-15 * (double)magl) return detl > 0 ? 1 : -1;
    return 0;
}

inline int orient2d(const Vec2& a, const Vec2& b, const Vec2& c) {
    double l = (b.x - a.x) * (c.y - a.y), r = (b.y - a.y) * (c.x - a.x);
    double det = l - r, mag = std::abs(l) + std::abs(r);
    long double ll = ((long double)b.x - a.x) * ((long double)c.y - a.y);
    long double rl = ((long double)b.y - a.y) * ((long double)c.x - a.x);
    return sign_with_guard(det, mag, ll - rl, std::abs(ll) + std::abs(rl));
}

// > 0 iff p strictly inside the circumcircle of ccw triangle (a, b, c).
inline int incircle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& p) {
    auto row = [&](const Vec2& v, double& x, double& y, double& w) {
        x = v.x - p.x;
        y = v.y - p.y;
        w = x * x + y * y;
    };
    double ax, ay, aw, bx, by, bw, cx, cy, cw;
    row(a, ax, ay, aw);
    row(b, bx, by, bw);
    row(c, cx, cy, cw);
    double t1 = ax * (by * cw - bw * cy);
    double t2 = ay * (bw * cx - bx * cw);
    double t3 = aw * (bx * cy - by * cx);
    double det = t1 + t2 + t3;
    double mag = std::abs(t1) + std::abs(t2) + std::abs(t3);
    auto rowl = [&](const Vec2& v, long double& x, long double& y, long double& w) {
        x = (long double)v.x - p.x;
        y = (long double)v.y - p.y;
        w = x * x + y * y;
    };
    long double lax, lay, law, lbx, lby, lbw, lcx, lcy, lcw;
    rowl(a, lax, lay, law);
    rowl(b, lbx, lby, lbw);
    rowl(c, lcx, lcy, lcw);
    long double l1 = lax * (lby * lcw - lbw * lcy);
    long double l2 = lay * (lbw * lcx - lbx * lcw);
    long double l3 = law * (lbx * lcy - lby * lcx);
    return sign_with_guard(det, mag, l1 + l2 + l3, std::abs((double)l1) + std::abs((double)l2) + std::abs((double)l3));
}

inline Vec2 circumcenter(const Vec2& a, const Vec2& b, const Vec2& c) {
    Vec2 ab = b - a, ac = c - a;
    double d = 2 * ab.cross(ac);
    if (std::abs(d) < 1e-300) return (a + b + c) / 3.0;
    double ab2 = ab.norm2(), ac2 = ac.norm2();
    double ux = (ac.y * ab2 - ab.y * ac2) / d;
    double uy = (ab.x * ac2 - ac.x * ab2) / d;
    return a + Vec2{ux, uy};
}

struct Delaunay {
    std::vector<Vec2> pts;
    struct Tri {
        std::array<int, 3> v{-1, -1, -1};
        std::array<int, 3> n{-1, -1, -1};  // n[i] is across edge (v[i], v[i+1])
        bool alive = false;
        int inside = -1;  // cached classification: -1 unknown, 0 out, 1 in
    };
    std::vector<Tri> tris;
    std::vector<int> free_list;
    int hint = -1;

    explicit Delaunay(const BBox& box) {
        Vec2 c = (box.lo + box.hi) / 2.0;
        double R = std::max(box.diam(), 1e-9) * 64.0;
        pts.push_back(c + Vec2{0, 2 * R});
        pts.push_back(c + Vec2{-1.8 * R, -R});
        pts.push_back(c + Vec2{1.8 * R, -R});
        Tri t;
        t.v = {0, 1, 2};
        t.alive = true;
        tris.push_back(t);
        hint = 0;
    }

    bool is_super_vertex(int v) const { return v < 3; }

    int alloc_tri() {
        if (!free_list.empty()) {
            int id = free_list.back();
            free_list.pop_back();
            tris[id] = Tri{};
            return id;
        }
        tris.push_back(Tri{});
        return (int)tris.size() - 1;
    }

    int edge_index(int t, int a, int b) const {
        for (int i = 0; i < 3; ++i)
            if (tris[t].v[i] == a && tris[t].v[(i + 1) % 3] == b) return i;
        return -1;
    }

    void set_neighbor(int t, int a, int b, int other) {
        if (t < 0) return;
        int i = edge_index(t, a, b);
        if (i >= 0) tris[t].n[i] = other;
    }

    // Walk from the hint to a triangle containing p.
    int locate(const Vec2& p) const {
        int t = hint >= 0 && tris[hint].alive ? hint : -1;
        if (t < 0)
            for (size_t i = 0; i < tris.size(); ++i)
                if (tris[i].alive) {
                    t = (int)i;
                    break;
                }
        int guard = (int)tris.size() * 4 + 64;
        int prev = -1;
        while (guard-- > 0) {
            bool moved = false;
            for (int i = 0; i < 3; ++i) {
                int a = tris[t].v[i], b = tris[t].v[(i + 1) % 3];
                if (orient2d(pts[a], pts[b], p) < 0) {
                    int nb = tris[t].n[i];
                    if (nb >= 0 && nb != prev) {
                        prev = t;
                        t = nb;
                        moved = true;
                        break;
                    }
                }
            }
            if (!moved) return t;
        }
        // fallback: brute scan
        for (size_t i = 0; i < tris.size(); ++i) {
            if (!tris[i].alive) continue;
            bool in = true;
            for (int k = 0; k < 3; ++k)
                if (orient2d(pts[tris[i].v[k]], pts[tris[i].v[(k + 1) % 3]], p) < 0) in = false;
            if (in) return (int)i;
        }
        throw std::runtime_error("mesh: point location failed");
    }

    // Bowyer-Watson insertion; returns the new vertex index.
    int insert(const Vec2& p, std::vector<int>* created = nullptr) {
        int seed = locate(p);
        // cavity = connected incircle region around seed
        std::vector<int> cavity;
        std::vector<char> mark(tris.size(), 0);
        std::vector<int> stack{seed};
        mark[seed] = 1;
        while (!stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            const auto& tr = tris[t];
            if (incircle(pts[tr.v[0]], pts[tr.v[1]], pts[tr.v[2]], p) > 0 || t == seed) {
                cavity.push_back(t);
                for (int nb : tr.n)
                    if (nb >= 0 && !mark[nb]) {
                        mark[nb] = 1;
                        stack.push_back(nb);
                    }
            }
        }
        std::vector<char> in_cavity(tris.size(), 0);
        for (int t : cavity) in_cavity[t] = 1;
        // boundary edges of the cavity, in arbitrary order: (a, b, outside-tri)
        struct CB {
            int a, b, out;
        };
        std::vector<CB> ring;
        for (int t : cavity)
            for (int i = 0; i < 3; ++i) {
                int nb = tris[t].n[i];
                if (nb < 0 || !in_cavity[nb]) ring.push_back({tris[t].v[i], tris[t].v[(i + 1) % 3], nb});
            }
        int vp = (int)pts.size();
        pts.push_back(p);
        for (int t : cavity) {
            tris[t].alive = false;
            free_list.push_back(t);
        }
        // fan: one new triangle (a, b, vp) per ring edge; the ring is a closed
        // loop, so each vertex starts exactly one ring edge and ends one
        std::unordered_map<int, int> starts, ends;
        std::vector<int> new_tris;
        for (const auto& e : ring) {
            int id = alloc_tri();
            Tri& t = tris[id];
            t.v = {e.a, e.b, vp};
            t.alive = true;
            t.n = {e.out, -1, -1};
            set_neighbor(e.out, e.b, e.a, id);
            starts[e.a] = id;
            ends[e.b] = id;
            new_tris.push_back(id);
        }
        for (int id : new_tris) {
            Tri& t = tris[id];
            t.n[1] = starts.at(t.v[1]);  // across (b, vp): fan tri starting at b
            t.n[2] = ends.at(t.v[0]);    // across (vp, a): fan tri ending at a
        }
        hint = new_tris.empty() ? hint : new_tris.back();
        if (created) *created = new_tris;
        return vp;
    }
};

}  // namespace meshdetail

// ---------------------------------------------------------------------------
// triangulate / refine
// ---------------------------------------------------------------------------

namespace meshdetail {

// Narrow-passage detector: boundary samples that are close in space but far
// along the curve mark a feature the target h cannot resolve.
inline double feature_size(const Domain& dom, double h) {
    double per = dom.perimeter();
    double step = std::min(h / 2, per / 64);
    struct S {
        Vec2 p;
        double arc;
    };
    std::vector<S> ss;
    double arc = 0;
    for (const auto& seg : dom.boundary) {
        int n = std::max(2, (int)std::ceil(seg.length() / step));
        for (int i = 0; i < n; ++i) {
            ss.push_back({seg.point((double)i / n), arc + seg.length() * i / n});
        }
        arc += seg.length();
    }
    double feat = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < ss.size(); ++i)
        for (size_t j = i + 1; j < ss.size(); ++j) {
            double along = std::abs(ss[i].arc - ss[j].arc);
            along = std::min(along, per - along);
            double eu = (ss[i].p - ss[j].p).norm();
            if (along > 2.5 * eu + 4 * step) feat = std::min(feat, eu);
        }
    return feat;
}

struct SubSeg {
    int a, b;     // Delaunay vertex ids
    int seg;      // curve segment
    double ta, tb;
};

}  // namespace meshdetail

inline TriMesh triangulate(const Domain& dom, double h) {
    using namespace meshdetail;
    if (dom.is_surface) throw std::invalid_argument("triangulate: not defined for model surfaces");
    if (h <= 0) throw std::invalid_argument("triangulate: h must be positive");

    // preconditions: h below the domain diameter and the local feature size
    double diam_hint = dom.bbox().diam();
    if (h >= diam_hint) throw std::invalid_argument("triangulate: h exceeds the domain size");
    double feat = feature_size(dom, h);
    if (feat < h)
        throw std::invalid_argument("triangulate: feature size " + std::to_string(feat) +
                                    " is unresolvable at h = " + std::to_string(h));

    BBox box = dom.bbox();
    box.pad(2 * h);
    Delaunay dt(box);

    // --- boundary sampling -------------------------------------------------
    std::vector<int> vert_seg;   // parallel to dt.pts (offset by 3 supers)
    std::vector<double> vert_t;
    auto tag_of = [&](int v) -> int& { return vert_seg[v]; };
    (void)tag_of;

    std::vector<SubSeg> subsegs;
    std::vector<int> first_sample(dom.boundary.size() + 1, 0);
    std::vector<int> sample_ids;  // Delaunay ids of boundary samples in loop order
    vert_seg.assign(3, -1);
    vert_t.assign(3, 0.0);

    for (size_t si = 0; si < dom.boundary.size(); ++si) {
        const Segment& seg = dom.boundary[si];
        int n = seg.chord_count(h);
        first_sample[si] = (int)sample_ids.size();
        for (int i = 0; i < n; ++i) {
            double t = (double)i / n;
            int v = dt.insert(seg.point(t));
            vert_seg.resize(dt.pts.size(), -1);
            vert_t.resize(dt.pts.size(), 0.0);
            vert_seg[v] = (int)si;
            vert_t[v] = t;
            sample_ids.push_back(v);
        }
    }
    first_sample[dom.boundary.size()] = (int)sample_ids.size();
    // subsegments, one per consecutive sample pair (wrapping to the next segment)
    for (size_t si = 0; si < dom.boundary.size(); ++si) {
        int lo = first_sample[si], hi = first_sample[si + 1];
        int n = hi - lo;
        for (int i = 0; i < n; ++i) {
            int a = sample_ids[lo + i];
            int b = (i + 1 < n) ? sample_ids[lo + i + 1]
                                : sample_ids[(si + 1 < dom.boundary.size()) ? first_sample[si + 1] : 0];
            subsegs.push_back({a, b, (int)si, (double)i / n, (double)(i + 1) / n});
        }
    }

    // --- interior lattice ---------------------------------------------------
    {
        double a = h;
        double dy = a * std::sqrt(3.0) / 2;
        int row = 0;
        for (double y = box.lo.y + dy / 2; y < box.hi.y; y += dy, ++row) {
            double x0 = box.lo.x + ((row % 2) ? a / 2 : 0.0);
            for (double x = x0; x < box.hi.x; x += a) {
                Vec2 p{x, y};
                if (!dom.contains(p)) continue;
                if (dom.boundary_distance(p) < 0.7 * h) continue;
                int v = dt.insert(p);
                vert_seg.resize(dt.pts.size(), -1);
                vert_t.resize(dt.pts.size(), 0.0);
                (void)v;
            }
        }
    }

    // --- helper lambdas -----------------------------------------------------
    auto tri_inside = [&](int t) -> bool {
        auto& tr = dt.tris[t];
        if (tr.inside == -1) {
            for (int v : tr.v)
                if (dt.is_super_vertex(v)) {
                    tr.inside = 0;
                    return false;
                }
            Vec2 c = (dt.pts[tr.v[0]] + dt.pts[tr.v[1]] + dt.pts[tr.v[2]]) / 3.0;
            tr.inside = dom.contains(c) ? 1 : 0;
        }
        return tr.inside == 1;
    };
    const double min_angle = 20.0 * kPi / 180.0;
    const double max_edge = 1.35 * h;
    auto tri_bad = [&](int t) -> bool {
        const auto& tr = dt.tris[t];
        const Vec2 &A = dt.pts[tr.v[0]], &B = dt.pts[tr.v[1]], &C = dt.pts[tr.v[2]];
        double e0 = (B - A).norm(), e1 = (C - B).norm(), e2 = (A - C).norm();
        if (std::max({e0, e1, e2}) > max_edge) return true;
        double area2 = std::abs((B - A).cross(C - A));
        // sin(angle at a vertex) = area2 / (product of its two adjacent edges),
        // and the smallest angle corresponds to the largest such product
        double sin_min = area2 / std::max({e0 * e1, e1 * e2, e2 * e0});
        return std::asin(std::clamp(sin_min, -1.0, 1.0)) < min_angle - 1e-12;
    };
    auto encroached_by = [&](const Vec2& p) -> int {
        for (size_t i = 0; i < subsegs.size(); ++i) {
            const auto& s = subsegs[i];
            Vec2 A = dt.pts[s.a], B = dt.pts[s.b];
            Vec2 m = (A + B) / 2.0;
            double r = (A - B).norm() / 2.0;
            if ((p - m).norm() < r * (1 - 1e-12)) return (int)i;
        }
        return -1;
    };
    std::deque<int> bad;
    auto push_new = [&](const std::vector<int>& created) {
        for (int t : created) bad.push_back(t);
    };
    auto split_subseg = [&](int idx) {
        SubSeg s = subsegs[idx];
        double tm = 0.5 * (s.ta + s.tb);
        Vec2 p = dom.boundary[s.seg].point(tm);
        std::vector<int> created;
        int v = dt.insert(p, &created);
        vert_seg.resize(dt.pts.size(), -1);
        vert_t.resize(dt.pts.size(), 0.0);
        vert_seg[v] = s.seg;
        vert_t[v] = tm;
        subsegs[idx] = {s.a, v, s.seg, s.ta, tm};
        subsegs.push_back({v, s.b, s.seg, tm, s.tb});
        push_new(created);
    };

    // clean up any startup encroachments (lattice clearance normally prevents them)
    for (size_t pass = 0; pass < 4; ++pass) {
        bool any = false;
        for (size_t i = 0; i < subsegs.size(); ++i) {
            const auto& s = subsegs[i];
            Vec2 A = dt.pts[s.a], B = dt.pts[s.b];
            Vec2 m = (A + B) / 2.0;
            double r = (A - B).norm() / 2.0;
            for (size_t v = 3; v < dt.pts.size(); ++v) {
                if ((int)v == s.a || (int)v == s.b) continue;
                if ((dt.pts[v] - m).norm() < r * (1 - 1e-9)) {
                    split_subseg((int)i);
                    any = true;
                    break;
                }
            }
        }
        if (!any) break;
    }

    // --- Ruppert loop --------------------------------------------------------
    for (size_t t = 0; t < dt.tris.size(); ++t)
        if (dt.tris[t].alive) bad.push_back((int)t);
    long budget = 400000;
    while (!bad.empty()) {
        int t = bad.front();
        bad.pop_front();
        if (t >= (int)dt.tris.size() || !dt.tris[t].alive) continue;
        if (!tri_inside(t) || !tri_bad(t)) continue;
        if (--budget < 0) throw std::runtime_error("triangulate: refinement budget exceeded");
        const auto& tr = dt.tris[t];
        Vec2 c = circumcenter(dt.pts[tr.v[0]], dt.pts[tr.v[1]], dt.pts[tr.v[2]]);
        int enc = encroached_by(c);
        if (enc >= 0) {
            split_subseg(enc);
            bad.push_back(t);
            continue;
        }
        if (!dom.contains(c)) {
            // split the triangle's longest edge instead
            int ia = 0;
            double best = -1;
            for (int i = 0; i < 3; ++i) {
                double len = (dt.pts[tr.v[i]] - dt.pts[tr.v[(i + 1) % 3]]).norm();
                if (len > best) {
                    best = len;
                    ia = i;
                }
            }
            int a = tr.v[ia], b = tr.v[(ia + 1) % 3];
            int sidx = -1;
            for (size_t i = 0; i < subsegs.size(); ++i)
                if ((subsegs[i].a == a && subsegs[i].b == b) || (subsegs[i].a == b && subsegs[i].b == a)) sidx = (int)i;
            if (sidx >= 0) {
                split_subseg(sidx);
            } else {
                std::vector<int> created;
                dt.insert((dt.pts[a] + dt.pts[b]) / 2.0, &created);
                vert_seg.resize(dt.pts.size(), -1);
                vert_t.resize(dt.pts.size(), 0.0);
                push_new(created);
            }
            continue;
        }
        std::vector<int> created;
        dt.insert(c, &created);
        vert_seg.resize(dt.pts.size(), -1);
        vert_t.resize(dt.pts.size(), 0.0);
        push_new(created);
    }

    // --- extract the interior mesh -------------------------------------------
    TriMesh m;
    m.h = h;
    m.curve = dom.boundary;
    std::vector<int> remap(dt.pts.size(), -1);
    for (size_t t = 0; t < dt.tris.size(); ++t) {
        if (!dt.tris[t].alive || !tri_inside((int)t)) continue;
        std::array<int, 3> tv;
        for (int i = 0; i < 3; ++i) {
            int v = dt.tris[t].v[i];
            if (remap[v] < 0) {
                remap[v] = (int)m.vertices.size();
                m.vertices.push_back(dt.pts[v]);
                m.vertex_seg.push_back(vert_seg[v]);
                m.vertex_t.push_back(vert_t[v]);
            }
            tv[i] = remap[v];
        }
        if ((m.vertices[tv[1]] - m.vertices[tv[0]]).cross(m.vertices[tv[2]] - m.vertices[tv[0]]) < 0)
            std::swap(tv[1], tv[2]);
        m.triangles.push_back(tv);
    }
    for (const auto& s : subsegs) {
        if (remap[s.a] < 0 || remap[s.b] < 0)
            throw std::runtime_error("triangulate: boundary subsegment lost during refinement");
        m.boundary_edges.push_back({remap[s.a], remap[s.b], s.seg, s.ta, s.tb});
    }
    check_mesh(m);
    return m;
}

inline TriMesh refine(const TriMesh& mesh) {
    TriMesh m;
    m.h = mesh.h / 2;
    m.curve = mesh.curve;
    m.vertices = mesh.vertices;
    m.vertex_seg = mesh.vertex_seg;
    m.vertex_t = mesh.vertex_t;

    // boundary edge lookup with curve parameters of both endpoints
    struct BInfo {
        int seg;
        double ta, tb;
    };
    std::map<std::pair<int, int>, BInfo> binfo;
    for (const auto& e : mesh.boundary_edges) {
        if (e.a <= e.b)
            binfo[{e.a, e.b}] = {e.seg_id, e.ta, e.tb};
        else
            binfo[{e.b, e.a}] = {e.seg_id, e.tb, e.ta};
    }

    std::map<std::pair<int, int>, int> midpoint;
    struct MidTag {
        int seg = -1;
        double t = 0;
    };
    std::vector<MidTag> midtags;
    auto mid_of = [&](int a, int b) -> int {
        auto key = std::make_pair(std::min(a, b), std::max(a, b));
        auto it = midpoint.find(key);
        if (it != midpoint.end()) return it->second;
        Vec2 p = (mesh.vertices[a] + mesh.vertices[b]) / 2.0;
        int seg = -1;
        double t = 0;
        auto bi = binfo.find(key);
        if (bi != binfo.end() && bi->second.seg >= 0 && !mesh.curve.empty()) {
            seg = bi->second.seg;
            t = 0.5 * (bi->second.ta + bi->second.tb);
            p = mesh.curve[seg].point(t);  // re-project onto the true boundary
        }
        int idx = (int)m.vertices.size();
        m.vertices.push_back(p);
        m.vertex_seg.push_back(seg);
        m.vertex_t.push_back(t);
        midpoint[key] = idx;
        return idx;
    };

    for (const auto& tr : mesh.triangles) {
        int m01 = mid_of(tr[0], tr[1]);
        int m12 = mid_of(tr[1], tr[2]);
        int m20 = mid_of(tr[2], tr[0]);
        m.triangles.push_back({tr[0], m01, m20});
        m.triangles.push_back({tr[1], m12, m01});
        m.triangles.push_back({tr[2], m20, m12});
        m.triangles.push_back({m01, m12, m20});
    }
    for (const auto& e : mesh.boundary_edges) {
        int mid = mid_of(e.a, e.b);
        double tm = 0.5 * (e.ta + e.tb);
        m.boundary_edges.push_back({e.a, mid, e.seg_id, e.ta, tm});
        m.boundary_edges.push_back({mid, e.b, e.seg_id, tm, e.tb});
    }
    return m;
}

// ---------------------------------------------------------------------------
// Text format: line 1 "V T B"; V lines "x y"; T lines "i j k"; B lines "i j".
// ---------------------------------------------------------------------------

inline void write_mesh(std::ostream& os, const TriMesh& m) {
    os << m.vertices.size() << " " << m.triangles.size() << " " << m.boundary_edges.size() << "\n";
    char buf[80];
    for (const auto& v : m.vertices) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", v.x, v.y);
        os << buf;
    }
    for (const auto& t : m.triangles) os << t[0] << " " << t[1] << " " << t[2] << "\n";
    for (const auto& e : m.boundary_edges) os << e.a << " " << e.b << "\n";
}

inline TriMesh read_mesh(std::istream& is) {
    TriMesh m;
    size_t V, T, B;
    if (!(is >> V >> T >> B)) throw std::invalid_argument("mesh read: bad header");
    m.vertices.resize(V);
    for (auto& v : m.vertices)
        if (!(is >> v.x >> v.y)) throw std::invalid_argument("mesh read: bad vertex line");
    m.triangles.resize(T);
    for (auto& t : m.triangles) {
        if (!(is >> t[0] >> t[1] >> t[2])) throw std::invalid_argument("mesh read: bad triangle line");
        for (int i : t)
            if (i < 0 || (size_t)i >= V) throw std::invalid_argument("mesh read: triangle index out of range");
    }
    m.boundary_edges.resize(B);
    for (auto& e : m.boundary_edges) {
        if (!(is >> e.a >> e.b)) throw std::invalid_argument("mesh read: bad boundary line");
        if (e.a < 0 || (size_t)e.a >= V || e.b < 0 || (size_t)e.b >= V)
            throw std::invalid_argument("mesh read: boundary index out of range");
    }
    m.vertex_seg.assign(V, -1);
    m.vertex_t.assign(V, 0.0);
    m.h = m.max_edge();
    return m;
}

}  // namespace spb
