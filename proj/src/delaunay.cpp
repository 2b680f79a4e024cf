#include "laceforge/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

namespace lace {

namespace {

struct Tri {
    int v[3];  // point indices, ccw; first three ids are the helper corners
    int n[3];  // neighbour across the edge opposite v[i]; -1 outside
    bool alive = true;
};

double orient(Vec2 a, Vec2 b, Vec2 c) { return (b - a).cross(c - a); }

// Positive when p lies inside the circumcircle of ccw triangle (a, b, c).
double in_circle(Vec2 a, Vec2 b, Vec2 c, Vec2 p) {
    double ax = a.x - p.x, ay = a.y - p.y;
    double bx = b.x - p.x, by = b.y - p.y;
    double cx = c.x - p.x, cy = c.y - p.y;
    double a2 = ax * ax + ay * ay;
    double b2 = bx * bx + by * by;
    double c2 = cx * cx + cy * cy;
    return ax * (by * c2 - b2 * cy) - ay * (bx * c2 - b2 * cx) + a2 * (bx * cy - by * cx);
}

std::uint64_t morton(double x, double y) {
    auto spread = [](std::uint32_t v) {
        std::uint64_t r = v;
        r = (r | (r << 16)) & 0x0000FFFF0000FFFFull;
        r = (r | (r << 8)) & 0x00FF00FF00FF00FFull;
        r = (r | (r << 4)) & 0x0F0F0F0F0F0F0F0Full;
        r = (r | (r << 2)) & 0x3333333333333333ull;
        r = (r | (r << 1)) & 0x5555555555555555ull;
        return r;
    };
    auto qx = static_cast<std::uint32_t>(x * 65535.0);
    auto qy = static_cast<std::uint32_t>(y * 65535.0);
    return spread(qx) | (spread(qy) << 1);
}

}  // namespace

std::vector<DelaunayTriangle> delaunay_triangulate(const std::vector<Vec2>& points) {
    std::vector<DelaunayTriangle> result;
    const std::size_t n = points.size();
    if (n < 3) return result;

    Rect bbox{points[0].x, points[0].y, points[0].x, points[0].y};
    for (const Vec2& p : points) {
        bbox.xmin = std::min(bbox.xmin, p.x);
        bbox.xmax = std::max(bbox.xmax, p.x);
        bbox.ymin = std::min(bbox.ymin, p.y);
        bbox.ymax = std::max(bbox.ymax, p.y);
    }
    Vec2 center{(bbox.xmin + bbox.xmax) / 2, (bbox.ymin + bbox.ymax) / 2};
    double span = std::max({bbox.width(), bbox.height(), 1e-9});

    // Working point list: three far-away helper corners first.
    std::vector<Vec2> pts;
    pts.reserve(n + 3);
    double big = span * 64.0;
    pts.push_back(center + Vec2{0, 3 * big});
    pts.push_back(center + Vec2{-3 * big, -2 * big});
    pts.push_back(center + Vec2{3 * big, -2 * big});
    for (const Vec2& p : points) pts.push_back(p);

    // Morton-sorted insertion order for walk locality.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::uint64_t> code(n);
    for (std::size_t i = 0; i < n; ++i)
        code[i] = morton((points[i].x - bbox.xmin) / span, (points[i].y - bbox.ymin) / span);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return code[static_cast<std::size_t>(a)] < code[static_cast<std::size_t>(b)];
    });

    std::vector<Tri> tris;
    tris.reserve(n * 2 + 16);
    tris.push_back({{0, 1, 2}, {-1, -1, -1}, true});
    int lastAlive = 0;

    std::vector<int> cavity, stack;
    std::vector<std::uint8_t> inCavity;

    for (int oi : order) {
        int pid = oi + 3;
        Vec2 p = pts[static_cast<std::size_t>(pid)];

        // Walk from the last created triangle toward p.
        int cur = lastAlive;
        if (!tris[static_cast<std::size_t>(cur)].alive)
            for (cur = static_cast<int>(tris.size()) - 1;
                 cur >= 0 && !tris[static_cast<std::size_t>(cur)].alive; --cur) {
            }
        for (int guard = 0; guard < static_cast<int>(tris.size()) + 8; ++guard) {
            const Tri& t = tris[static_cast<std::size_t>(cur)];
            int next = -1;
            for (int e = 0; e < 3 && next == -1; ++e) {
                Vec2 a = pts[static_cast<std::size_t>(t.v[(e + 1) % 3])];
                Vec2 b = pts[static_cast<std::size_t>(t.v[(e + 2) % 3])];
                if (orient(a, b, p) < 0) next = t.n[e];
            }
            if (next == -1) break;  // inside cur
            cur = next;
        }

        // Grow the cavity of circumcircles containing p.
        cavity.clear();
        stack.clear();
        inCavity.assign(tris.size(), 0);
        stack.push_back(cur);
        inCavity[static_cast<std::size_t>(cur)] = 1;
        while (!stack.empty()) {
            int ti = stack.back();
            stack.pop_back();
            Tri& t = tris[static_cast<std::size_t>(ti)];
            if (in_circle(pts[static_cast<std::size_t>(t.v[0])],
                          pts[static_cast<std::size_t>(t.v[1])],
                          pts[static_cast<std::size_t>(t.v[2])], p) <= 0 &&
                ti != cur) {
                continue;
            }
            cavity.push_back(ti);
            for (int e = 0; e < 3; ++e) {
                int nb = t.n[e];
                if (nb >= 0 && !inCavity[static_cast<std::size_t>(nb)]) {
                    inCavity[static_cast<std::size_t>(nb)] = 1;
                    stack.push_back(nb);
                }
            }
        }
        // Cavity membership is needed below; restrict flags to true members.
        inCavity.assign(tris.size(), 0);
        for (int ti : cavity) inCavity[static_cast<std::size_t>(ti)] = 1;

        // Boundary edges of the cavity, each paired with its outside neighbour.
        struct Hole {
            int a, b;
            int outside;
        };
        std::vector<Hole> holes;
        for (int ti : cavity) {
            Tri& t = tris[static_cast<std::size_t>(ti)];
            for (int e = 0; e < 3; ++e) {
                int nb = t.n[e];
                if (nb >= 0 && inCavity[static_cast<std::size_t>(nb)]) continue;
                holes.push_back({t.v[(e + 1) % 3], t.v[(e + 2) % 3], nb});
            }
            t.alive = false;
        }

        // Fan of new triangles; link around the hole boundary.
        int firstNew = static_cast<int>(tris.size());
        for (const Hole& h : holes) tris.push_back({{pid, h.a, h.b}, {h.outside, -1, -1}, true});
        inCavity.resize(tris.size(), 0);
        for (std::size_t hi = 0; hi < holes.size(); ++hi) {
            int ti = firstNew + static_cast<int>(hi);
            Tri& t = tris[static_cast<std::size_t>(ti)];
            // Fix the external neighbour's back pointer.
            if (t.n[0] >= 0) {
                Tri& outT = tris[static_cast<std::size_t>(t.n[0])];
                for (int e = 0; e < 3; ++e) {
                    int va = outT.v[(e + 1) % 3], vb = outT.v[(e + 2) % 3];
                    if ((va == holes[hi].b && vb == holes[hi].a)) outT.n[e] = ti;
                }
            }
            // Internal links: edge (pid, a) and (b, pid) connect fan members.
            for (std::size_t hj = 0; hj < holes.size(); ++hj) {
                if (hj == hi) continue;
                int tj = firstNew + static_cast<int>(hj);
                if (holes[hj].b == holes[hi].a) t.n[2] = tj;  // edge opposite v[2]=b is (pid,a)
                if (holes[hj].a == holes[hi].b) t.n[1] = tj;  // edge opposite v[1]=a is (b,pid)
            }
        }
        lastAlive = firstNew;
    }

    for (const Tri& t : tris) {
        if (!t.alive) continue;
        if (t.v[0] < 3 || t.v[1] < 3 || t.v[2] < 3) continue;  // touches helper corners
        Vec2 a = pts[static_cast<std::size_t>(t.v[0])];
        Vec2 b = pts[static_cast<std::size_t>(t.v[1])];
        Vec2 c = pts[static_cast<std::size_t>(t.v[2])];
        double d = 2 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
        if (std::fabs(d) < 1e-30) continue;
        double a2 = a.norm2(), b2 = b.norm2(), c2 = c.norm2();
        Vec2 cc{(a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d,
                (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d};
        result.push_back({t.v[0] - 3, t.v[1] - 3, t.v[2] - 3, cc, distance(cc, a)});
    }
    return result;
}

}  // namespace lace
