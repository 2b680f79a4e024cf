#pragma once

#include <limits>
#include <vector>

#include "laceforge/geometry.hpp"

namespace lace {

inline double polygon_area(const std::vector<Vec2>& poly) {
    double a = 0;
    for (std::size_t i = 0; i < poly.size(); ++i)
        a += poly[i].cross(poly[(i + 1) % poly.size()]);
    return a / 2;
}

inline bool polygon_is_convex(const std::vector<Vec2>& poly) {
    const std::size_t n = poly.size();
    if (n < 3) return false;
    int sign = 0;
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 a = poly[(i + 1) % n] - poly[i];
        Vec2 b = poly[(i + 2) % n] - poly[(i + 1) % n];
        double c = a.cross(b);
        if (std::fabs(c) < kGeomTol) continue;
        int s = c > 0 ? 1 : -1;
        if (sign == 0)
            sign = s;
        else if (s != sign)
            return false;
    }
    return true;
}

// Radius of the largest circle inscribed in a convex polygon (ccw order):
// the Chebyshev radius of its bounding half-planes. The optimum is attained
// with three tight edge constraints, so all triples are tried.
inline double polygon_inradius(const std::vector<Vec2>& poly) {
    const std::size_t n = poly.size();
    if (n < 3) return 0;
    std::vector<Vec2> normal(n);   // inward unit normals
    std::vector<double> bound(n);  // u . p for a point p on the edge
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 e = poly[(i + 1) % n] - poly[i];
        Vec2 u = e.perp().normalized();  // inward for ccw polygons
        normal[i] = u;
        bound[i] = u.dot(poly[i]);
    }
    auto feasible = [&](Vec2 c, double r) {
        for (std::size_t i = 0; i < n; ++i)
            if (normal[i].dot(c) - bound[i] < r - 1e-12) return false;
        return true;
    };
    double best = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                // Solve u.c - r = bound for the three edges.
                double m[3][4] = {
                    {normal[i].x, normal[i].y, -1, bound[i]},
                    {normal[j].x, normal[j].y, -1, bound[j]},
                    {normal[k].x, normal[k].y, -1, bound[k]},
                };
                // Gaussian elimination on the 3x4 system.
                bool singular = false;
                for (int col = 0; col < 3 && !singular; ++col) {
                    int piv = col;
                    for (int row = col + 1; row < 3; ++row)
                        if (std::fabs(m[row][col]) > std::fabs(m[piv][col])) piv = row;
                    if (std::fabs(m[piv][col]) < 1e-14) {
                        singular = true;
                        break;
                    }
                    std::swap(m[piv], m[col]);
                    for (int row = 0; row < 3; ++row) {
                        if (row == col) continue;
                        double f = m[row][col] / m[col][col];
                        for (int c2 = col; c2 < 4; ++c2) m[row][c2] -= f * m[col][c2];
                    }
                }
                if (singular) continue;
                Vec2 c{m[0][3] / m[0][0], m[1][3] / m[1][1]};
                double r = m[2][3] / m[2][2];
                if (r > best && feasible(c, r)) best = r;
            }
    return best;
}

// Radius of the smallest circle containing all points (small inputs only).
inline double polygon_circumradius(const std::vector<Vec2>& poly) {
    const std::size_t n = poly.size();
    if (n == 0) return 0;
    if (n == 1) return 0;
    auto covers = [&](Vec2 c, double r2) {
        for (const Vec2& p : poly)
            if ((p - c).norm2() > r2 * (1 + 1e-12) + 1e-18) return false;
        return true;
    };
    double best2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Vec2 c = (poly[i] + poly[j]) / 2;
            double r2 = (poly[i] - c).norm2();
            if (r2 < best2 && covers(c, r2)) best2 = r2;
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                Vec2 a = poly[i], b = poly[j], c = poly[k];
                double d = 2 * (a - c).cross(b - c);
                if (std::fabs(d) < 1e-14) continue;
                double a2 = a.norm2(), b2 = b.norm2(), c2 = c.norm2();
                Vec2 center{
                    (a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d,
                    -(a2 * (b.x - c.x) + b2 * (c.x - a.x) + c2 * (a.x - b.x)) / d};
                double r2 = (a - center).norm2();
                if (r2 < best2 && covers(center, r2)) best2 = r2;
            }
    return std::sqrt(best2);
}

}  // namespace lace
