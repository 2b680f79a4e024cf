#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lace {

inline constexpr double kGoldenRatio = 1.6180339887498948482045868343656381;
inline constexpr double kPi = std::numbers::pi;

// Absolute tolerance for geometric predicates (coincidence, on-line tests).
inline constexpr double kGeomTol = 1e-9;
// Angular tolerance when matching directions to a star, in radians.
inline constexpr double kAngleTol = 1e-7;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
    Vec2 operator-() const { return {-x, -y}; }

    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double cross(Vec2 o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    double norm2() const { return x * x + y * y; }
    Vec2 normalized() const {
        double n = norm();
        if (n == 0.0) throw std::domain_error("cannot normalize zero vector");
        return {x / n, y / n};
    }
    // 90 degree counterclockwise rotation.
    Vec2 perp() const { return {-y, x}; }
    Vec2 rotated(double angle) const {
        double c = std::cos(angle), s = std::sin(angle);
        return {x * c - y * s, x * s + y * c};
    }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }
inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }
inline Vec2 unit_vector(double angle) { return {std::cos(angle), std::sin(angle)}; }

// Signed angle of v in [0, 2pi).
inline double angle_of(Vec2 v) {
    double a = std::atan2(v.y, v.x);
    if (a < 0) a += 2 * kPi;
    return a;
}

// Difference of two direction angles reduced to [0, pi) (lines, not rays).
inline double line_angle_between(double a, double b) {
    double d = std::fmod(std::fabs(a - b), kPi);
    return std::min(d, kPi - d);
}

struct Rect {
    double xmin = 0, ymin = 0, xmax = 0, ymax = 0;

    static Rect centered(Vec2 c, double halfWidth, double halfHeight) {
        return {c.x - halfWidth, c.y - halfHeight, c.x + halfWidth, c.y + halfHeight};
    }
    static Rect centered_square(double halfExtent) {
        return centered({0, 0}, halfExtent, halfExtent);
    }
    bool contains(Vec2 p) const {
        return p.x > xmin && p.x < xmax && p.y > ymin && p.y < ymax;
    }
    bool contains_closed(Vec2 p, double eps = 1e-12) const {
        return p.x >= xmin - eps && p.x <= xmax + eps && p.y >= ymin - eps &&
               p.y <= ymax + eps;
    }
    bool degenerate() const { return xmax <= xmin || ymax <= ymin; }
    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
    Rect shrunk(double margin) const {
        return {xmin + margin, ymin + margin, xmax - margin, ymax - margin};
    }
};

}  // namespace lace
