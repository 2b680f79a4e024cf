#pragma once

#include <vector>

#include "laceforge/geometry.hpp"

namespace lace {

struct DelaunayTriangle {
    int a = -1, b = -1, c = -1;  // indices into the input point set, ccw
    Vec2 circumcenter;
    double circumradius = 0.0;
};

// Bowyer-Watson triangulation with walking point location. Input points must
// be pairwise distinct; collinear inputs yield an empty triangulation.
std::vector<DelaunayTriangle> delaunay_triangulate(const std::vector<Vec2>& points);

}  // namespace lace
