#include "laceforge/lacecheck.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "test_helpers.hpp"

using namespace lace;
using lace::testing::make_drawing;
using lace::testing::word_bigrid;

namespace {

OrientedDrawing fibonacci_bigrid_drawing(int level, double alpha, double clipHalf) {
    SpacingWord w = fibonacci_word(level);
    Multigrid g = word_bigrid(w, w, alpha);
    Arrangement arr = build_arrangement(g, Rect::centered_square(clipHalf));
    return assign_down_orientation(arr.drawing, {0, 1});
}

// Drawing of the plain unit grid; edge directions are meaningless but C0 does
// not read them.
OrientedDrawing unit_grid_drawing(int kmin, int kmax) {
    Multigrid g;
    g.families = {{0.0, 0.0, ConstantSpacing{1.0}, kmin, kmax},
                  {kPi / 2, 0.0, ConstantSpacing{1.0}, kmin, kmax}};
    Arrangement arr = build_arrangement(g, Rect::centered_square(kmax + 1.0));
    OrientedDrawing d;
    static_cast<PlanarDrawing&>(d) = arr.drawing;
    d.up = {0, 1};
    return d;
}

double oracle_best_angle(const std::vector<Vec2>& pts) {
    Vec2 centroid{0, 0};
    for (const Vec2& p : pts) centroid += p;
    centroid = centroid / static_cast<double>(pts.size());
    auto sse = [&](double theta) {
        Vec2 dir = unit_vector(theta);
        double total = 0;
        for (const Vec2& p : pts) {
            double dev = (p - centroid).cross(dir);
            total += dev * dev;
        }
        return total;
    };
    // Coarse scan then golden-section refinement.
    double best = 0, bestVal = sse(0);
    for (int i = 1; i < 4000; ++i) {
        double t = kPi * i / 4000;
        double v = sse(t);
        if (v < bestVal) {
            bestVal = v;
            best = t;
        }
    }
    double lo = best - kPi / 4000, hi = best + kPi / 4000;
    const double phi = (std::sqrt(5.0) - 1) / 2;
    double a = hi - phi * (hi - lo), b = lo + phi * (hi - lo);
    double fa = sse(a), fb = sse(b);
    while (hi - lo > 1e-13) {
        if (fa < fb) {
            hi = b;
            b = a;
            fb = fa;
            a = hi - phi * (hi - lo);
            fa = sse(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + phi * (hi - lo);
            fb = sse(b);
        }
    }
    return (lo + hi) / 2;
}

}  // namespace

TEST_CASE("C0 on the unit square lattice") {
    OrientedDrawing d = unit_grid_drawing(-4, 4);
    C0Metrics m = check_c0(d);
    CHECK(m.minPairDistance == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.minFaceInradius == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(m.maxFaceCircumradius == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-9));
    CHECK(m.largestEmptyCircleRadius == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-6));
    CHECK(m.pass);
}

TEST_CASE("C0 smallest face inradius of the Fibonacci bigrid") {
    OrientedDrawing d = fibonacci_bigrid_drawing(7, kPi / 3, 14.0);
    C0Metrics m = check_c0(d);
    CHECK(m.minFaceInradius == doctest::Approx(std::sin(kPi / 3) / 2).epsilon(1e-9));
    CHECK(m.pass);
}

TEST_CASE("C0 fails on coincident vertices") {
    std::vector<Vec2> pos = {{0, 0}, {0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 1}, {2, 0}};
    std::vector<std::pair<int, int>> edges = {{0, 2}, {2, 4}, {3, 0}, {4, 5}, {5, 6}};
    OrientedDrawing d = make_drawing(pos, edges);
    C0Metrics m = check_c0(d);
    CHECK(m.minPairDistance == 0.0);
    CHECK_FALSE(m.pass);
}

TEST_CASE("C0 needs at least two interior vertices") {
    OrientedDrawing d = make_drawing({{0, 0}}, {});
    CHECK_THROWS_AS(check_c0(d), TooFewVertices);
}

TEST_CASE("C1 passes on the oriented bigrid") {
    OrientedDrawing d = fibonacci_bigrid_drawing(6, kPi / 3, 7.0);
    C1Result r = check_c1(d);
    CHECK(r.pass);
    CHECK(r.offenders.empty());
}

TEST_CASE("C1 rejects a degree-3 vertex and split out-edges") {
    // Center vertex 0, neighbours arranged around it.
    std::vector<Vec2> pos = {{0, 0}, {1, 1}, {-1, 1}, {0, -1.3}};
    auto contains = [](const std::vector<int>& v, int x) {
        return std::find(v.begin(), v.end(), x) != v.end();
    };
    SUBCASE("degree 3") {
        OrientedDrawing d = make_drawing(pos, {{1, 0}, {2, 0}, {0, 3}});
        C1Result r = check_c1(d);
        CHECK_FALSE(r.pass);
        CHECK(contains(r.offenders, 0));
    }
    SUBCASE("out-edges not rotationally consecutive") {
        std::vector<Vec2> pos4 = {{0, 0}, {1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
        // Alternating in/out around vertex 0: out at NE and SW.
        OrientedDrawing d =
            make_drawing(pos4, {{0, 1}, {2, 0}, {0, 3}, {4, 0}});
        C1Result r = check_c1(d);
        CHECK_FALSE(r.pass);
        CHECK(contains(r.offenders, 0));
    }
    SUBCASE("proper 2-in 2-out center is no offender") {
        std::vector<Vec2> pos4 = {{0, 0}, {1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
        OrientedDrawing d =
            make_drawing(pos4, {{1, 0}, {2, 0}, {0, 3}, {0, 4}});
        CHECK_FALSE(contains(check_c1(d).offenders, 0));
    }
}

TEST_CASE("C2 connectivity and face degrees") {
    OrientedDrawing d = fibonacci_bigrid_drawing(6, kPi / 3, 7.0);
    C2Result r = check_c2(d);
    CHECK(r.connected);
    CHECK(r.minFaceDegree >= 3);
    CHECK(r.pass);

    // Two disjoint squares.
    std::vector<Vec2> pos = {{0, 0}, {1, 0}, {1, 1}, {0, 1},
                             {10, 0}, {11, 0}, {11, 1}, {10, 1}};
    std::vector<std::pair<int, int>> edges = {{0, 1}, {1, 2}, {2, 3}, {3, 0},
                                              {4, 5}, {5, 6}, {6, 7}, {7, 4}};
    C2Result r2 = check_c2(make_drawing(pos, edges));
    CHECK_FALSE(r2.connected);
    CHECK_FALSE(r2.pass);
}

TEST_CASE("C3 detects cycles and downward edges") {
    OrientedDrawing cycle = make_drawing({{0, 0}, {1, 0}, {0.5, 1}},
                                         {{0, 1}, {1, 2}, {2, 0}});
    C3Result r = check_c3(cycle);
    CHECK_FALSE(r.acyclic);
    CHECK_FALSE(r.pass);

    OrientedDrawing d = fibonacci_bigrid_drawing(6, kPi / 3, 7.0);
    C3Result r2 = check_c3(d);
    CHECK(r2.acyclic);
    CHECK(r2.allEdgesDownward);
    CHECK(r2.pass);
}

TEST_CASE("osculating paths on a rotated square grid are monotone staircases") {
    Multigrid rotated;
    rotated.families = {{kPi / 4, 0.0, ConstantSpacing{1.0}, -3, 3},
                        {3 * kPi / 4, 0.0, ConstantSpacing{1.0}, -3, 3}};
    Arrangement arr = build_arrangement(rotated, Rect::centered_square(3.2));
    OrientedDrawing d = assign_down_orientation(arr.drawing, {0, 1});
    PartitionResult part = osculating_partition(d);

    for (const OsculatingPath& path : part.paths) {
        CHECK_FALSE(path.cycle);
        for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i) {
            double y0 = d.vertices[static_cast<std::size_t>(path.vertices[i])].pos.y;
            double y1 = d.vertices[static_cast<std::size_t>(path.vertices[i + 1])].pos.y;
            CHECK(y1 < y0);
        }
        // Travel direction alternates between the two line directions.
        for (std::size_t i = 0; i + 1 < path.edges.size(); ++i) {
            Vec2 a = d.vertices[static_cast<std::size_t>(path.vertices[i + 1])].pos -
                     d.vertices[static_cast<std::size_t>(path.vertices[i])].pos;
            Vec2 b = d.vertices[static_cast<std::size_t>(path.vertices[i + 2])].pos -
                     d.vertices[static_cast<std::size_t>(path.vertices[i + 1])].pos;
            CHECK(std::fabs(a.normalized().cross(b.normalized())) > 0.5);
        }
    }
}

TEST_CASE("partition covers every edge exactly once") {
    OrientedDrawing d = fibonacci_bigrid_drawing(7, kPi / 3, 10.0);
    PartitionResult part = osculating_partition(d);
    std::vector<int> count(d.edges.size(), 0);
    for (const OsculatingPath& p : part.paths)
        for (int e : p.edges) count[static_cast<std::size_t>(e)]++;
    CHECK(std::all_of(count.begin(), count.end(), [](int c) { return c == 1; }));
    for (std::size_t e = 0; e < d.edges.size(); ++e)
        CHECK(part.edgeToPath[e] >= 0);
}

TEST_CASE("partition is invariant under edge order permutation") {
    OrientedDrawing d = fibonacci_bigrid_drawing(6, kPi / 3, 7.0);
    PartitionResult base = osculating_partition(d);

    std::mt19937 rng(123);
    std::vector<int> perm(d.edges.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    OrientedDrawing shuffled = d;
    for (std::size_t e = 0; e < d.edges.size(); ++e)
        shuffled.edges[e] = d.edges[static_cast<std::size_t>(perm[e])];
    shuffled.rebuild_rotation();
    PartitionResult other = osculating_partition(shuffled);

    auto canonical = [](const OrientedDrawing& dd, const PartitionResult& part) {
        std::set<std::set<std::pair<int, int>>> paths;
        for (const OsculatingPath& p : part.paths) {
            std::set<std::pair<int, int>> edges;
            for (int e : p.edges)
                edges.insert({dd.edges[static_cast<std::size_t>(e)].tail,
                              dd.edges[static_cast<std::size_t>(e)].head});
            paths.insert(std::move(edges));
        }
        return paths;
    };
    CHECK(canonical(d, base) == canonical(shuffled, other));
}

TEST_CASE("partition pairing is non-crossing at every vertex") {
    OrientedDrawing d = fibonacci_bigrid_drawing(6, kPi / 3, 7.0);
    PartitionResult part = osculating_partition(d);
    // Successor edges must be rotationally adjacent to their incoming edge.
    for (const OsculatingPath& p : part.paths) {
        for (std::size_t i = 0; i + 1 < p.edges.size(); ++i) {
            int e = p.edges[i], f = p.edges[i + 1];
            int v = d.edges[static_cast<std::size_t>(e)].head;
            const auto& rot = d.rotation[static_cast<std::size_t>(v)];
            auto se = std::find(rot.begin(), rot.end(), e) - rot.begin();
            auto sf = std::find(rot.begin(), rot.end(), f) - rot.begin();
            int gap = static_cast<int>((se - sf + 4) % 4);
            CHECK((gap == 1 || gap == 3));
        }
    }
}

TEST_CASE("partition reports C1 violations") {
    std::vector<Vec2> pos = {{0, 0}, {1, 1}, {-1, 1}, {0, -1.3}};
    OrientedDrawing d = make_drawing(pos, {{1, 0}, {2, 0}, {0, 3}});
    CHECK_THROWS_AS(osculating_partition(d), C1Violation);
}

TEST_CASE("deming_fit basics") {
    CHECK_THROWS_AS(deming_fit({{1, 1}}), DegeneratePoints);
    CHECK_THROWS_AS(deming_fit({{1, 1}, {1, 1}, {1, 1}}), DegeneratePoints);

    std::vector<Vec2> collinear = {{0, 0}, {1, 2}, {2, 4}, {3.5, 7}};
    DemingFit fit = deming_fit(collinear);
    CHECK(fit.maxDeviation == doctest::Approx(0.0).epsilon(1e-12));

    std::vector<Vec2> square = {{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}};
    DemingFit tie = deming_fit(square, {0, 1});
    CHECK(tie.direction.x == doctest::Approx(0.0));
    CHECK(tie.direction.y == doctest::Approx(1.0));
    CHECK(tie.maxDeviation == doctest::Approx(0.5));
}

TEST_CASE("deming_fit matches the numeric minimizer") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> coord(-3.0, 3.0);
    std::normal_distribution<double> noise(0.0, 0.3);
    for (int trial = 0; trial < 50; ++trial) {
        double theta = coord(rng);
        Vec2 dir = unit_vector(theta);
        std::vector<Vec2> pts;
        for (int i = 0; i < 100; ++i) {
            double t = coord(rng);
            Vec2 p = dir * t + dir.perp() * noise(rng);
            pts.push_back(p + Vec2{coord(rng) * 0.0, 0.0});
        }
        DemingFit fit = deming_fit(pts);
        double bestAngle = oracle_best_angle(pts);
        Vec2 oracleDir = unit_vector(bestAngle);
        double worst = 0;
        Vec2 centroid{0, 0};
        for (const Vec2& p : pts) centroid += p;
        centroid = centroid / static_cast<double>(pts.size());
        for (const Vec2& p : pts)
            worst = std::max(worst, std::fabs((p - centroid).cross(oracleDir)));
        CHECK(fit.maxDeviation == doctest::Approx(worst).epsilon(1e-8));
        CHECK(std::fabs(fit.direction.cross(oracleDir)) < 1e-6);
    }
}

TEST_CASE("deming_fit is invariant under rigid motions") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    std::vector<Vec2> pts;
    for (int i = 0; i < 60; ++i) pts.push_back({coord(rng), 0.3 * coord(rng)});
    DemingFit base = deming_fit(pts);

    double angle = 0.83;
    Vec2 shift{4.2, -1.7};
    std::vector<Vec2> moved;
    for (const Vec2& p : pts) moved.push_back(p.rotated(angle) + shift);
    DemingFit rotated = deming_fit(moved, Vec2{0, 1}.rotated(angle));

    CHECK(rotated.maxDeviation == doctest::Approx(base.maxDeviation).epsilon(1e-9));
    Vec2 expectCentroid = base.centroid.rotated(angle) + shift;
    CHECK(rotated.centroid.x == doctest::Approx(expectCentroid.x).epsilon(1e-9));
    CHECK(rotated.centroid.y == doctest::Approx(expectCentroid.y).epsilon(1e-9));
    CHECK(std::fabs(rotated.direction.cross(base.direction.rotated(angle))) < 1e-9);
}

TEST_CASE("C4 on the Fibonacci bigrid respects the analytic bound") {
    double alpha = kPi / 3;
    OrientedDrawing d = fibonacci_bigrid_drawing(8, alpha, 18.0);
    double bound = 0.5 * (1.0 + kGoldenRatio) * std::sin(alpha) + 1e-9;
    C4Metrics m = check_c4(d, bound);
    CHECK(m.pass);
    CHECK(m.worstDeviation <= bound);
    CHECK(m.perPath.size() > 4);
}

TEST_CASE("C4 worst deviation grows with the counterexample level") {
    auto worstAt = [](int level) {
        auto [wa, wb] = counterexample_words(level);
        Multigrid g = word_bigrid(wa, wb, kPi / 3);
        double extent = wa.total_length() * std::sin(kPi / 3) / 2;
        Arrangement arr = build_arrangement(g, Rect::centered_square(extent * 0.9));
        OrientedDrawing d = assign_down_orientation(arr.drawing, {0, 1});
        return check_c4(d, 1e9).worstDeviation;
    };
    double w1 = worstAt(1);
    double w2 = worstAt(2);
    CHECK(w2 > w1 * 1.5);
}

TEST_CASE("verify_all on the Fibonacci bigrid passes all conditions") {
    double alpha = kPi / 3;
    OrientedDrawing d = fibonacci_bigrid_drawing(8, alpha, 18.0);
    VerifyThresholds th;
    th.sMax = 0.5 * (1.0 + kGoldenRatio) * std::sin(alpha) + 1e-9;
    VerificationReport report = verify_all(d, th);
    CHECK(report.c0.pass);
    CHECK(report.c1.pass);
    CHECK(report.c2.pass);
    CHECK(report.c3.pass);
    CHECK(report.c4.pass);
    CHECK(report.pass);
}
