#include "laceforge/arrangement.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <unordered_map>

namespace lace {

double line_position(const LineFamily& family, int k) {
    if (k < family.kmin || k > family.kmax)
        throw IndexOutOfRange("line index " + std::to_string(k) + " outside family range");
    if (const auto* cs = std::get_if<ConstantSpacing>(&family.spacing))
        return family.offset + k * cs->step;

    const auto& ws = std::get<WordSpacing>(family.spacing);
    const SpacingWord& w = ws.word;
    auto gap = [&](int g) {
        long idx = static_cast<long>(ws.anchor) + g;
        if (idx < 0 || idx >= static_cast<long>(w.size()))
            throw IndexOutOfRange("spacing word does not cover gap " + std::to_string(g));
        return w.length_at(static_cast<std::size_t>(idx));
    };
    double pos = family.offset;
    if (k >= 0)
        for (int g = 0; g < k; ++g) pos += gap(g);
    else
        for (int g = -1; g >= k; --g) pos -= gap(g);
    return pos;
}

void Multigrid::validate() const {
    if (families.size() < 2)
        throw std::invalid_argument("multigrid needs at least 2 families");
    if (gpTolerance <= 0)
        throw std::invalid_argument("gpTolerance must be positive");
    for (std::size_t i = 0; i < families.size(); ++i)
        for (std::size_t j = i + 1; j < families.size(); ++j)
            if (line_angle_between(families[i].normalAngle, families[j].normalAngle) < kAngleTol)
                throw ParallelLines("families " + std::to_string(i) + " and " +
                                    std::to_string(j) + " share a line direction");
}

Vec2 intersect(const LineFamily& a, int ka, const LineFamily& b, int kb) {
    Vec2 na = a.normal(), nb = b.normal();
    double det = na.cross(nb);
    if (line_angle_between(a.normalAngle, b.normalAngle) < kAngleTol)
        throw ParallelLines("lines are parallel");
    double pa = line_position(a, ka), pb = line_position(b, kb);
    return {(pa * nb.y - pb * na.y) / det, (na.x * pb - nb.x * pa) / det};
}

void PlanarDrawing::rebuild_rotation() {
    rotation.assign(vertices.size(), {});
    for (std::size_t e = 0; e < edges.size(); ++e) {
        rotation[static_cast<std::size_t>(edges[e].tail)].push_back(static_cast<int>(e));
        rotation[static_cast<std::size_t>(edges[e].head)].push_back(static_cast<int>(e));
    }
    for (std::size_t v = 0; v < vertices.size(); ++v) {
        std::sort(rotation[v].begin(), rotation[v].end(), [&](int ea, int eb) {
            double aa = angle_of(edge_vector_from(ea, static_cast<int>(v)));
            double ab = angle_of(edge_vector_from(eb, static_cast<int>(v)));
            if (aa != ab) return aa < ab;
            return ea < eb;
        });
    }
}

namespace {

struct CrossingKey {
    GridLine a, b;  // a.family < b.family
    bool operator<(const CrossingKey& o) const {
        return std::tie(a, b) < std::tie(o.a, o.b);
    }
};

// Spatial hash cell for the minimum-gap scan.
std::uint64_t cell_key(Vec2 p, double cell) {
    auto ix = static_cast<std::int64_t>(std::floor(p.x / cell));
    auto iy = static_cast<std::int64_t>(std::floor(p.y / cell));
    return (static_cast<std::uint64_t>(ix) << 32) ^
           (static_cast<std::uint64_t>(iy) & 0xffffffffULL);
}

}  // namespace

Arrangement build_arrangement(const Multigrid& grid, const Rect& clip) {
    grid.validate();
    if (clip.degenerate()) throw std::invalid_argument("clip rectangle is degenerate");

    const std::size_t n = grid.family_count();

    // All pairwise crossings, keyed so each is created once.
    struct Crossing {
        Vec2 pos;
        bool inside;
        int vertexId = -1;  // assigned to kept crossings only
    };
    std::map<CrossingKey, Crossing> crossings;
    for (std::size_t i = 0; i < n; ++i) {
        const LineFamily& fa = grid.families[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            const LineFamily& fb = grid.families[j];
            for (int ka = fa.kmin; ka <= fa.kmax; ++ka) {
                for (int kb = fb.kmin; kb <= fb.kmax; ++kb) {
                    Vec2 p = intersect(fa, ka, fb, kb);
                    CrossingKey key{{static_cast<int>(i), ka}, {static_cast<int>(j), kb}};
                    crossings.emplace(key, Crossing{p, clip.contains(p)});
                }
            }
        }
    }

    Arrangement out;
    out.clip = clip;
    for (auto& [key, c] : crossings) {
        if (!c.inside) continue;
        c.vertexId = static_cast<int>(out.drawing.vertices.size());
        out.drawing.vertices.push_back({c.pos, false});
        out.sources.push_back({key.a, key.b});
    }
    if (out.drawing.vertices.empty())
        throw EmptyArrangement("no multigrid crossing lies inside the clip");

    // General-position scan: any two kept crossings closer than gpTolerance
    // means three or more lines are effectively concurrent.
    {
        double cell = std::max(grid.gpTolerance * 4.0, 1e-12);
        std::unordered_map<std::uint64_t, std::vector<int>> buckets;
        buckets.reserve(out.drawing.vertices.size() * 2);
        for (std::size_t v = 0; v < out.drawing.vertices.size(); ++v) {
            Vec2 p = out.drawing.vertices[v].pos;
            for (int dx = -1; dx <= 1; ++dx)
                for (int dy = -1; dy <= 1; ++dy) {
                    auto it = buckets.find(cell_key({p.x + dx * cell, p.y + dy * cell}, cell));
                    if (it == buckets.end()) continue;
                    for (int u : it->second)
                        if (distance(out.drawing.vertices[static_cast<std::size_t>(u)].pos, p) <
                            grid.gpTolerance)
                            throw DegenerateIntersection(
                                "crossings closer than gpTolerance near (" +
                                std::to_string(p.x) + ", " + std::to_string(p.y) + ")");
                }
            buckets[cell_key(p, cell)].push_back(static_cast<int>(v));
        }
    }

    // Walk every line, sort its crossings by parameter, join consecutive kept
    // crossings with edges. A kept crossing next to a dropped (or absent)
    // neighbour becomes a boundary vertex.
    for (std::size_t i = 0; i < n; ++i) {
        const LineFamily& fa = grid.families[i];
        Vec2 dir = fa.direction();
        for (int ka = fa.kmin; ka <= fa.kmax; ++ka) {
            std::vector<std::pair<double, const Crossing*>> onLine;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                const LineFamily& fb = grid.families[j];
                for (int kb = fb.kmin; kb <= fb.kmax; ++kb) {
                    CrossingKey key = i < j ? CrossingKey{{static_cast<int>(i), ka},
                                                          {static_cast<int>(j), kb}}
                                            : CrossingKey{{static_cast<int>(j), kb},
                                                          {static_cast<int>(i), ka}};
                    const Crossing& c = crossings.at(key);
                    onLine.emplace_back(dir.dot(c.pos), &c);
                }
            }
            std::sort(onLine.begin(), onLine.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            for (std::size_t s = 0; s < onLine.size(); ++s) {
                const Crossing& c = *onLine[s].second;
                if (!c.inside) continue;
                bool prevKept = s > 0 && onLine[s - 1].second->inside;
                bool nextKept = s + 1 < onLine.size() && onLine[s + 1].second->inside;
                if (!prevKept || !nextKept)
                    out.drawing.vertices[static_cast<std::size_t>(c.vertexId)].boundary = true;
                if (nextKept)
                    out.drawing.edges.push_back(
                        {c.vertexId, onLine[s + 1].second->vertexId});
            }
        }
    }

    out.drawing.rebuild_rotation();
    return out;
}

std::vector<Face> extract_faces(const PlanarDrawing& d) {
    // Index of each edge inside its endpoints' rotation lists.
    std::unordered_map<std::uint64_t, std::size_t> slot;
    slot.reserve(d.edges.size() * 2);
    auto hkey = [](int v, int e) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(v)) << 32) |
               static_cast<std::uint32_t>(e);
    };
    for (std::size_t v = 0; v < d.vertices.size(); ++v)
        for (std::size_t s = 0; s < d.rotation[v].size(); ++s)
            slot[hkey(static_cast<int>(v), d.rotation[v][s])] = s;

    // Half-edge (e, startVertex). Faces are traced with next = ccw predecessor
    // of the twin at the head vertex, which walks bounded faces ccw.
    std::vector<Face> faces;
    std::vector<std::uint8_t> visited(d.edges.size() * 2, 0);
    auto halfId = [&](std::size_t e, bool fromTail) { return e * 2 + (fromTail ? 0 : 1); };
    for (std::size_t e0 = 0; e0 < d.edges.size(); ++e0) {
        for (int side = 0; side < 2; ++side) {
            bool fromTail = side == 0;
            if (visited[halfId(e0, fromTail)]) continue;
            Face face;
            std::size_t e = e0;
            bool ft = fromTail;
            do {
                visited[halfId(e, ft)] = 1;
                const DrawingEdge& de = d.edges[e];
                int u = ft ? de.tail : de.head;
                int v = ft ? de.head : de.tail;
                face.vertexCycle.push_back(u);
                if (d.vertices[static_cast<std::size_t>(u)].boundary) face.touchesBoundary = true;
                const auto& rot = d.rotation[static_cast<std::size_t>(v)];
                std::size_t s = slot.at(hkey(v, static_cast<int>(e)));
                int nextEdge = rot[(s + rot.size() - 1) % rot.size()];
                e = static_cast<std::size_t>(nextEdge);
                ft = d.edges[e].tail == v;
            } while (!(e == e0 && ft == fromTail));
            double area = 0.0;
            for (std::size_t k = 0; k < face.vertexCycle.size(); ++k) {
                Vec2 a = d.vertices[static_cast<std::size_t>(face.vertexCycle[k])].pos;
                Vec2 b = d.vertices[static_cast<std::size_t>(
                                        face.vertexCycle[(k + 1) % face.vertexCycle.size()])]
                             .pos;
                area += a.cross(b);
            }
            face.area = area / 2.0;
            face.outer = face.area <= 0.0;
            faces.push_back(std::move(face));
        }
    }
    return faces;
}

OrientedDrawing assign_down_orientation(const PlanarDrawing& d, Vec2 up) {
    OrientedDrawing out;
    static_cast<PlanarDrawing&>(out) = d;
    out.up = up.normalized();
    for (std::size_t e = 0; e < out.edges.size(); ++e) {
        DrawingEdge& de = out.edges[e];
        Vec2 v = out.vertices[static_cast<std::size_t>(de.head)].pos -
                 out.vertices[static_cast<std::size_t>(de.tail)].pos;
        double comp = v.dot(out.up) / v.norm();
        if (std::fabs(comp) < std::sin(kAngleTol))
            throw HorizontalEdge("edge " + std::to_string(e) + " is perpendicular to up",
                                 static_cast<int>(e));
        if (comp > 0) std::swap(de.tail, de.head);
    }
    return out;
}

}  // namespace lace
