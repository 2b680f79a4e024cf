#include "laceforge/braid.hpp"

#include <algorithm>
#include <set>

#include "laceforge/lacecheck.hpp"

namespace lace {

BraidWord BraidWord::parse(const std::string& letters) {
    BraidWord w;
    for (char c : letters) {
        switch (c) {
            case 'C': w.symbols.push_back(BraidSymbol::Cross); break;
            case 'T': w.symbols.push_back(BraidSymbol::TwistBoth); break;
            case 'L': w.symbols.push_back(BraidSymbol::TwistLeft); break;
            case 'R': w.symbols.push_back(BraidSymbol::TwistRight); break;
            default:
                throw std::invalid_argument("braid words use letters C, T, L, R");
        }
    }
    return w;
}

std::string BraidWord::str() const {
    std::string s;
    for (BraidSymbol b : symbols) s += static_cast<char>(b);
    return s;
}

bool validate_braidword(const BraidWord& w) {
    return std::any_of(w.symbols.begin(), w.symbols.end(),
                       [](BraidSymbol s) { return s == BraidSymbol::Cross; });
}

namespace {

// Signed star directions: star vectors followed by their negations.
std::vector<Vec2> signed_star(const std::vector<Vec2>& star) {
    std::vector<Vec2> dirs;
    for (Vec2 v : star) dirs.push_back(v.normalized());
    for (Vec2 v : star) dirs.push_back(-v.normalized());
    return dirs;
}

// Rotational symmetries of the signed star: permutations induced by
// rotations that map the direction set onto itself. Identity is always
// first; result is sorted by rotation angle.
std::vector<std::vector<int>> star_symmetries(const std::vector<Vec2>& dirs) {
    const std::size_t m = dirs.size();
    std::vector<double> angles(m);
    for (std::size_t i = 0; i < m; ++i) angles[i] = angle_of(dirs[i]);
    std::vector<std::pair<double, std::vector<int>>> found;
    for (std::size_t j = 0; j < m; ++j) {
        double delta = angles[j] - angles[0];
        std::vector<int> perm(m, -1);
        bool ok = true;
        for (std::size_t i = 0; i < m && ok; ++i) {
            Vec2 rotated = dirs[i].rotated(delta);
            int target = -1;
            for (std::size_t k = 0; k < m; ++k)
                if (std::fabs(rotated.cross(dirs[k])) < kAngleTol && rotated.dot(dirs[k]) > 0)
                    target = static_cast<int>(k);
            if (target < 0)
                ok = false;
            else
                perm[i] = target;
        }
        if (ok) {
            double norm = std::fmod(delta + 4 * kPi, 2 * kPi);
            found.emplace_back(norm, std::move(perm));
        }
    }
    std::sort(found.begin(), found.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::vector<int>> out;
    for (auto& [angle, perm] : found) out.push_back(std::move(perm));
    return out;
}

std::string render_sequence(const std::vector<std::pair<int, bool>>& seq) {
    std::string s;
    for (auto& [dir, isOut] : seq) {
        s += std::to_string(dir);
        s += isOut ? '+' : '-';
        s += '|';
    }
    return s;
}

std::string min_cyclic(std::vector<std::pair<int, bool>> seq) {
    std::string best = render_sequence(seq);
    for (std::size_t i = 1; i < seq.size(); ++i) {
        std::rotate(seq.begin(), seq.begin() + 1, seq.end());
        best = std::min(best, render_sequence(seq));
    }
    return best;
}

}  // namespace

std::vector<Vec2> drawing_direction_star(const PlanarDrawing& d, double tol) {
    std::vector<double> angles;
    for (const DrawingEdge& e : d.edges) {
        Vec2 v = d.vertices[static_cast<std::size_t>(e.head)].pos -
                 d.vertices[static_cast<std::size_t>(e.tail)].pos;
        double a = std::fmod(angle_of(v), kPi);
        bool known = false;
        for (double b : angles)
            if (line_angle_between(a, b) < tol) known = true;
        if (!known) angles.push_back(a);
    }
    std::sort(angles.begin(), angles.end());
    std::vector<Vec2> star;
    star.reserve(angles.size());
    for (double a : angles) star.push_back(unit_vector(a));
    return star;
}

VertexClassKey classify_vertex_local(const OrientedDrawing& d, int vertex,
                                     const std::vector<Vec2>& star) {
    if (d.vertices[static_cast<std::size_t>(vertex)].boundary)
        throw BoundaryVertex("vertex " + std::to_string(vertex) + " is on the boundary");

    std::vector<Vec2> dirs = signed_star(star);
    std::vector<std::pair<int, bool>> seq;
    for (int e : d.rotation[static_cast<std::size_t>(vertex)]) {
        Vec2 v = d.edge_vector_from(e, vertex).normalized();
        int match = -1;
        for (std::size_t k = 0; k < dirs.size(); ++k)
            if (std::fabs(v.cross(dirs[k])) < 1e-6 && v.dot(dirs[k]) > 0)
                match = static_cast<int>(k);
        if (match < 0)
            throw UnalignedEdge("edge " + std::to_string(e) +
                                " is not aligned with the star");
        bool isOut = d.edges[static_cast<std::size_t>(e)].tail == vertex;
        seq.emplace_back(match, isOut);
    }

    auto symmetries = star_symmetries(dirs);
    VertexClassKey key;
    key.canonical = std::string(1, char(0x7f));
    for (std::size_t r = 0; r < symmetries.size(); ++r) {
        std::vector<std::pair<int, bool>> mapped = seq;
        for (auto& [dir, isOut] : mapped) dir = symmetries[r][static_cast<std::size_t>(dir)];
        std::string candidate = min_cyclic(std::move(mapped));
        if (candidate < key.canonical) {
            key.canonical = candidate;
            key.rotationIndex = static_cast<int>(r);
        }
    }
    return key;
}

LacePattern assign_braids(const OrientedDrawing& d, const BraidMap& map,
                          const EdgeTwistLabel& labels, const std::vector<Vec2>& star) {
    LacePattern out;
    out.edgeTwists.resize(d.edges.size());
    for (std::size_t e = 0; e < d.edges.size(); ++e)
        out.edgeTwists[e] = labels.at(static_cast<int>(e));

    std::set<std::string> missing;
    for (std::size_t v = 0; v < d.vertices.size(); ++v) {
        if (d.vertices[v].boundary) continue;
        VertexClassKey key = classify_vertex_local(d, static_cast<int>(v), star);
        auto it = map.entries.find({key.canonical, key.rotationIndex});
        if (it != map.entries.end()) {
            out.vertexWords[static_cast<int>(v)] = it->second;
        } else if (map.defaultWord) {
            out.vertexWords[static_cast<int>(v)] = *map.defaultWord;
        } else {
            missing.insert(key.canonical + "@" + std::to_string(key.rotationIndex));
        }
        out.vertexClasses[static_cast<int>(v)] = key;
    }
    if (!missing.empty()) {
        std::string msg = "braid map lacks entries for:";
        std::vector<std::string> keys(missing.begin(), missing.end());
        for (const std::string& k : keys) msg += " " + k;
        throw UnmappedClass(msg, std::move(keys));
    }
    return out;
}

}  // namespace lace
