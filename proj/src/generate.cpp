#include "laceforge/generate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "laceforge/gdm.hpp"
#include "laceforge/p3.hpp"

namespace lace {

// Worst per-path deviations measured at radius 30: p3-dual 1.6051, ammann
// 2.6295, ammann-beenker dual 1.3473. Frozen with a 5 percent margin.
double p3_dual_s_max() { return 1.6854; }
double ammann_s_max() { return 2.7610; }
double ammann_beenker_s_max() { return 1.4147; }

namespace {

using nlohmann::json;

SpacingWord word_for(const GenerateParams& p, bool second) {
    if (p.word == "fibonacci") return fibonacci_word(p.level, p.lenS, p.lenL);
    if (p.word.rfind("custom:", 0) == 0)
        return SpacingWord(p.word.substr(7), p.lenS, p.lenL);
    if (p.word.rfind("counterexample:", 0) == 0) {
        int m = std::stoi(p.word.substr(15));
        auto [wa, wb] = counterexample_words(m, p.lenS, p.lenL);
        return second ? wb : wa;
    }
    if (p.word.rfind("mechanical:", 0) == 0) {
        double slope = std::stod(p.word.substr(11));
        std::size_t length = fibonacci_word(p.level).size();
        return mechanical_word(slope, 0.0, length, p.lenS, p.lenL);
    }
    throw InvalidParams("unknown word spec '" + p.word + "'");
}

LineFamily word_family(double normalAngle, const SpacingWord& word, int lineCount) {
    int gaps = lineCount > 0 ? std::min(lineCount - 1, static_cast<int>(word.size()))
                             : static_cast<int>(word.size());
    SpacingWord trimmed(word.symbols().substr(0, static_cast<std::size_t>(gaps)),
                        word.len_s(), word.len_l());
    double span = trimmed.total_length();
    return {normalAngle, -span / 2, WordSpacing{trimmed, 0}, 0, gaps};
}

PatternTile tile_record(const PlacedTile& t) {
    PatternTile out;
    out.corners = t.corners;
    out.kind = t.kind == RhombKind::Thick ? "thick" : "thin";
    for (int s = 0; s < 4; ++s) {
        EdgeMark m = t.mark(s);
        std::string mark(1, m.shape == ArrowShape::Double ? 'D' : 'S');
        mark += m.sense > 0 ? '+' : '-';
        out.marks.push_back(mark);
    }
    return out;
}

// Drawing of a tiling's edge graph, directed downward.
OrientedDrawing tiling_graph(const PenroseTiling& t) {
    std::map<std::pair<long, long>, int> vertexIds;
    auto key = [](Vec2 p) {
        return std::pair<long, long>{std::lround(p.x * 1e7), std::lround(p.y * 1e7)};
    };
    PlanarDrawing d;
    auto vertexOf = [&](Vec2 p) {
        auto [it, fresh] = vertexIds.emplace(key(p), static_cast<int>(d.vertices.size()));
        if (fresh) d.vertices.push_back({p, false});
        return it->second;
    };
    std::map<std::pair<long, long>, std::pair<int, int>> edgeSeen;
    for (const PlacedTile& tile : t.tiles) {
        for (int s = 0; s < 4; ++s) {
            Vec2 a = tile.corners[static_cast<std::size_t>(s)];
            Vec2 b = tile.corners[static_cast<std::size_t>((s + 1) % 4)];
            auto mid = key((a + b) / 2);
            if (edgeSeen.count(mid)) continue;
            edgeSeen[mid] = {vertexOf(a), vertexOf(b)};
        }
    }
    for (auto& [mid, pair] : edgeSeen) d.edges.push_back({pair.first, pair.second});
    // Boundary flag from wedge fans that do not close up.
    auto verts = tiling_vertices(t);
    for (const TilingVertex& v : verts)
        if (!v.interior) d.vertices[static_cast<std::size_t>(vertexOf(v.pos))].boundary = true;
    d.rebuild_rotation();
    return assign_down_orientation(d, {0, 1});
}

std::array<double, 5> offsets_for(const GenerateParams& p) {
    return p.offsets ? *p.offsets : default_pentagrid_offsets(p.seed);
}

PatternDocument generate_bigrid(const GenerateParams& p) {
    if (!(p.alphaDeg > 0 && p.alphaDeg < 90))
        throw InvalidParams("bigrid alpha must be in (0, 90) degrees");
    double alpha = p.alphaDeg * kPi / 180.0;
    double s = std::sin(alpha);
    SpacingWord wa = word_for(p, false);
    SpacingWord wb = word_for(p, true);
    // Perpendicular gaps are word length * sin(alpha), so edge lengths along
    // the lines equal the word's nominal lengths.
    SpacingWord sa(wa.symbols(), wa.len_s() * s, wa.len_l() * s);
    SpacingWord sb(wb.symbols(), wb.len_s() * s, wb.len_l() * s);

    Multigrid g;
    g.families = {word_family(-alpha / 2, sa, p.lines), word_family(alpha / 2, sb, p.lines)};
    double spanA = std::get<WordSpacing>(g.families[0].spacing).word.total_length();
    double spanB = std::get<WordSpacing>(g.families[1].spacing).word.total_length();
    double half = 0.65 * std::min(spanA, spanB) / 2;
    Arrangement arr = build_arrangement(g, Rect::centered_square(half));

    PatternDocument doc;
    doc.kind = "bigrid";
    doc.seed = p.seed;
    doc.params = {{"alphaDeg", p.alphaDeg}, {"word", p.word},     {"level", p.level},
                  {"lenS", p.lenS},         {"lenL", p.lenL},     {"lines", p.lines}};
    doc.drawing = assign_down_orientation(arr.drawing, {0, 1});
    return doc;
}

PatternDocument generate_p3(const GenerateParams& p, bool dual) {
    if (p.radius <= 0) throw InvalidParams("radius must be positive");
    PenroseTiling t = pentagrid_p3(p.radius, offsets_for(p), p.tilt);
    PatternDocument doc;
    doc.kind = dual ? "p3-dual" : "p3-gdm";
    doc.seed = p.seed;
    doc.params = {{"radius", p.radius}, {"tilt", p.tilt}};
    {
        json off = json::array();
        for (double v : offsets_for(p)) off.push_back(v);
        doc.params["offsets"] = std::move(off);
    }
    std::vector<PatternTile> tiles;
    tiles.reserve(t.tiles.size());
    for (std::size_t i = 0; i < t.tiles.size(); ++i) {
        PatternTile rec = tile_record(t.tiles[i]);
        const RhombTile& src = t.gdmSource->tiles[i];
        rec.gridA = std::array<int, 2>{src.gridA.family, src.gridA.line};
        rec.gridB = std::array<int, 2>{src.gridB.family, src.gridB.line};
        tiles.push_back(std::move(rec));
    }
    doc.tiles = std::move(tiles);
    doc.drawing = dual ? centroid_dual(t) : tiling_graph(t);
    return doc;
}

PatternDocument generate_p3_deflate(const GenerateParams& p) {
    if (p.steps < 0) throw InvalidParams("steps must be non-negative");
    PenroseTiling t = deflate(single_rhomb(RhombKind::Thick, p.tilt), p.steps);
    PatternDocument doc;
    doc.kind = "p3-deflate";
    doc.seed = p.seed;
    doc.params = {{"steps", p.steps}, {"tilt", p.tilt}};
    std::vector<PatternTile> tiles;
    for (const PlacedTile& tile : t.tiles) tiles.push_back(tile_record(tile));
    doc.tiles = std::move(tiles);
    doc.drawing = tiling_graph(t);
    return doc;
}

PatternDocument generate_ammann(const GenerateParams& p) {
    if (p.radius <= 0) throw InvalidParams("radius must be positive");
    // Five word-spaced families with orientations spaced pi/5, Fibonacci
    // spacing lenS = 1, lenL = tau.
    std::mt19937 rng(p.seed);
    std::uniform_real_distribution<double> uni(0.05, 0.95);

    int gaps = static_cast<int>(std::ceil(3.0 * p.radius / 1.0)) + 4;
    int level = 1;
    while (static_cast<int>(fibonacci_word(level).size()) < gaps) ++level;
    SpacingWord word = fibonacci_word(level, p.lenS, p.lenL);
    SpacingWord trimmed(word.symbols().substr(0, static_cast<std::size_t>(gaps)), p.lenS,
                        p.lenL);
    double span = trimmed.total_length();

    Multigrid g;
    for (int i = 0; i < 5; ++i) {
        double offset = -span / 2 + uni(rng);
        g.families.push_back(
            {kPi * i / 5 + p.tilt, offset, WordSpacing{trimmed, 0}, 0, gaps});
    }
    Arrangement arr = build_arrangement(g, Rect::centered_square(p.radius));
    PatternDocument doc;
    doc.kind = "ammann";
    doc.seed = p.seed;
    doc.params = {{"radius", p.radius}, {"tilt", p.tilt}, {"lenS", p.lenS}, {"lenL", p.lenL}};
    doc.drawing = assign_down_orientation(arr.drawing, {0, 1});
    return doc;
}

PatternDocument generate_multigrid(const GenerateParams& p) {
    if (p.families < 2) throw InvalidParams("multigrid-n needs n >= 2");
    if (p.radius <= 0) throw InvalidParams("radius must be positive");
    std::mt19937 rng(p.seed);
    std::uniform_real_distribution<double> uni(0.05, 0.95);
    Multigrid g;
    int span = static_cast<int>(std::ceil(p.radius * 1.5)) + 3;
    for (int i = 0; i < p.families; ++i)
        g.families.push_back(
            {kPi * i / p.families + p.tilt, uni(rng), ConstantSpacing{1.0}, -span, span});
    RhombTiling t = gdm_dual(g, Rect::centered_square(p.radius));

    PatternDocument doc;
    doc.kind = "multigrid-n";
    doc.seed = p.seed;
    doc.params = {{"radius", p.radius}, {"tilt", p.tilt}, {"n", p.families}};
    std::vector<PatternTile> tiles;
    for (const RhombTile& tile : t.tiles) {
        PatternTile rec;
        rec.corners = tile.corners;
        rec.gridA = std::array<int, 2>{tile.gridA.family, tile.gridA.line};
        rec.gridB = std::array<int, 2>{tile.gridB.family, tile.gridB.line};
        tiles.push_back(std::move(rec));
    }
    doc.tiles = std::move(tiles);
    doc.drawing = centroid_dual_of(t, {0, 1});
    return doc;
}

}  // namespace

std::optional<double> default_s_max(const PatternDocument& doc) {
    if (doc.kind == "bigrid") {
        double alpha = doc.params.value("alphaDeg", 60.0) * kPi / 180.0;
        double lenS = doc.params.value("lenS", 1.0);
        double lenL = doc.params.value("lenL", kGoldenRatio);
        return 0.5 * (lenS + lenL) * std::sin(alpha) + 1e-9;
    }
    if (doc.kind == "p3-dual") return p3_dual_s_max();
    if (doc.kind == "ammann") return ammann_s_max();
    if (doc.kind == "multigrid-n" && doc.params.value("n", 0) == 4)
        return ammann_beenker_s_max();
    return std::nullopt;
}

PatternDocument generate_pattern(const GenerateParams& params) {
    GenerateParams p = params;
    PatternDocument doc;
    for (int attempt = 0;; ++attempt) {
        try {
            if (p.kind == "bigrid") doc = generate_bigrid(p);
            else if (p.kind == "p3-gdm") doc = generate_p3(p, false);
            else if (p.kind == "p3-dual") doc = generate_p3(p, true);
            else if (p.kind == "p3-deflate") doc = generate_p3_deflate(p);
            else if (p.kind == "ammann") doc = generate_ammann(p);
            else if (p.kind == "multigrid-n") doc = generate_multigrid(p);
            else throw InvalidParams("unknown kind '" + p.kind + "'");
            break;
        } catch (const DegenerateIntersection&) {
            if (!p.perturb || attempt >= 8) throw;
            // Seeded jitter of magnitude 10 * gpTolerance.
            std::mt19937 rng(p.seed + 7919u * static_cast<unsigned>(attempt + 1));
            std::uniform_real_distribution<double> jitter(-1e-6, 1e-6);
            std::array<double, 5> off = offsets_for(p);
            for (double& v : off) v += jitter(rng);
            p.offsets = off;
        }
    }
    if (params.verify) {
        VerifyThresholds th;
        std::optional<double> sMax = default_s_max(doc);
        th.sMax = sMax ? *sMax : 1e9;
        doc.verification = verify_all(doc.drawing, th);
    }
    return doc;
}

}  // namespace lace
