#include "laceforge/svg.hpp"

#include <cmath>
#include <cstdio>
#include <set>

namespace lace {

void RenderOptions::validate() const {
    if (scale <= 0 || margin < 0 || strokeWidth <= 0 || vertexRadius <= 0)
        throw std::invalid_argument("render dimensions must be positive");
}

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

// Distinct, deterministic path colors.
std::string path_color(int pathId) {
    int hue = (pathId * 137) % 360;
    return "hsl(" + std::to_string(hue) + ",70%,42%)";
}

}  // namespace

std::string render_svg(const PatternDocument& doc, const RenderOptions& options) {
    options.validate();
    Rect bbox{0, 0, 1, 1};
    if (!doc.drawing.vertices.empty()) {
        Vec2 p0 = doc.drawing.vertices[0].pos;
        bbox = {p0.x, p0.y, p0.x, p0.y};
        for (const DrawingVertex& v : doc.drawing.vertices) {
            bbox.xmin = std::min(bbox.xmin, v.pos.x);
            bbox.xmax = std::max(bbox.xmax, v.pos.x);
            bbox.ymin = std::min(bbox.ymin, v.pos.y);
            bbox.ymax = std::max(bbox.ymax, v.pos.y);
        }
    }
    if (doc.tiles) {
        for (const PatternTile& t : *doc.tiles)
            for (Vec2 c : t.corners) {
                bbox.xmin = std::min(bbox.xmin, c.x);
                bbox.xmax = std::max(bbox.xmax, c.x);
                bbox.ymin = std::min(bbox.ymin, c.y);
                bbox.ymax = std::max(bbox.ymax, c.y);
            }
    }
    bbox = bbox.shrunk(-options.margin);
    double s = options.scale;
    auto X = [&](double x) { return (x - bbox.xmin) * s; };
    auto Y = [&](double y) { return (bbox.ymax - y) * s; };  // flip to svg coordinates

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(bbox.width() * s) +
           "\" height=\"" + num(bbox.height() * s) + "\" viewBox=\"0 0 " +
           num(bbox.width() * s) + " " + num(bbox.height() * s) + "\">\n";

    out += "<g id=\"tiles\">\n";
    if (doc.tiles && options.drawTiles) {
        for (const PatternTile& t : *doc.tiles) {
            std::string fill = t.kind == "thick"  ? "#dce8f5"
                               : t.kind == "thin" ? "#f5e8dc"
                                                  : "#eeeeee";
            out += "<polygon points=\"";
            for (int c = 0; c < 4; ++c) {
                Vec2 p = t.corners[static_cast<std::size_t>(c)];
                out += num(X(p.x)) + "," + num(Y(p.y));
                if (c != 3) out += " ";
            }
            out += "\" fill=\"" + fill + "\" stroke=\"#b0b0b0\" stroke-width=\"" +
                   num(options.strokeWidth * s * 0.4) + "\"/>\n";
        }
    }
    out += "</g>\n";

    out += "<g id=\"edges\" stroke-width=\"" + num(options.strokeWidth * s) +
           "\" stroke-linecap=\"round\">\n";
    for (std::size_t e = 0; e < doc.drawing.edges.size(); ++e) {
        const DrawingEdge& de = doc.drawing.edges[e];
        Vec2 a = doc.drawing.vertices[static_cast<std::size_t>(de.tail)].pos;
        Vec2 b = doc.drawing.vertices[static_cast<std::size_t>(de.head)].pos;
        std::string stroke = "#222222";
        if (options.colorPaths && doc.edgeToPath && e < doc.edgeToPath->size())
            stroke = path_color((*doc.edgeToPath)[e]);
        out += "<line x1=\"" + num(X(a.x)) + "\" y1=\"" + num(Y(a.y)) + "\" x2=\"" +
               num(X(b.x)) + "\" y2=\"" + num(Y(b.y)) + "\" stroke=\"" + stroke + "\"/>\n";
    }
    out += "</g>\n";

    out += "<g id=\"vertices\" fill=\"#444444\">\n";
    for (const DrawingVertex& v : doc.drawing.vertices) {
        out += "<circle cx=\"" + num(X(v.pos.x)) + "\" cy=\"" + num(Y(v.pos.y)) +
               "\" r=\"" + num(options.vertexRadius * s) + "\"";
        if (v.boundary) out += " fill=\"#bbbbbb\"";
        out += "/>\n";
    }
    out += "</g>\n";

    out += "<g id=\"glyphs\" font-family=\"monospace\" font-size=\"" +
           num(options.vertexRadius * s * 2.2) + "\" fill=\"#a03030\">\n";
    if (options.glyphs && doc.vertexWords) {
        for (auto& [v, word] : *doc.vertexWords) {
            Vec2 p = doc.drawing.vertices[static_cast<std::size_t>(v)].pos;
            out += "<text x=\"" + num(X(p.x) + options.vertexRadius * s * 1.3) + "\" y=\"" +
                   num(Y(p.y) - options.vertexRadius * s * 1.3) + "\">" + word + "</text>\n";
        }
    }
    out += "</g>\n";
    out += "</svg>\n";
    return out;
}

}  // namespace lace
