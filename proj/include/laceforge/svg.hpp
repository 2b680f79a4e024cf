#pragma once

#include <string>

#include "laceforge/pattern.hpp"

namespace lace {

struct RenderOptions {
    double scale = 40.0;         // svg units per pattern unit
    double margin = 1.0;         // pattern units around the bounding box
    double strokeWidth = 0.05;   // pattern units
    double vertexRadius = 0.08;  // pattern units
    bool colorPaths = false;     // one color per osculating path
    bool glyphs = false;         // braid words as text at vertices
    bool drawTiles = true;       // tile polygons underneath, when present

    void validate() const;
};

// Deterministic standalone SVG with one group per layer.
std::string render_svg(const PatternDocument& doc, const RenderOptions& options = {});

}  // namespace lace
