#pragma once

#include <array>
#include <optional>
#include <string>

#include "laceforge/pattern.hpp"

namespace lace {

struct InvalidParams : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Empirical C4 bounds, measured once on radius-30 patches (worst per-path
// Deming deviation) and frozen with a 5 percent margin.
double p3_dual_s_max();
double ammann_s_max();
double ammann_beenker_s_max();

struct GenerateParams {
    std::string kind;  // bigrid | p3-gdm | p3-deflate | p3-dual | ammann | multigrid-n
    double radius = 15.0;
    double alphaDeg = 60.0;
    // fibonacci | custom:<SL-string> | counterexample:<m> | mechanical:<slope>
    std::string word = "fibonacci";
    int level = 10;      // fibonacci word level
    double lenS = 1.0;
    double lenL = kGoldenRatio;
    int lines = 0;       // lines per bigrid family; 0 = use the whole word
    std::optional<std::array<double, 5>> offsets;
    unsigned seed = 1;
    bool perturb = false;   // retry with jittered offsets on degeneracy
    int steps = 6;          // p3-deflate
    int families = 4;       // multigrid-n
    double tilt = 0.07;     // star rotation keeping families off the axes
    bool verify = false;    // embed a verification report (kind defaults)
};

// Deterministic document for (kind, params, seed).
PatternDocument generate_pattern(const GenerateParams& params);

// Default C4 bound for a generated document, when the kind has one: the
// analytic bigrid bound or a frozen empirical constant.
std::optional<double> default_s_max(const PatternDocument& doc);

}  // namespace lace
