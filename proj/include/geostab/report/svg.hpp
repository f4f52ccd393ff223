// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include "geostab/concentration/gini.hpp"
#include "geostab/convergence/convergence.hpp"

#include <string>
#include <vector>

namespace geostab {

// Static, self-contained SVG documents. Deterministic byte-for-byte.

struct BoxGroup {
    std::string label;
    std::vector<double> jaccard;
    std::vector<double> rbo;
};

// Two panels (Jaccard left, RBO right), one Tukey box per group, median value
// annotated above each box. Groups without defined values render as empty slots.
std::string render_similarity_box_svg(const std::string& title, const std::vector<BoxGroup>& groups);

// campaign x engine grid shaded by Gini, values printed in the cells.
std::string render_gini_heatmap_svg(const std::string& title, const GiniMatrix& matrix);

// Mean SE vs sample size / window length, with dashed threshold lines.
std::string render_curve_svg(const std::string& title, const ConvergenceCurve& curve);

} // namespace geostab
