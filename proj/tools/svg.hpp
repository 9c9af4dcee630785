#pragma once

#include "hyperdel/hypertri.hpp"

namespace hyperdel::cli {

struct SvgOptions {
  bool vertex_labels = false;
  double width = 800;
};

/// SVG 1.1 drawing of all triangles at their label positions: black filled dark,
/// white filled light. Output depends only on the input.
std::string render_svg(const Hypertriangulation& h, const SvgOptions& options = {});

/// Nine significant digits, shortest form.
std::string svg_number(double value);

}  // namespace hyperdel::cli
