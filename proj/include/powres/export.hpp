#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "powres/koszul.hpp"
#include "powres/power_complex.hpp"
#include "powres/resolution.hpp"

namespace powres {

inline constexpr int kSchemaVersion = 1;

/// Which parts to write; absent parts are omitted from the document.
struct ExportOptions {
  const CellComplex* complex = nullptr;
  const GradedComplex* resolution = nullptr;
  const StrandComplex* strand = nullptr;
};

std::string export_json(const ExportOptions& options);

/// Reads back the tree, r and cell list written by `export_json`.
/// Throws ParseError on malformed documents.
CellComplex import_complex_json(std::string_view document);

/// A Macaulay2 script that rebuilds the differentials and checks d^2 = 0,
/// the augmentation, and the Betti numbers against res(I^r).
std::string export_m2(const CellComplex& complex, const GradedComplex& resolution);

/// 2-D drawing data: phi itself for q <= 2, (x + 0.35z, y + 0.35z) for q = 3.
struct RenderScene {
  struct Point2 {
    double x = 0;
    double y = 0;
    bool operator==(const Point2&) const = default;
  };
  struct Arrow {
    std::size_t from;
    std::size_t to;
  };
  std::vector<Point2> points;       // one per 0-cell, canonical order
  std::vector<std::string> labels;  // cell labels of the 0-cells
  std::vector<Arrow> arrows;        // one per 1-cell, source to sink
  std::vector<std::vector<std::size_t>> squares;  // 2-cells as vertex cycles
};

/// Throws DomainError for q > 3.
RenderScene render_scene(const CellComplex& complex);
std::string render_svg(const RenderScene& scene);

}  // namespace powres
