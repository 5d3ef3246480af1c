#include "powres/export.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "powres/errors.hpp"

namespace powres {

using nlohmann::json;

namespace {

json matrix_json(const SparseMatrix& m, const Ring& ring) {
  json entries = json::array();
  for (const auto& e : m.entries) entries.push_back({e.row, e.col, e.coeff, format_monomial(ring, e.monomial)});
  return {{"rows", m.rows}, {"cols", m.cols}, {"entries", entries}};
}

json graded_json(const GradedComplex& c) {
  json out;
  json degrees = json::array();
  for (const auto& level : c.degrees) {
    json row = json::array();
    for (const auto& m : level) row.push_back(format_monomial(c.ring, m));
    degrees.push_back(row);
  }
  out["degrees"] = degrees;
  json diffs = json::array();
  for (int i = 1; i <= c.length(); ++i) {
    json d = matrix_json(c.differentials[i], c.ring);
    d["degree"] = i;
    diffs.push_back(d);
  }
  out["differentials"] = diffs;
  if (c.augmentation) out["augmentation"] = matrix_json(*c.augmentation, c.ring);
  return out;
}

std::vector<int> entries_of(const ExponentVector& a) { return {a.entries().begin(), a.entries().end()}; }

}  // namespace

std::string export_json(const ExportOptions& options) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  if (options.complex) {
    const CellComplex& cx = *options.complex;
    const RootedTree& tree = cx.tree();
    doc["ring"] = tree.ring().names;
    json labels = json::array();
    for (const auto& m : tree.labels()) labels.push_back(format_monomial(tree.ring(), m));
    std::vector<int> tau;
    for (int i = 1; i <= tree.q(); ++i) tau.push_back(tree.tau(i));
    doc["tree"] = {{"labels", labels}, {"tau", tau}};
    doc["r"] = cx.r();
    const Embedding phi(tree);
    json cells = json::array();
    for (int d = 0; d <= cx.dimension(); ++d)
      for (const Cube& c : cx.cells(d))
        cells.push_back({{"dim", d},
                         {"sink", entries_of(c.sink)},
                         {"B", c.directions.indices()},
                         {"coords", phi(c.sink)},
                         {"monomial_label", format_monomial(tree.ring(), cell_label(tree, c))}});
    doc["cells"] = cells;
  }
  if (options.resolution) doc["resolution"] = graded_json(*options.resolution);
  if (options.strand) {
    json strand = graded_json(options.strand->complex);
    json basis = json::array();
    for (const auto& level : options.strand->basis) {
      json row = json::array();
      for (const auto& b : level) row.push_back({{"J", b.wedge.indices()}, {"b", entries_of(b.t_exponent)}});
      basis.push_back(row);
    }
    strand["basis"] = basis;
    strand["r"] = options.strand->r;
    doc["strand"] = strand;
  }
  return doc.dump(2) + "\n";
}

CellComplex import_complex_json(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 1, e.byte);
  }
  try {
    if (doc.at("schema_version").get<int>() != kSchemaVersion) throw ParseError("unsupported schema_version", 1, 1);
    Ring ring{doc.at("ring").get<std::vector<std::string>>()};
    std::vector<Monomial> labels;
    for (const auto& s : doc.at("tree").at("labels")) labels.push_back(parse_monomial(ring, s.get<std::string>()));
    std::vector<int> parent{-1};
    for (int t : doc.at("tree").at("tau").get<std::vector<int>>()) parent.push_back(t);
    RootedTree tree(ring, std::move(labels), std::move(parent));
    const int r = doc.at("r").get<int>();
    std::vector<std::vector<Cube>> cells;
    for (const auto& c : doc.at("cells")) {
      const int dim = c.at("dim").get<int>();
      if (dim < 0) throw ParseError("negative cell dimension", 1, 1);
      if (static_cast<int>(cells.size()) <= dim) cells.resize(dim + 1);
      std::uint32_t mask = 0;
      for (int j : c.at("B").get<std::vector<int>>()) {
        if (j < 1 || j > tree.q()) throw ParseError("direction out of range", 1, 1);
        mask |= 1u << j;
      }
      cells[dim].push_back(Cube{ExponentVector(c.at("sink").get<std::vector<int>>()), DirectionSet(mask)});
    }
    CellComplex complex(std::move(tree), r, std::move(cells));
    for (int d = 1; d <= complex.dimension(); ++d)
      for (const Cube& c : complex.cells(d))
        for (const Facet& f : faces(c, complex.tree()))
          if (!complex.index_of(f.cube))
            throw ParseError("cell " + c.to_string() + " has a face missing from the document", 1, 1);
    return complex;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed complex document: ") + e.what(), 1, 1);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("inconsistent complex document: ") + e.what(), 1, 1);
  }
}

// ---------------------------------------------------------------------------

namespace {

std::string term(const Ring& ring, std::int64_t coeff, const Monomial& m) {
  if (coeff == 0) return "0";
  std::string mono = format_monomial(ring, m);
  std::string out = coeff < 0 ? "-" : "";
  const std::int64_t mag = coeff < 0 ? -coeff : coeff;
  if (mono == "1") return out + std::to_string(mag);
  if (mag != 1) out += std::to_string(mag) + "*";
  return out + mono;
}

std::string m2_matrix(const Ring& ring, const SparseMatrix& m) {
  std::vector<std::vector<std::string>> cells(m.rows, std::vector<std::string>(m.cols, "0"));
  for (const auto& e : m.entries) {
    std::string& slot = cells[e.row][e.col];
    std::string t = term(ring, e.coeff, e.monomial);
    if (slot == "0") {
      slot = t;
    } else {
      slot += (t[0] == '-' ? "" : "+") + t;
    }
  }
  std::string out = "matrix(R, {";
  for (std::size_t i = 0; i < m.rows; ++i) {
    out += i ? ", {" : "{";
    for (std::size_t j = 0; j < m.cols; ++j) out += (j ? ", " : "") + cells[i][j];
    out += "}";
  }
  return out + "})";
}

}  // namespace

std::string export_m2(const CellComplex& complex, const GradedComplex& resolution) {
  const RootedTree& tree = complex.tree();
  const Ring& ring = tree.ring();
  std::ostringstream out;
  out << "-- cellular resolution of I^" << complex.r() << "\n";
  out << "R = QQ[";
  for (std::size_t k = 0; k < ring.size(); ++k) out << (k ? ", " : "") << ring.names[k];
  out << "];\n";
  out << "I = ideal(";
  for (int i = 0; i <= tree.q(); ++i) out << (i ? ", " : "") << format_monomial(ring, tree.label(i));
  out << ");\n";
  out << "r = " << complex.r() << ";\n";
  if (resolution.augmentation) out << "D0 = " << m2_matrix(ring, *resolution.augmentation) << ";\n";
  for (int i = 1; i <= resolution.length(); ++i)
    out << "D" << i << " = " << m2_matrix(ring, resolution.differentials[i]) << ";\n";
  for (int i = 1; i <= resolution.length(); ++i) out << "assert(D" << i - 1 << " * D" << i << " == 0);\n";
  out << "assert(image D0 == image gens (I^r));\n";
  out << "C = res(I^r);\n";
  out << "assert(length C == " << resolution.length() << ");\n";
  out << "assert(toList apply(0..length C, i -> rank C_i) == {";
  for (int i = 0; i <= resolution.length(); ++i) out << (i ? ", " : "") << resolution.rank(i);
  out << "});\n";
  return out.str();
}

// ---------------------------------------------------------------------------

RenderScene render_scene(const CellComplex& complex) {
  const RootedTree& tree = complex.tree();
  const int q = tree.q();
  if (q > 3) throw DomainError("rendering needs q <= 3, got q = " + std::to_string(q));
  const Embedding phi(tree);
  RenderScene scene;
  auto project = [q](const Point& p) {
    RenderScene::Point2 out;
    if (q >= 1) out.x = p[0];
    if (q >= 2) out.y = p[1];
    if (q == 3) {
      out.x += 0.35 * p[2];
      out.y += 0.35 * p[2];
    }
    return out;
  };
  const auto vertices = complex.cells(0);
  for (const Cube& v : vertices) {
    scene.points.push_back(project(phi(v.sink)));
    scene.labels.push_back(format_monomial(tree.ring(), cell_label(tree, v)));
  }
  auto vertex_index = [&](const ExponentVector& b) { return *complex.index_of(Cube{b, DirectionSet()}); };
  for (const Cube& e : complex.cells(1)) scene.arrows.push_back({vertex_index(cube_source(tree, e)), vertex_index(e.sink)});
  for (const Cube& s : complex.cells(2)) {
    // cube_vertices order: source, +e_i, +e_j, sink; draw as a cycle.
    const auto v = cube_vertices(tree, s);
    scene.squares.push_back({vertex_index(v[0]), vertex_index(v[1]), vertex_index(v[3]), vertex_index(v[2])});
  }
  return scene;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

}  // namespace

std::string render_svg(const RenderScene& scene) {
  constexpr double unit = 90.0, margin = 60.0;
  double max_x = 0, max_y = 0;
  for (const auto& p : scene.points) {
    max_x = std::max(max_x, p.x);
    max_y = std::max(max_y, p.y);
  }
  const double width = max_x * unit + 2 * margin, height = max_y * unit + 2 * margin;
  auto sx = [&](double x) { return fmt(margin + x * unit); };
  auto sy = [&](double y) { return fmt(height - margin - y * unit); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\"" << fmt(height)
      << "\" viewBox=\"0 0 " << fmt(width) << " " << fmt(height) << "\">\n";
  out << "  <defs>\n"
         "    <marker id=\"head\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"8\" markerHeight=\"8\" "
         "orient=\"auto\">\n"
         "      <path d=\"M0,0 L10,5 L0,10 z\" fill=\"#222\"/>\n"
         "    </marker>\n"
         "  </defs>\n";
  for (const auto& sq : scene.squares) {
    out << "  <polygon class=\"cell2\" points=\"";
    for (std::size_t k = 0; k < sq.size(); ++k)
      out << (k ? " " : "") << sx(scene.points[sq[k]].x) << "," << sy(scene.points[sq[k]].y);
    out << "\" fill=\"#9ab\" fill-opacity=\"0.45\" stroke=\"none\"/>\n";
  }
  for (const auto& a : scene.arrows) {
    // Stop short of the sink so the arrowhead stays outside the vertex dot.
    const auto& p = scene.points[a.from];
    const auto& s = scene.points[a.to];
    const double dx = s.x - p.x, dy = s.y - p.y;
    const double len = std::max(1e-9, std::sqrt(dx * dx + dy * dy));
    const double trim = 7.0 / unit;
    out << "  <line class=\"cell1\" x1=\"" << sx(p.x + dx / len * trim) << "\" y1=\"" << sy(p.y + dy / len * trim)
        << "\" x2=\"" << sx(s.x - dx / len * trim) << "\" y2=\"" << sy(s.y - dy / len * trim)
        << "\" stroke=\"#222\" stroke-width=\"1.5\" marker-end=\"url(#head)\"/>\n";
  }
  for (std::size_t k = 0; k < scene.points.size(); ++k) {
    const auto& p = scene.points[k];
    out << "  <circle class=\"cell0\" cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y) << "\" r=\"4\" fill=\"#000\"/>\n";
    out << "  <text x=\"" << sx(p.x + 0.06) << "\" y=\"" << sy(p.y + 0.08)
        << "\" font-family=\"serif\" font-size=\"13\">" << escape(scene.labels[k]) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace powres
