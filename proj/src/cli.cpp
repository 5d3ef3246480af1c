#include "powres/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "powres/errors.hpp"
#include "powres/export.hpp"
#include "powres/koszul.hpp"
#include "powres/power_complex.hpp"
#include "powres/resolution.hpp"
#include "powres/support_tree.hpp"
#include "powres/verify.hpp"

namespace powres {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << text)) throw std::runtime_error("cannot write " + path);
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j)
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::string suggestion(const CLI::App& app, const std::string& unknown) {
  std::string best;
  std::size_t best_d = 4;
  const std::string bare = unknown.substr(0, unknown.find('='));
  for (const CLI::Option* opt : app.get_options()) {
    for (const std::string& name : opt->get_lnames()) {
      const std::size_t d = edit_distance(bare, "--" + name);
      if (d < best_d) {
        best_d = d;
        best = "--" + name;
      }
    }
  }
  for (const CLI::App* sub : app.get_subcommands({})) {
    const std::size_t d = edit_distance(bare, sub->get_name());
    if (d < best_d) {
      best_d = d;
      best = sub->get_name();
    }
  }
  return best.empty() ? "" : " (did you mean " + best + "?)";
}

struct Common {
  std::string ideal_path;
  std::string root;
  int r = 0;
  std::string format = "text";
  std::string output;
  bool serial = false;
};

MonomialIdeal load_ideal(const Common& c) { return parse_ideal(read_file(c.ideal_path)); }

RootedTree load_tree(const Common& c, const MonomialIdeal& ideal) {
  std::optional<int> root;
  if (!c.root.empty()) {
    const Monomial m = parse_monomial(ideal.ring(), c.root);
    for (std::size_t i = 0; i < ideal.size(); ++i)
      if (ideal.generator(i) == m) root = static_cast<int>(i);
    if (!root) throw UsageError("--root " + c.root + " is not a generator of the ideal");
  }
  return build_support_tree(ideal, c.serial ? Execution::serial : Execution::parallel, root);
}

void print_matrix(std::ostream& out, const Ring& ring, const SparseMatrix& m) {
  std::vector<std::vector<std::string>> cells(m.rows, std::vector<std::string>(m.cols, "0"));
  for (const auto& e : m.entries) {
    std::string t = (e.coeff < 0 ? "-" : "") + format_monomial(ring, e.monomial);
    cells[e.row][e.col] = t;
  }
  std::size_t width = 1;
  for (const auto& row : cells)
    for (const auto& s : row) width = std::max(width, s.size());
  for (const auto& row : cells) {
    out << "  [";
    for (std::size_t j = 0; j < row.size(); ++j)
      out << (j ? " " : "") << std::string(width - row[j].size(), ' ') << row[j];
    out << "]\n";
  }
}

void print_tree(std::ostream& out, const RootedTree& tree) {
  const Ring& ring = tree.ring();
  out << format_tree_text(tree);
  out << "tau:";
  for (int i = 1; i <= tree.q(); ++i) out << ' ' << tree.tau(i);
  out << "\n";
  for (int i = 1; i <= tree.q(); ++i)
    out << "edge label e" << i << ": " << format_monomial(ring, tree.edge_label(i)) << "\n";
  out << "Phi:\n";
  for (const auto& row : path_matrix(tree)) {
    out << "  [";
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
    out << "]\n";
  }
}

void print_report(std::ostream& out, const CheckReport& r) {
  out << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.checked << " checked)\n";
  for (const auto& v : r.violations) out << "  " << v << "\n";
}

void print_graded(std::ostream& out, const GradedComplex& c) {
  for (int i = 0; i <= c.length(); ++i) {
    out << "F" << i << ": rank " << c.rank(i) << ", degrees";
    for (const auto& m : c.degrees[i]) out << ' ' << format_monomial(c.ring, m);
    out << "\n";
  }
  if (c.augmentation) {
    out << "augmentation:\n";
    print_matrix(out, c.ring, *c.augmentation);
  }
  for (int i = 1; i <= c.length(); ++i) {
    out << "d" << i << ":\n";
    print_matrix(out, c.ring, c.differentials[i]);
  }
}

void require_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (format == a) return;
  std::string list;
  for (const char* a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
  throw UsageError("--format must be one of " + list);
}

int run_tree(const Common& c, const std::string& tree_path, std::ostream& out) {
  const MonomialIdeal ideal = load_ideal(c);
  if (!tree_path.empty()) {
    const UnrootedTree given = parse_tree_text(read_file(tree_path), ideal.ring());
    const SupportReport report = validate_support(ideal.ring(), given, ideal);
    if (report.supports_minimal_resolution()) {
      out << "tree supports the minimal resolution\n";
      print_tree(out, root_and_label(ideal.ring(), given, 0));
      return 0;
    }
    out << "tree does not support the minimal resolution\n";
    if (report.witness) out << "disconnected at multidegree " << format_monomial(ideal.ring(), *report.witness) << "\n";
    if (report.non_minimal_edge) out << "edge " << *report.non_minimal_edge << " is not minimal\n";
    return 1;
  }
  print_tree(out, load_tree(c, ideal));
  return 0;
}

int run_power(const Common& c, bool validate, std::ostream& out) {
  require_format(c.format, {"text", "json", "svg"});
  const MonomialIdeal ideal = load_ideal(c);
  const RootedTree tree = load_tree(c, ideal);
  const CellComplex complex = assemble_complex(tree, c.r);
  if (c.format == "json") {
    write_output(c.output, export_json({&complex, nullptr, nullptr}), out);
  } else if (c.format == "svg") {
    write_output(c.output, render_svg(render_scene(complex)), out);
  } else {
    std::ostringstream text;
    text << "f-vector:";
    for (auto n : complex.f_vector()) text << ' ' << n;
    text << "\n";
    const Embedding phi(tree);
    for (int d = 0; d <= complex.dimension(); ++d)
      for (const Cube& cell : complex.cells(d)) {
        text << d << " " << cell.to_string() << " phi=(";
        const Point p = phi(cell.sink);
        for (std::size_t k = 0; k < p.size(); ++k) text << (k ? "," : "") << p[k];
        text << ") label=" << format_monomial(tree.ring(), cell_label(tree, cell)) << "\n";
      }
    write_output(c.output, text.str(), out);
  }
  if (!validate) return 0;
  const Execution exec = c.serial ? Execution::serial : Execution::parallel;
  const std::vector<CheckReport> reports{
      check_phi_injective(tree, c.r),   check_edge_equivalence(tree, c.r), check_cube_source_sink(complex),
      check_face_closure(complex),      check_f_vector(complex),           validate_polyhedral(complex, exec),
  };
  bool ok = true;
  for (const auto& r : reports) {
    print_report(out, r);
    ok = ok && r.passed;
  }
  return ok ? 0 : 1;
}

int run_resolve(const Common& c, std::ostream& out) {
  require_format(c.format, {"text", "json", "m2"});
  const MonomialIdeal ideal = load_ideal(c);
  const RootedTree tree = load_tree(c, ideal);
  const CellComplex complex = assemble_complex(tree, c.r);
  const GradedComplex f = homogenize(complex);
  if (c.format == "json") {
    write_output(c.output, export_json({&complex, &f, nullptr}), out);
  } else if (c.format == "m2") {
    write_output(c.output, export_m2(complex, f), out);
  } else {
    std::ostringstream text;
    text << "resolution of I^" << c.r << " for I = " << ideal.to_string() << "\n";
    print_graded(text, f);
    write_output(c.output, text.str(), out);
  }
  return 0;
}

int run_koszul(const Common& c, bool check_iso, std::ostream& out) {
  require_format(c.format, {"text", "json"});
  const MonomialIdeal ideal = load_ideal(c);
  const RootedTree tree = load_tree(c, ideal);
  const StrandComplex k = koszul_strand(tree, c.r);
  if (c.format == "json") {
    write_output(c.output, export_json({nullptr, nullptr, &k}), out);
  } else {
    std::ostringstream text;
    for (const auto& g : syzygy_generators(tree))
      text << "g" << g.index << " = " << format_syzygy(tree.ring(), g) << "\n";
    for (int i = 0; i < static_cast<int>(k.basis.size()); ++i) {
      text << "K" << i << " basis:";
      for (const auto& b : k.basis[i]) text << " e" << b.wedge.to_string() << "T" << b.t_exponent.to_string();
      text << "\n";
    }
    print_graded(text, k.complex);
    write_output(c.output, text.str(), out);
  }
  if (!check_iso) return 0;
  const CellComplex complex = assemble_complex(tree, c.r);
  const RhoReport report = rho_isomorphism(complex, homogenize(complex), k);
  out << (report.passed() ? "PASS" : "FAIL") << " rho is a chain isomorphism (" << report.checked << " cells)\n";
  for (const auto& m : report.mismatches) out << "  " << m << "\n";
  return report.passed() ? 0 : 1;
}

int run_verify(const Common& c, const std::string& fields_text, bool controls, bool as_json, std::ostream& out) {
  std::vector<Field> fields;
  try {
    fields = parse_fields(fields_text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--fields: ") + e.what());
  }
  const MonomialIdeal ideal = load_ideal(c);
  const RootedTree tree = load_tree(c, ideal);
  const Execution exec = c.serial ? Execution::serial : Execution::parallel;
  Verification v = verify_resolution(tree, c.r, fields, exec);
  if (c.r >= tree.q()) v.checks.push_back(covering_check(tree, c.r));
  v.checks.push_back(chain_map_check(tree, c.r));

  std::vector<std::pair<std::string, std::string>> control_lines;
  bool controls_ok = true;
  if (controls) {
    const CellComplex complex = assemble_complex(tree, c.r);
    const GradedComplex f = homogenize(complex);
    if (f.length() >= 1) {
      const bool caught = !check_d_squared(flip_sign(f, f.length(), 0)).passed;
      controls_ok = controls_ok && caught;
      control_lines.emplace_back("sign flip", caught ? "detected" : "NOT detected");
    }
    if (auto wrong = wrong_tree_control(ideal, c.r)) {
      const bool caught = !wrong->passed;
      controls_ok = controls_ok && caught;
      control_lines.emplace_back("non-supporting tree",
                                 caught ? "detected at " + format_monomial(ideal.ring(), *wrong->first_failure)
                                        : "NOT detected");
    } else {
      control_lines.emplace_back("non-supporting tree", "not applicable (every spanning tree supports)");
    }
  }
  const bool ok = v.passed() && controls_ok;

  if (as_json) {
    nlohmann::json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["passed"] = ok;
    for (const auto& r : v.checks)
      doc["checks"].push_back({{"name", r.name}, {"passed", r.passed}, {"checked", r.checked}, {"violations", r.violations}});
    for (const auto& e : v.exactness) {
      nlohmann::json entry{{"field", e.field.name()}, {"passed", e.passed}, {"multidegrees", e.degrees.size()}};
      if (e.first_failure) entry["first_failure"] = format_monomial(ideal.ring(), *e.first_failure);
      doc["exactness"].push_back(entry);
    }
    for (const auto& [name, verdict] : control_lines) doc["controls"].push_back({{"name", name}, {"result", verdict}});
    write_output(c.output, doc.dump(2) + "\n", out);
  } else {
    std::ostringstream text;
    for (const auto& r : v.checks) print_report(text, r);
    for (const auto& e : v.exactness) {
      text << (e.passed ? "PASS " : "FAIL ") << "exact over " << e.field.name() << " (" << e.degrees.size()
           << " multidegrees)\n";
      if (e.first_failure) text << "  first failure at " << format_monomial(ideal.ring(), *e.first_failure) << "\n";
    }
    for (const auto& [name, verdict] : control_lines) text << "control " << name << ": " << verdict << "\n";
    text << (ok ? "all checks passed\n" : "verification FAILED\n");
    write_output(c.output, text.str(), out);
  }
  return ok ? 0 : 1;
}

int run_export(const Common& c, std::ostream& out) {
  require_format(c.format, {"json", "m2", "svg"});
  const MonomialIdeal ideal = load_ideal(c);
  const RootedTree tree = load_tree(c, ideal);
  const CellComplex complex = assemble_complex(tree, c.r);
  if (c.format == "svg") {
    write_output(c.output, render_svg(render_scene(complex)), out);
    return 0;
  }
  const GradedComplex f = homogenize(complex);
  if (c.format == "m2") {
    write_output(c.output, export_m2(complex, f), out);
    return 0;
  }
  const StrandComplex k = koszul_strand(tree, c.r);
  write_output(c.output, export_json({&complex, &f, &k}), out);
  return 0;
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cellular minimal free resolutions of powers of square-free monomial ideals of projective dimension one",
               "powres"};
  app.require_subcommand(1);
  app.allow_extras();

  Common c;
  std::string tree_path, fields = "q,2,3,5";
  bool validate = false, check_iso = false, controls = false, as_json = false;
  int betti_q = -1;

  auto add_ideal = [&](CLI::App* sub, bool needs_r) {
    sub->add_option("--ideal", c.ideal_path, "ideal file")->required();
    sub->add_option("--root", c.root, "generator to use as the tree root, e.g. x*y");
    sub->add_flag("--serial", c.serial, "use the serial reference kernels");
    if (needs_r) sub->add_option("--r", c.r, "power r >= 1")->required()->check(CLI::PositiveNumber);
    sub->allow_extras();
  };

  auto* tree = app.add_subcommand("tree", "find, label and print a supporting tree");
  add_ideal(tree, false);
  tree->add_option("--tree", tree_path, "validate this tree instead of searching");

  auto* power = app.add_subcommand("power", "build the cubical complex for I^r");
  add_ideal(power, true);
  power->add_flag("--validate", validate, "run the structural checks");
  power->add_option("--format", c.format, "text, json or svg");
  power->add_option("--output,-o", c.output, "output file");

  auto* resolve = app.add_subcommand("resolve", "print the labeled resolution of I^r");
  add_ideal(resolve, true);
  resolve->add_option("--format", c.format, "text, json or m2");
  resolve->add_option("--output,-o", c.output, "output file");

  auto* koszul = app.add_subcommand("koszul", "print the Koszul strand of T-degree r");
  add_ideal(koszul, true);
  koszul->add_flag("--check-iso", check_iso, "check the isomorphism with the cellular resolution");
  koszul->add_option("--format", c.format, "text or json");
  koszul->add_option("--output,-o", c.output, "output file");

  auto* verify = app.add_subcommand("verify", "certify that the complex resolves I^r");
  add_ideal(verify, true);
  verify->add_option("--fields", fields, "coefficient fields, e.g. q,2,3,5");
  verify->add_flag("--negative-controls", controls, "also run corrupted inputs that must fail");
  verify->add_flag("--json", as_json, "JSON report");
  verify->add_option("--output,-o", c.output, "output file");

  auto* betti = app.add_subcommand("betti", "print the Betti numbers of I^r from q and r");
  betti->add_option("--q", betti_q, "q, one less than the number of generators")->required()->check(CLI::NonNegativeNumber);
  betti->add_option("--r", c.r, "power r >= 1")->required()->check(CLI::PositiveNumber);
  betti->add_flag("--pd", validate, "also print pd I^r and pd I^r/I^(r+1)");
  betti->allow_extras();

  auto* exp = app.add_subcommand("export", "write the complex, resolution and strand");
  add_ideal(exp, true);
  exp->add_option("--format", c.format, "json, m2 or svg")->required();
  exp->add_option("--output,-o", c.output, "output file");

  try {
    app.parse(argc, argv);
    for (const CLI::App* sub : app.get_subcommands()) {
      auto extras = sub->remaining();
      if (!extras.empty()) throw UsageError("unknown argument " + extras.front() + suggestion(*sub, extras.front()));
    }
    if (!app.remaining().empty())
      throw UsageError("unknown argument " + app.remaining().front() + suggestion(app, app.remaining().front()));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  } catch (const UsageError& e) {
    err << "powres: " << e.what() << "\n";
    return 2;
  }

  try {
    if (tree->parsed()) return run_tree(c, tree_path, out);
    if (power->parsed()) return run_power(c, validate, out);
    if (resolve->parsed()) return run_resolve(c, out);
    if (koszul->parsed()) return run_koszul(c, check_iso, out);
    if (verify->parsed()) return run_verify(c, fields, controls, as_json, out);
    if (exp->parsed()) return run_export(c, out);
    if (betti->parsed()) {
      std::vector<std::uint64_t> values;
      for (int t = 0; t <= std::min(betti_q, c.r); ++t) values.push_back(betti_formula(betti_q, c.r, t));
      for (std::size_t t = 0; t < values.size(); ++t) out << (t ? " " : "") << values[t];
      out << "\n";
      if (validate) {
        const auto pd = pd_formula(betti_q, c.r);
        out << "pd I^r = " << pd.power << "\npd I^r/I^(r+1) = " << pd.quotient << "\n";
      }
      return 0;
    }
  } catch (const UsageError& e) {
    err << "powres: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "powres: " << c.ideal_path << ": " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    err << "powres: rejected: " << e.what() << "\n";
    return 1;
  } catch (const ResourceError& e) {
    err << "powres: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "powres: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace powres
