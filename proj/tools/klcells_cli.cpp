// Command-line front end: cell partitions, the fast partition algorithm,
// cross-validation, KL polynomials, hyperplane-arrangement reports, and SVG
// alcove pictures.  All JSON output is deterministic and carries "schema": 1.
//
// Exit codes: 0 success, 2 configuration error or comparison mismatch,
// 3 truncation instability detected by --stability-check.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "klcells/cellalgo.hpp"
#include "klcells/cells.hpp"
#include "klcells/geometry.hpp"
#include "klcells/induction.hpp"
#include "klcells/klbasis.hpp"
#include "klcells/semicont.hpp"

using json = nlohmann::ordered_json;
using namespace klcells;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitUnstable = 3;

CoxeterGroup group_by_name(const std::string& name) {
  if (name == "a1") return CoxeterGroup::affine_a1();
  if (name == "b2") return CoxeterGroup::affine_b2();
  if (name == "g2") return CoxeterGroup::affine_g2();
  if (name == "dinf") return CoxeterGroup::dihedral(kInfinity);
  if (name.size() > 1 && name[0] == 'd') {
    int m = std::stoi(name.substr(1));
    return CoxeterGroup::dihedral(m);
  }
  throw std::invalid_argument("unknown group '" + name +
                              "' (use a1, b2, g2, d<m>, dinf)");
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream f(out_path);
    if (!f) throw std::invalid_argument("cannot write " + out_path);
    f << j.dump(2) << "\n";
  }
}

void write_text(const std::string& text, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::invalid_argument("cannot write " + path);
  f << text;
}

json partition_json(const CellPartition& part, const Ball& ball) {
  json blocks = json::array();
  for (int b = 0; b < part.block_count(); ++b) {
    json elems = json::array();
    for (int id : part.blocks[b]) elems.push_back(ball.elements[id].str());
    blocks.push_back({{"label", b},
                      {"a", part.a_value[b]},
                      {"elements", elems},
                      {"uncertain", static_cast<bool>(part.boundary_uncertain[b])}});
  }
  json order = json::array();
  for (int i = 0; i < part.block_count(); ++i)
    for (int j = 0; j < part.block_count(); ++j)
      if (i != j && part.block_leq[i][j]) order.push_back({i, j});
  return {{"kind", cell_kind_name(part.kind)},
          {"radius", part.trusted_radius},
          {"blocks", blocks},
          {"order", order}};
}

/// Min-rep labels of a partition restricted to a set of ids.
std::map<int, int> restricted_labels(const std::vector<int>& ids,
                                     const std::vector<int>& block_of) {
  std::map<int, int> rep;   // block -> smallest id
  for (int id : ids) {
    auto [it, fresh] = rep.emplace(block_of[id], id);
    if (!fresh && id < it->second) it->second = id;
  }
  std::map<int, int> label;
  for (int id : ids) label[id] = rep.at(block_of[id]);
  return label;
}

// ---------------------------------------------------------------------------

struct CommonOpts {
  std::string group;
  std::vector<std::int64_t> weights;
  int radius = 10;
  int trusted = -1;
  std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_weights = true) {
  cmd->add_option("--group", o.group, "group preset: a1, b2, g2, d<m>, dinf")
      ->required();
  if (with_weights)
    cmd->add_option("--weights", o.weights,
                    "weight class vector, e.g. --weights 3,2,1")
        ->delimiter(',')
        ->required();
  cmd->add_option("--radius", o.radius, "computation ball radius R");
  cmd->add_option("--trusted", o.trusted, "trusted radius R' < R (default R-3)");
  cmd->add_option("--out", o.out, "output file (default: stdout)");
}

int resolve_trusted(const CommonOpts& o) {
  int t = o.trusted >= 0 ? o.trusted : std::max(0, o.radius - 3);
  if (t >= o.radius)
    throw std::invalid_argument("trusted radius must be smaller than the radius");
  return t;
}

struct SvgLabels {
  int trusted;
  std::vector<int> two_sided_of, left_of;
  std::map<int, std::int64_t> a_of_block;
};

std::string svg_from_labels(const CoxeterGroup& g, const Ball& ball,
                            const SvgLabels& lab) {
  RenderInput in;
  in.trusted_radius = lab.trusted;
  in.two_sided_of = lab.two_sided_of;
  in.left_of = lab.left_of;
  in.a_of_block = lab.a_of_block;
  return render_svg(g, ball, in);
}

// ---------------------------------------------------------------------------

int cmd_cells(const CommonOpts& o, const std::string& svg_path, bool stability) {
  CoxeterGroup g = group_by_name(o.group);
  WeightFunction L = WeightFunction::from_class_vector(g, o.weights);
  if (!L.positive()) throw std::invalid_argument("weights must be positive");
  const int trusted = resolve_trusted(o);

  HeckeSession H(g, L, o.radius);
  KLTable kl(H);
  json j = {{"schema", 1},
            {"group", o.group},
            {"weights", o.weights},
            {"radius", o.radius},
            {"trusted_radius", trusted}};
  std::map<CellKind, CellPartition> parts;
  for (auto kind : {CellKind::Left, CellKind::Right, CellKind::TwoSided}) {
    CellPartition p = cells_from_links(kl, kind, trusted);
    annotate_a_values(p, kl, trusted);
    j[cell_kind_name(kind)] = partition_json(p, H.ball());
    parts.emplace(kind, std::move(p));
  }

  if (stability) {
    if (o.radius - 2 <= trusted)
      throw std::invalid_argument("--stability-check needs radius >= trusted + 3");
    HeckeSession H2(g, L, o.radius - 2);
    KLTable kl2(H2);
    CellPartition p2 = cells_from_links(kl2, CellKind::TwoSided, trusted);
    if (parts.at(CellKind::TwoSided).block_words(H.ball()) !=
        p2.block_words(H2.ball())) {
      std::cerr << "truncation instability: two-sided partition at R=" << o.radius
                << " differs from R=" << o.radius - 2 << "\n";
      return kExitUnstable;
    }
    j["stability"] = "two-sided partition stable under R -> R-2";
  }
  emit(j, o.out);

  if (!svg_path.empty()) {
    const Ball& ball = H.ball();
    SvgLabels lab;
    lab.trusted = trusted;
    lab.two_sided_of.assign(ball.size(), -1);
    lab.left_of.assign(ball.size(), -1);
    const CellPartition& two = parts.at(CellKind::TwoSided);
    const CellPartition& left = parts.at(CellKind::Left);
    for (int id = 0; id < ball.size(); ++id) {
      lab.two_sided_of[id] = two.block_of[id];
      lab.left_of[id] = left.block_of[id];
    }
    for (int b = 0; b < two.block_count(); ++b)
      lab.a_of_block.emplace(b, two.a_value[b]);
    write_text(svg_from_labels(g, ball, lab), svg_path);
  }
  return kExitOk;
}

int cmd_algorithm(const CommonOpts& o, bool stability) {
  CoxeterGroup g = group_by_name(o.group);
  WeightFunction L = WeightFunction::from_class_vector(g, o.weights);
  if (!L.positive()) throw std::invalid_argument("weights must be positive");
  TildePartition tp = tilde_partition(g, L, o.radius);

  json classes = json::array();
  for (int c = 0; c < tp.class_count(); ++c) {
    json elems = json::array();
    for (int id : tp.c_tilde[c]) elems.push_back(tp.ball.elements[id].str());
    json comps = json::array();
    for (const auto& comp : split_components(tp.ball, tp.c_tilde[c],
                                             Adjacency::LeftConnected)) {
      json words = json::array();
      for (int id : comp) words.push_back(tp.ball.elements[id].str());
      comps.push_back(words);
    }
    classes.push_back({{"label", c},
                       {"a", tp.c_a[c]},
                       {"blocks", tp.c_classes[c]},
                       {"elements", elems},
                       {"left_components", comps}});
  }
  json a_seq = json::array();
  for (auto a : tp.c_a) a_seq.push_back(a);
  json j = {{"schema", 1},        {"group", o.group}, {"weights", o.weights},
            {"radius", o.radius}, {"a_sequence", a_seq}, {"classes", classes}};

  if (stability) {
    if (!tilde_stable(g, L, o.radius)) {
      std::cerr << "truncation instability: partition changes from R=" << o.radius
                << " to R=" << o.radius + 2 << "\n";
      return kExitUnstable;
    }
    j["stability"] = "partition stable under R -> R+2";
  }
  emit(j, o.out);
  return kExitOk;
}

int cmd_compare(const CommonOpts& o, bool inject_fault) {
  CoxeterGroup g = group_by_name(o.group);
  WeightFunction L = WeightFunction::from_class_vector(g, o.weights);
  if (!L.positive()) throw std::invalid_argument("weights must be positive");
  const int trusted = resolve_trusted(o);

  HeckeSession H(g, L, o.radius);
  KLTable kl(H);
  const Ball& ball = H.ball();
  CellPartition two = cells_from_links(kl, CellKind::TwoSided, trusted);
  CellPartition left = cells_from_links(kl, CellKind::Left, trusted);
  auto sc = cells_at_point(g, L.class_vector(), o.radius);
  if (inject_fault && ball.size() > 1) {
    // corrupt the fast partition inside the trusted ball to force a diff
    int victim = 0;
    for (int id = 0; id < ball.size(); ++id)
      if (ball.len[id] <= trusted && ball.len[id] > 0) victim = id;
    sc.two_sided_of[victim] = sc.two_sided_of[0];
    sc.left_of[victim] = sc.left_of[0];
  }

  std::vector<int> trusted_ids;
  for (int id = 0; id < ball.size(); ++id)
    if (ball.len[id] <= trusted) trusted_ids.push_back(id);

  json diff = json::array();
  auto diff_kind = [&](const std::string& kind, const std::vector<int>& brute,
                       const std::vector<int>& fast) {
    auto lb = restricted_labels(trusted_ids, brute);
    auto lf = restricted_labels(trusted_ids, fast);
    for (int id : trusted_ids)
      if (lb.at(id) != lf.at(id))
        diff.push_back({{"kind", kind},
                        {"element", ball.elements[id].str()},
                        {"brute_block_rep", ball.elements[lb.at(id)].str()},
                        {"fast_block_rep", ball.elements[lf.at(id)].str()}});
  };
  diff_kind("two-sided", two.block_of, sc.two_sided_of);
  diff_kind("left", left.block_of, sc.left_of);

  json j = {{"schema", 1},
            {"group", o.group},
            {"weights", o.weights},
            {"radius", o.radius},
            {"trusted_radius", trusted},
            {"match", diff.empty()},
            {"diff", diff}};
  emit(j, o.out);
  return diff.empty() ? kExitOk : kExitConfig;
}

int cmd_klpoly(const CommonOpts& o, const std::string& y_word,
               const std::string& w_word) {
  CoxeterGroup g = group_by_name(o.group);
  WeightFunction L = WeightFunction::from_class_vector(g, o.weights);
  int radius = std::max<int>(o.radius, static_cast<int>(w_word.size()));
  HeckeSession H(g, L, radius);
  auto locate = [&](const std::string& word) {
    int id = 0;
    for (char c : word) {
      if (word == "e") break;
      int s = c - '1';
      if (s < 0 || s >= g.rank())
        throw std::invalid_argument("bad generator in word '" + word + "'");
      id = H.ball().rmul[id][s];
      if (id < 0) throw std::invalid_argument("word '" + word + "' leaves the ball");
    }
    return id;
  };
  int y = locate(y_word), w = locate(w_word);
  KLTable kl(H);
  json j = {{"schema", 1},
            {"group", o.group},
            {"weights", o.weights},
            {"y", H.ball().elements[y].str()},
            {"w", H.ball().elements[w].str()},
            {"P", kl.P(y, w).str()}};
  emit(j, o.out);
  return kExitOk;
}

int cmd_facets(const std::string& arr_name, int box, const std::string& out) {
  Arrangement arr = arrangement_by_name(arr_name);
  FacetComplex fc = enumerate_facets(arr, box);
  json facets = json::array();
  for (const auto& f : fc.facets) {
    json pts = json::array();
    for (const auto& p : f.sample_points) pts.push_back(p);
    facets.push_back({{"signature", f.signature},
                      {"dimension", f.dimension},
                      {"chamber", f.is_chamber},
                      {"sample_points", pts},
                      {"adjacent_chambers", f.adjacent_chambers}});
  }
  json normals = json::array();
  for (const auto& h : arr) normals.push_back(h.normal);
  json j = {{"schema", 1},     {"arrangement", arr_name}, {"normals", normals},
            {"box_radius", box}, {"facets", facets},     {"warnings", fc.warnings}};
  emit(j, out);
  return kExitOk;
}

int cmd_semicont(const std::string& group_name, const std::string& arr_name,
                 int box, int radius, const std::string& out,
                 const std::string& md_path) {
  CoxeterGroup g = group_by_name(group_name);
  Arrangement arr = arrangement_by_name(arr_name);
  EssentialReport rep = essential_hyperplanes(g, arr, box, radius);

  json planes = json::array();
  std::string md = "# Essential hyperplanes: " + arr_name + " on " + group_name +
                   "\n\n| hyperplane | verdict | witness chambers |\n"
                   "|---|---|---|\n";
  for (std::size_t i = 0; i < arr.size(); ++i) {
    json w = json::array();
    std::string wtxt;
    for (const auto& pt : rep.witnesses[i]) {
      w.push_back(pt);
      wtxt += "(";
      for (std::size_t k = 0; k < pt.size(); ++k)
        wtxt += (k ? "," : "") + std::to_string(pt[k]);
      wtxt += ") ";
    }
    planes.push_back({{"normal", arr[i].normal},
                      {"verdict", essential_verdict_name(rep.verdicts[i])},
                      {"witness_points", w}});
    md += "| " + arr[i].str() + " | " + essential_verdict_name(rep.verdicts[i]) +
          " | " + wtxt + "|\n";
  }
  if (!rep.warnings.empty()) {
    md += "\nWarnings:\n";
    for (const auto& s : rep.warnings) md += "- " + s + "\n";
  }
  json j = {{"schema", 1},       {"group", group_name}, {"arrangement", arr_name},
            {"box_radius", box}, {"radius", radius},    {"hyperplanes", planes},
            {"warnings", rep.warnings}};
  emit(j, out);
  if (!md_path.empty()) write_text(md, md_path);
  return kExitOk;
}

int cmd_induction_check(const CommonOpts& o, const std::string& dot_path) {
  CoxeterGroup g = group_by_name(o.group);
  WeightFunction L = WeightFunction::from_class_vector(g, o.weights);
  if (!L.positive()) throw std::invalid_argument("weights must be positive");

  InductionDatum d = induction_datum(g, L, o.radius);
  ConditionReport cond = check_I1_I3(g, d);
  HeckeSession H(g, L, o.radius);
  KLTable kl(H);
  InductionChecker chk(kl, d);
  UPreorder pre = preorder_on_U(chk);
  I5Report i5 = check_I5(g, chk, kl, pre);

  json levels = json::array();
  for (const auto& cls : d.comps) {
    json sizes = json::array();
    for (const auto& comp : cls) sizes.push_back(comp.size());
    levels.push_back(sizes);
  }
  json unames = json::array();
  for (std::size_t k = 0; k < d.U.size(); ++k)
    unames.push_back({{"name", u_name(d, static_cast<int>(k))},
                      {"element", d.ball.elements[d.U[k].id].str()},
                      {"level", d.U[k].level}});
  json hasse = json::array();
  std::string dot = "digraph U {\n  rankdir=BT;\n";
  for (const auto& [lo, hi] : pre.hasse) {
    hasse.push_back({u_name(d, lo), u_name(d, hi)});
    dot += "  \"" + u_name(d, lo) + "\" -> \"" + u_name(d, hi) + "\";\n";
  }
  dot += "}\n";
  json details = json::array();
  for (const auto& s : i5.details)
    details.push_back({{"y", d.ball.elements[s.y_id].str()},
                       {"v", u_name(d, s.v_index)},
                       {"status", check_status_name(s.status)},
                       {"witness", s.witness}});
  json j = {{"schema", 1},
            {"group", o.group},
            {"weights", o.weights},
            {"radius", o.radius},
            {"component_sizes", levels},
            {"U", unames},
            {"I1", cond.i1},
            {"I2", cond.i2},
            {"I3", cond.i3},
            {"condition_witness", cond.witness},
            {"preorder_dag", pre.dag},
            {"preorder_inconclusive", pre.inconclusive},
            {"hasse", hasse},
            {"I5", {{"verified", i5.verified},
                    {"violated", i5.violated},
                    {"inconclusive", i5.inconclusive},
                    {"details", details}}}};
  emit(j, o.out);
  if (!dot_path.empty()) write_text(dot, dot_path);
  return cond.all() && i5.violated == 0 ? kExitOk : kExitConfig;
}

int cmd_render(const CommonOpts& o) {
  CoxeterGroup g = group_by_name(o.group);
  if (o.out.empty()) throw std::invalid_argument("render: --out <file.svg> required");
  const int trusted = resolve_trusted(o);
  auto sc = cells_at_point(g, o.weights, o.radius);
  Ball ball = g.ball(o.radius);
  SvgLabels lab{trusted, sc.two_sided_of, sc.left_of, sc.a_of_block};
  write_text(svg_from_labels(g, ball, lab), o.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Kazhdan-Lusztig cell computations for rank-2 affine and "
               "dihedral Coxeter groups with unequal parameters"};
  app.require_subcommand(1);

  CommonOpts cells_o, algo_o, cmp_o, kl_o, ind_o, render_o;
  std::string cells_svg, cmp_na, kl_y, kl_w, dot_path;
  bool cells_stab = false, algo_stab = false, cmp_fault = false;

  auto* c_cells = app.add_subcommand("cells", "brute-force cell partitions");
  add_common(c_cells, cells_o);
  c_cells->add_option("--svg", cells_svg, "also write an SVG alcove picture");
  c_cells->add_flag("--stability-check", cells_stab,
                    "fail (exit 3) if the partition changes at R-2");

  auto* c_algo = app.add_subcommand("algorithm", "fast partition (no KL)");
  add_common(c_algo, algo_o);
  c_algo->add_flag("--stability-check", algo_stab,
                   "fail (exit 3) if the partition changes at R+2");

  auto* c_cmp = app.add_subcommand("compare", "diff brute-force vs fast partition");
  add_common(c_cmp, cmp_o);
  c_cmp->add_flag("--inject-fault", cmp_fault,
                  "corrupt the fast partition (test fixture)");

  auto* c_kl = app.add_subcommand("klpoly", "one Kazhdan-Lusztig polynomial");
  add_common(c_kl, kl_o);
  c_kl->add_option("--y", kl_y, "lower word, e.g. 121 (or e)")->required();
  c_kl->add_option("--w", kl_w, "upper word")->required();

  std::string f_arr, f_out;
  int f_box = 8;
  auto* c_fac = app.add_subcommand("facets", "hyperplane arrangement facets");
  c_fac->add_option("--arrangement", f_arr, "g2-essential or b2-essential")->required();
  c_fac->add_option("--box", f_box, "integer sampling box radius");
  c_fac->add_option("--out", f_out, "output file (default: stdout)");

  std::string s_group, s_arr, s_out, s_md;
  int s_box = 8, s_radius = 8;
  auto* c_semi = app.add_subcommand("semicont", "essential-hyperplane report");
  c_semi->add_option("--group", s_group, "group preset")->required();
  c_semi->add_option("--arrangement", s_arr, "candidate arrangement")->required();
  c_semi->add_option("--box", s_box, "integer sampling box radius");
  c_semi->add_option("--radius", s_radius, "partition ball radius");
  c_semi->add_option("--out", s_out, "JSON output file (default: stdout)");
  c_semi->add_option("--md", s_md, "also write a Markdown report");

  auto* c_ind = app.add_subcommand("induction-check",
                                   "generalized-induction conditions I1-I5");
  add_common(c_ind, ind_o);
  c_ind->add_option("--dot", dot_path, "write the Hasse diagram as DOT");

  auto* c_ren = app.add_subcommand("render", "SVG alcove picture (fast partition)");
  add_common(c_ren, render_o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (c_cells->parsed()) return cmd_cells(cells_o, cells_svg, cells_stab);
    if (c_algo->parsed()) return cmd_algorithm(algo_o, algo_stab);
    if (c_cmp->parsed()) return cmd_compare(cmp_o, cmp_fault);
    if (c_kl->parsed()) return cmd_klpoly(kl_o, kl_y, kl_w);
    if (c_fac->parsed()) return cmd_facets(f_arr, f_box, f_out);
    if (c_semi->parsed()) return cmd_semicont(s_group, s_arr, s_box, s_radius, s_out, s_md);
    if (c_ind->parsed()) return cmd_induction_check(ind_o, dot_path);
    if (c_ren->parsed()) return cmd_render(render_o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
