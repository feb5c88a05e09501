// Command line workbench: presentations, diagram families, corridor
// analysis, normal forms and the experiment drivers, with JSON/CSV/SVG/DOT
// outputs. Every subcommand exits 0 exactly when its asserted properties
// hold.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "snowflake/builders.hpp"
#include "snowflake/corridor.hpp"
#include "snowflake/lab.hpp"
#include "snowflake/normalform.hpp"

using namespace snowflake;

namespace {

struct CommonArgs {
  std::string tree_json = R"({"edges": []})";
  int n = 1;
  std::string phi_json;
  unsigned long seed = 20240811;
  std::string out_dir;
};

SnowTree load_tree(const CommonArgs& args) {
  std::string text = args.tree_json;
  if (!text.empty() && std::filesystem::exists(text)) {
    std::ifstream in(text);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  return SnowTree::from_json(text);
}

FreeAut load_phi(const CommonArgs& args) {
  if (args.phi_json.empty()) return FreeAut::phi();
  auto j = nlohmann::json::parse(args.phi_json);
  return FreeAut(parse_word(j.at("x").get<std::string>()),
                 parse_word(j.at("y").get<std::string>()));
}

void write_output(const CommonArgs& args, const std::string& name, const std::string& content) {
  if (args.out_dir.empty()) {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
    return;
  }
  std::filesystem::create_directories(args.out_dir);
  std::ofstream out(std::filesystem::path(args.out_dir) / name);
  out << content;
  std::cerr << "wrote " << (std::filesystem::path(args.out_dir) / name).string() << "\n";
}

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--tree", args.tree_json,
                  "tree as JSON ({\"edges\": [[u,v],...]}) or a file path");
  cmd->add_option("-n,--power", args.n, "exponent n of the automorphism in the monodromy");
  cmd->add_option("--phi", args.phi_json, "automorphism as JSON {\"x\": word, \"y\": word}");
  cmd->add_option("--seed", args.seed, "random seed");
  cmd->add_option("--out", args.out_dir, "output directory (default: stdout)");
}

Presentation presentation_for(const std::string& group, const SnowTree& tree, int n,
                              const FreeAut& phi) {
  if (group == "V_T" || group == "V") return presentation_VT(tree);
  if (group == "S") return presentation_S(tree, n, phi);
  if (group == "W_T" || group == "W") return presentation_WT(tree, n, phi);
  if (group == "G_s") return presentation_G(tree, n, phi, StableCoords::s);
  if (group == "G_u") return presentation_G(tree, n, phi, StableCoords::u);
  throw CLI::ValidationError("--group", "unknown group '" + group + "'");
}

std::string constants_csv(const ConstantsReport& rep) {
  std::ostringstream os;
  os << "name,value\n";
  os << "k0," << rep.k0_observed << '\n';
  os << "k1," << rep.k1_observed.to_double() << '\n';
  os << "k2," << rep.k2_observed.to_double() << '\n';
  os << "k3," << rep.k3_observed << '\n';
  os << "k4," << rep.k4_observed << '\n';
  os << "k5," << rep.k5_observed << '\n';
  os << "k6," << rep.k6_observed << '\n';
  os << "c," << rep.c_observed << '\n';
  os << "inverse_stretch," << rep.lambda_inv_stretch << '\n';
  os << "d," << rep.d_observed << '\n';
  os << "samples," << rep.sample_size << '\n';
  os << "max_word_length," << rep.max_word_length << '\n';
  os << "k0_stable," << (rep.k0_stable ? 1 : 0) << '\n';
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for the snowflake groups, their diagrams and invariants"};
  app.require_subcommand(1);

  // presentation
  auto* cmd_pres = app.add_subcommand("presentation", "emit a finite presentation");
  CommonArgs pres_args;
  std::string pres_group = "S";
  bool pres_text = false;
  std::string pres_dot_tree, pres_dot_ext, pres_dot_polygon;
  int pres_overlay_i = -1, pres_overlay_j = -1;
  add_common(cmd_pres, pres_args);
  cmd_pres->add_option("--group", pres_group, "one of V_T, S, W_T, G_s, G_u");
  cmd_pres->add_flag("--text", pres_text, "plain relator list instead of JSON");
  cmd_pres->add_option("--dot-tree", pres_dot_tree, "write the tree as DOT");
  cmd_pres->add_option("--dot-ext", pres_dot_ext, "write the extended tree as DOT");
  cmd_pres->add_option("--dot-polygon", pres_dot_polygon, "write the triangulated polygon as DOT");
  cmd_pres->add_option("--overlay-i", pres_overlay_i, "segment overlay: first leaf rank");
  cmd_pres->add_option("--overlay-j", pres_overlay_j, "segment overlay: second leaf rank");

  // snowflake
  auto* cmd_snow = app.add_subcommand("snowflake", "build a snowflake diagram and its size report");
  CommonArgs snow_args;
  std::string snow_word = "x0";
  int snow_depth = 1;
  bool snow_no_material = false;
  long snow_budget = 1000000;
  std::string snow_svg, snow_csv, snow_dot, snow_json;
  add_common(cmd_snow, snow_args);
  cmd_snow->add_option("-w,--word", snow_word, "monotone palindromic seed word");
  cmd_snow->add_option("-d,--depth", snow_depth, "depth");
  cmd_snow->add_flag("--sizes-only", snow_no_material, "skip materializing the diagram");
  cmd_snow->add_option("--budget", snow_budget, "materialization face budget");
  cmd_snow->add_option("--svg", snow_svg, "write the diagram as SVG");
  cmd_snow->add_option("--dot", snow_dot, "write the diagram 1-skeleton as DOT");
  cmd_snow->add_option("--diagram-json", snow_json, "write the diagram interchange JSON");
  cmd_snow->add_option("--csv", snow_csv, "write per-level data as CSV");

  // corridors
  auto* cmd_corr = app.add_subcommand("corridors", "trace corridors of a scheme in a diagram");
  CommonArgs corr_args;
  std::string corr_diagram, corr_scheme = "r:1";
  std::string corr_svg;
  add_common(cmd_corr, corr_args);
  cmd_corr->add_option("--diagram", corr_diagram, "diagram JSON file")->required();
  cmd_corr->add_option("--scheme", corr_scheme, "scheme: sigma:i,j (leaf ranks) or r:i");
  cmd_corr->add_option("--svg", corr_svg, "write an SVG overlay");

  // fold
  auto* cmd_fold = app.add_subcommand("fold", "fold a stable-letter corridor / sweep constants");
  CommonArgs fold_args;
  std::string fold_word = "a0 B0";
  int fold_index = 1;
  int sweep_len = 0, sweep_samples = 20;
  std::string fold_csv;
  add_common(cmd_fold, fold_args);
  cmd_fold->add_option("-w,--word", fold_word, "reduced bottom word (a/b letters)");
  cmd_fold->add_option("-i,--index", fold_index, "stable letter index");
  cmd_fold->add_option("--sweep", sweep_len, "sweep bottoms of length 1..N for constants");
  cmd_fold->add_option("--sweep-samples", sweep_samples, "samples per length in the sweep");
  cmd_fold->add_option("--csv", fold_csv, "write the constants report as CSV");

  // nf
  auto* cmd_nf = app.add_subcommand("nf", "normal form and triviality of a word");
  CommonArgs nf_args;
  std::string nf_group = "S";
  std::string nf_word;
  add_common(cmd_nf, nf_args);
  cmd_nf->add_option("--group", nf_group, "one of V_T, S, W_T, G_s, G_u");
  cmd_nf->add_option("--word", nf_word, "word in the group's generators")->required();

  // dehn-fit
  auto* cmd_dehn = app.add_subcommand("dehn-fit", "fit the isoperimetric exponent");
  CommonArgs dehn_args;
  std::string dehn_word = "x0";
  int dehn_depth = 12;
  double dehn_tol = 0.05;
  bool dehn_csv = false;
  add_common(cmd_dehn, dehn_args);
  cmd_dehn->add_option("-w,--word", dehn_word, "monotone palindromic seed word");
  cmd_dehn->add_option("-d,--depth", dehn_depth, "maximal depth");
  cmd_dehn->add_option("--tolerance", dehn_tol, "acceptable |estimate - 2 alpha|");
  cmd_dehn->add_flag("--csv", dehn_csv, "CSV instead of JSON");

  // distortion
  auto* cmd_dist = app.add_subcommand("distortion", "witness family for the edge-group distortion");
  CommonArgs dist_args;
  std::string dist_word = "x0";
  int dist_depth = 10, dist_certify = 3;
  double dist_band = 10.0;
  bool dist_csv = false;
  add_common(cmd_dist, dist_args);
  cmd_dist->add_option("-w,--word", dist_word, "monotone palindromic seed word");
  cmd_dist->add_option("-d,--depth", dist_depth, "maximal depth");
  cmd_dist->add_option("--certify", dist_certify,
                       "verify W_d = g_d by Britton reduction up to this depth");
  cmd_dist->add_option("--band", dist_band, "acceptable multiplicative ratio band");
  cmd_dist->add_flag("--csv", dist_csv, "CSV instead of JSON");

  // balancing-fuzz
  auto* cmd_bal = app.add_subcommand("balancing-fuzz", "fuzz the balancing inequality");
  CommonArgs bal_args;
  int bal_samples = 1000;
  int bal_depth = 20, bal_insertions = 10;
  add_common(cmd_bal, bal_args);
  cmd_bal->add_option("--samples", bal_samples, "number of fuzzed pairs");
  cmd_bal->add_option("--scramble-depth", bal_depth, "scramble moves per sample");
  cmd_bal->add_option("--insertions", bal_insertions, "relator insertions per sample");

  // embed-check
  auto* cmd_emb = app.add_subcommand("embed-check", "check the embedding into the ambient group");
  CommonArgs emb_args;
  int emb_samples = 500;
  add_common(cmd_emb, emb_args);
  cmd_emb->add_option("--samples", emb_samples, "number of random words");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_pres) {
      SnowTree tree = load_tree(pres_args);
      Presentation p = presentation_for(pres_group, tree, pres_args.n, load_phi(pres_args));
      write_output(pres_args, "presentation." + std::string(pres_text ? "txt" : "json"),
                   pres_text ? p.to_relator_text() : p.to_json());
      if (!pres_dot_tree.empty()) std::ofstream(pres_dot_tree) << tree.dot_tree();
      if (!pres_dot_ext.empty() || !pres_dot_polygon.empty()) {
        ExtTree ext(tree);
        if (!pres_dot_ext.empty()) std::ofstream(pres_dot_ext) << ext.dot();
        if (!pres_dot_polygon.empty()) {
          if (pres_overlay_i >= 0 && pres_overlay_j >= 0) {
            Segment seg = make_segment(ext, pres_overlay_i, pres_overlay_j);
            std::ofstream(pres_dot_polygon) << dot_polygon(ext, &seg);
          } else {
            std::ofstream(pres_dot_polygon) << dot_polygon(ext);
          }
        }
      }
      return 0;
    }

    if (*cmd_snow) {
      SnowTree tree = load_tree(snow_args);
      FreeAut phi = load_phi(snow_args);
      Word w = parse_word(snow_word);
      SnowflakeResult res = snowflake_diagram(w, snow_depth, tree, snow_args.n, phi,
                                              !snow_no_material, BigInt(snow_budget));
      nlohmann::json j;
      j["depth"] = res.report.depth;
      j["area"] = res.report.area.str();
      j["perimeter"] = res.report.perimeter.str();
      j["weighted_perimeter"] = res.report.weighted_perimeter.str();
      j["r_count"] = res.report.r_count.str();
      j["boundary_subwords"] = res.report.boundary_subwords.str();
      j["materialized"] = res.report.materialized;
      j["too_large"] = res.report.too_large;
      write_output(snow_args, "snowflake.json", j.dump(2));
      if (!snow_csv.empty()) {
        std::ostringstream os;
        os << "level,image_length,subwords\n";
        for (std::size_t k = 0; k < res.report.image_lengths.size(); ++k)
          os << k << ',' << res.report.image_lengths[k] << ','
             << res.report.subwords_per_level[k] << '\n';
        std::ofstream(snow_csv) << os.str();
      }
      if (!snow_svg.empty() && res.diagram) std::ofstream(snow_svg) << res.diagram->to_svg();
      if (!snow_dot.empty() && res.diagram) std::ofstream(snow_dot) << res.diagram->to_dot();
      if (!snow_json.empty() && res.diagram) std::ofstream(snow_json) << res.diagram->to_json();
      if (res.diagram) {
        Presentation p = presentation_S(tree, snow_args.n, phi);
        if (!res.diagram->validate(p).ok()) return 1;
      }
      return 0;
    }

    if (*cmd_corr) {
      SnowTree tree = load_tree(corr_args);
      std::ifstream in(corr_diagram);
      std::stringstream ss;
      ss << in.rdbuf();
      Diagram d = Diagram::from_json(ss.str());
      CorridorScheme scheme;
      if (corr_scheme.rfind("sigma:", 0) == 0) {
        int i = 0, j = 0;
        if (std::sscanf(corr_scheme.c_str(), "sigma:%d,%d", &i, &j) != 2)
          throw CLI::ValidationError("--scheme", "expected sigma:i,j");
        ExtTree ext(tree);
        scheme = scheme_for_segment(ext, make_segment(ext, i, j));
      } else if (corr_scheme.rfind("r:", 0) == 0) {
        scheme = scheme_for_stable(std::atoi(corr_scheme.c_str() + 2));
      } else {
        throw CLI::ValidationError("--scheme", "expected sigma:i,j or r:i");
      }
      auto corridors = trace(d, scheme);
      bool oriented = orientation_check(d, scheme, corridors);
      nlohmann::json j;
      j["scheme"] = scheme.tag;
      j["corridors"] = nlohmann::json::array();
      for (const Corridor& c : corridors)
        j["corridors"].push_back({{"cells", c.cells.size()}, {"annulus", c.annulus}});
      j["orientation_check"] = oriented;
      write_output(corr_args, "corridors.json", j.dump(2));
      if (!corr_svg.empty()) std::ofstream(corr_svg) << corridor_overlay_svg(d, scheme);
      return oriented ? 0 : 1;
    }

    if (*cmd_fold) {
      SnowTree tree = load_tree(fold_args);
      FreeAut phi = load_phi(fold_args);
      if (sweep_len > 0) {
        ConstantsReport rep = measure_corridor_constants(tree, fold_args.n, phi, sweep_len,
                                                         sweep_samples, fold_args.seed);
        std::string csv = constants_csv(rep);
        write_output(fold_args, "constants.csv", csv);
        if (!fold_csv.empty()) std::ofstream(fold_csv) << csv;
        return rep.k0_stable ? 0 : 1;
      }
      FoldedCorridor fc = fold_corridor(parse_word(fold_word), fold_index, tree, fold_args.n, phi);
      auto checks = fc.check_seams();
      nlohmann::json j;
      j["bottom"] = print_word(fc.bottom_word);
      j["top"] = print_word(fc.top_word);
      j["folds"] = fc.fold_count;
      j["cells"] = fc.cell_boundary.size();
      j["seam_components"] = checks.component_count;
      j["seams_ok"] = checks.ok();
      j["bounded_cancellation_span"] = fc.bounded_cancellation_span();
      write_output(fold_args, "fold.json", j.dump(2));
      return checks.ok() ? 0 : 1;
    }

    if (*cmd_nf) {
      SnowTree tree = load_tree(nf_args);
      Presentation p = presentation_for(nf_group, tree, nf_args.n, load_phi(nf_args));
      NormalFormEngine eng(p);
      Word w = parse_word(nf_word);
      BrittonForm bf = eng.britton_normalize(w);
      bool trivial = eng.is_trivial(w);
      nlohmann::json j;
      j["word"] = print_word(w);
      j["trivial"] = trivial;
      j["stable_letters"] = bf.stable_count();
      j["britton"] = print_word(bf.to_word());
      if (bf.stable_count() == 0) {
        AmalgamForm form = eng.vt_normalize(bf.segments[0]);
        j["syllables"] = form.size();
        auto arr = nlohmann::json::array();
        for (const VertexElement& el : form.syllables) {
          arr.push_back({{"vertex", el.vertex},
                         {"coords",
                          {print_word(el.coords[0].u), print_word(el.coords[1].u),
                           print_word(el.coords[2].u)}},
                         {"t_exponents", {el.coords[0].k, el.coords[1].k, el.coords[2].k}}});
        }
        j["amalgam"] = arr;
      }
      write_output(nf_args, "nf.json", j.dump(2));
      return 0;
    }

    if (*cmd_dehn) {
      SnowTree tree = load_tree(dehn_args);
      ExponentReport rep = dehn_fit(tree, dehn_args.n, load_phi(dehn_args),
                                    parse_word(dehn_word), dehn_depth);
      write_output(dehn_args, dehn_csv ? "dehn_fit.csv" : "dehn_fit.json",
                   dehn_csv ? rep.to_csv() : rep.to_json());
      return rep.residual <= dehn_tol ? 0 : 1;
    }

    if (*cmd_dist) {
      SnowTree tree = load_tree(dist_args);
      DistortionReport rep = distortion_family(tree, dist_args.n, load_phi(dist_args),
                                               parse_word(dist_word), dist_depth, dist_certify);
      write_output(dist_args, dist_csv ? "distortion.csv" : "distortion.json",
                   dist_csv ? rep.to_csv() : rep.to_json());
      return (rep.band <= dist_band && rep.certified_depth >= dist_certify) ? 0 : 1;
    }

    if (*cmd_bal) {
      SnowTree tree = load_tree(bal_args);
      BalancingFuzzReport rep =
          balancing_fuzz(tree, bal_samples, bal_args.seed, bal_depth, bal_insertions);
      write_output(bal_args, "balancing.json", rep.to_json());
      return rep.ok() ? 0 : 1;
    }

    if (*cmd_emb) {
      SnowTree tree = load_tree(emb_args);
      EmbeddingFuzzReport rep =
          embedding_fuzz(tree, emb_args.n, load_phi(emb_args), emb_samples, emb_args.seed);
      write_output(emb_args, "embedding.json", rep.to_json());
      return rep.ok() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
