#pragma once

// Command-line front end. Output is line-oriented "key value" text; vertex and
// obstacle labels are 1-based. Exit status: 0 success, 1 validation failure
// or bad input, 2 internal contradiction.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "obsnum/arrangement.hpp"
#include "obsnum/bounds.hpp"
#include "obsnum/obstacle_search.hpp"
#include "obsnum/order_type.hpp"
#include "obsnum/scene_io.hpp"
#include "obsnum/tangent_codec.hpp"
#include "obsnum/visibility.hpp"

namespace obsnum {

enum ExitStatus : int { exit_ok = 0, exit_invalid = 1, exit_contradiction = 2 };

namespace cli_detail {

inline std::string label(std::size_t i) { return std::to_string(i + 1); }

inline std::string edge_text(const Edge& e) { return label(e.first) + " " + label(e.second); }

inline std::string rational_text(const Rational& r) {
  return denominator(r) == 1 ? numerator(r).str() : numerator(r).str() + "/" + denominator(r).str();
}

inline void print_graph(std::ostream& out, const Graph& g) {
  out << "vertices " << g.order() << "\n";
  out << "edges " << g.edge_count() << "\n";
  for (const auto& e : g.edges()) out << "edge " << edge_text(e) << "\n";
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Graph from the file, or the visibility graph of its scene.
inline Graph graph_of(const SceneFile& file) {
  if (file.graph) return *file.graph;
  return visibility_graph(file.scene);
}

inline std::vector<Point> placement_of(const SceneFile& file) {
  if (file.scene.points.empty() && file.graph && file.graph->order() > 0)
    throw FormatError("this command needs vertex points in the scene file");
  return file.scene.points;
}

inline std::string fraction_text(std::size_t num, std::size_t den) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6)
     << (den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den));
  return os.str();
}

inline void print_result(std::ostream& out, const ObsResult& r) {
  out << "upper_bound " << r.upper_bound << "\n";
  out << "certified " << (r.certified_exact ? "true" : "false") << "\n";
  out << "placements_evaluated " << r.placements_evaluated << "\n";
  for (std::size_t v = 0; v < r.witness.placement.size(); ++v) {
    out << "witness_point " << label(v) << " " << r.witness.placement[v].x << " "
        << r.witness.placement[v].y << "\n";
  }
  out << "witness_faces";
  for (auto f : r.witness.faces) out << " " << f;
  out << "\n";
}

}  // namespace cli_detail

/// Run one command. `args` excludes the program name.
inline int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace cli_detail;
  CLI::App app{"Obstacle representations of graphs: visibility, tangent codec, faces and bounds",
               "obsnum"};
  app.require_subcommand(1);

  std::string scene_path;
  std::uint64_t seed = 0;
  std::size_t placements = 64;
  std::int64_t grid = 0;
  std::size_t threads = 1;

  auto* visibility = app.add_subcommand("visibility", "visibility graph of a scene");
  visibility->add_option("scene", scene_path, "scene file")->required();

  auto* validate = app.add_subcommand("validate", "check that the scene represents its graph");
  validate->add_option("scene", scene_path, "scene file with a graph")->required();

  auto* encode = app.add_subcommand("encode", "tangent sequence of every convex obstacle");
  encode->add_option("scene", scene_path, "scene file")->required();

  std::string sequence_text;
  std::string table_path;
  std::size_t samples = 10000;
  auto* decode = app.add_subcommand("decode", "visibility graph from a tangent sequence");
  decode->add_option("sequence", sequence_text, "sequence such as 2+1-2-3+1+3-")->required();
  auto* decode_table = decode->add_option("--table", table_path, "pattern table file");
  auto* decode_seed = decode->add_option("--seed", seed, "seed for deriving the table");
  decode->add_option("--samples", samples, "scenes sampled when deriving the table");
  decode_table->excludes(decode_seed);

  auto* derive = app.add_subcommand("derive-table", "derive the pattern table from random scenes");
  derive->add_option("--samples", samples, "number of random scenes")->required();
  derive->add_option("--seed", seed, "random seed")->required();
  derive->add_option("--threads", threads, "worker threads");

  bool unlabeled = false;
  auto* ordertype = app.add_subcommand("ordertype", "chirotope of the scene's vertices");
  ordertype->add_option("scene", scene_path, "scene file")->required();
  ordertype->add_flag("--unlabeled", unlabeled, "also print the relabeling-canonical form (n <= 8)");

  auto* signature = app.add_subcommand("signature", "order type of vertices then obstacle corners");
  signature->add_option("scene", scene_path, "scene file")->required();

  auto* faces = app.add_subcommand("faces", "faces of the drawing and their complexity");
  faces->add_option("scene", scene_path, "scene file (graph, or its visibility graph)")->required();

  auto* incidence = app.add_subcommand("incidence", "faces crossed by each non-edge");
  incidence->add_option("scene", scene_path, "scene file (graph, or its visibility graph)")->required();

  auto* cover = app.add_subcommand("cover", "fewest obstacles for the given placement");
  cover->add_option("scene", scene_path, "scene file (graph, or its visibility graph)")->required();

  std::int64_t sweep = 0;
  auto* obs = app.add_subcommand("obs-search", "obstacle-number upper bound over sampled placements");
  obs->add_option("scene", scene_path, "scene or graph file")->required();
  obs->add_option("--seed", seed, "random seed")->required();
  obs->add_option("--placements", placements, "random placements");
  obs->add_option("--grid", grid, "placement grid side (default 100 n^2)");
  obs->add_option("--sweep", sweep, "rows of the exhaustive one-per-column sweep (n <= 5)");
  obs->add_option("--threads", threads, "worker threads");

  std::size_t chain_n = 0;
  std::string target_path;
  bool shuffle = false;
  auto* chain = app.add_subcommand("chain", "edge-deletion chain from K_n to a target graph");
  chain->add_option("--n", chain_n, "vertex count")->required();
  chain->add_option("--target", target_path, "target graph file (default: empty graph)");
  chain->add_option("--seed", seed, "random seed")->required();
  chain->add_option("--placements", placements, "random placements per step");
  chain->add_option("--grid", grid, "placement grid side");
  chain->add_flag("--shuffle", shuffle, "delete edges in seeded random order");

  std::size_t k = 0;
  auto* partition = app.add_subcommand("partition-check", "vertical-strip partition count");
  partition->add_option("scene", scene_path, "scene file")->required();
  partition->add_option("--k", k, "group size")->required();

  std::size_t exp_n = 0;
  std::size_t trials = 0;
  std::size_t budget = 32;
  bool exhaustive = false;
  auto* experiment = app.add_subcommand("random-exp", "G(n, 1/2) obstacle experiment");
  experiment->add_option("--n", exp_n, "vertex count")->required();
  experiment->add_option("--trials", trials, "sampled graphs");
  experiment->add_option("--seed", seed, "random seed")->required();
  experiment->add_option("--budget", budget, "placements per graph");
  experiment->add_option("--grid", grid, "placement grid side");
  experiment->add_flag("--exhaustive", exhaustive, "every labeled graph instead of sampling");

  std::optional<std::uint64_t> bound_h;
  std::optional<std::uint64_t> bound_s;
  std::string bound_c = "1";
  auto* bounds = app.add_subcommand("bounds", "smallest n where the counting bound is beaten");
  bounds->set_help_flag("--help", "print this help");  // frees -h for --h
  auto* opt_h = bounds->add_option("--h", bound_h, "obstacle count");
  auto* opt_s = bounds->add_option("--s", bound_s, "total obstacle sides");
  bounds->add_option("--c", bound_c, "constant for s mode, e.g. 1 or 3/2");
  opt_h->excludes(opt_s);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_invalid;
  }

  try {
    if (visibility->parsed()) {
      const auto file = read_scene_file(scene_path);
      const auto report = visibility_report(file.scene);
      print_graph(out, report.graph);
      for (const auto& [pair, obstacle] : report.blockers)
        out << "blocked " << edge_text(pair) << " by " << label(obstacle) << "\n";
    } else if (validate->parsed()) {
      const auto file = read_scene_file(scene_path);
      if (!file.graph) throw FormatError("validate: scene file has no graph");
      const auto check = validate_representation(file.scene, *file.graph);
      out << "valid " << (check.ok ? "true" : "false") << "\n";
      for (const auto& e : check.blocked_but_required) out << "blocked_but_required " << edge_text(e) << "\n";
      for (const auto& e : check.visible_but_forbidden) out << "visible_but_forbidden " << edge_text(e) << "\n";
      if (!check.ok) return exit_invalid;
    } else if (encode->parsed()) {
      const auto file = read_scene_file(scene_path);
      for (std::size_t o = 0; o < file.scene.obstacles.size(); ++o)
        out << to_string(encode_tangent(file.scene, o)) << "\n";
    } else if (decode->parsed()) {
      const auto seq = parse_tangent_sequence(sequence_text);
      PatternTable table;
      if (!table_path.empty()) {
        table = parse_pattern_table(read_text(table_path));
      } else {
        if (decode_seed->count() == 0) throw FormatError("decode: give --table or --seed");
        table = derive_pattern_table(samples, seed);
      }
      print_graph(out, decode_visibility(seq, table));
    } else if (derive->parsed()) {
      TableSampling cfg;
      cfg.threads = threads;
      out << to_string(derive_pattern_table(samples, seed, cfg));
    } else if (ordertype->parsed()) {
      const auto file = read_scene_file(scene_path);
      const auto ot = chirotope(file.scene.points);
      out << "points " << ot.n << "\n";
      out << "chirotope " << ot.signs() << "\n";
      if (unlabeled) out << "unlabeled " << canonical_unlabeled(ot).signs() << "\n";
    } else if (signature->parsed()) {
      const auto file = read_scene_file(scene_path);
      const auto sig = scene_signature(file.scene);
      out << "points " << sig.point_count() << "\n";
      out << "vertices " << sig.vertex_count << "\n";
      for (std::size_t o = 0; o < sig.obstacle_ranges.size(); ++o) {
        out << "obstacle " << label(o) << " " << label(sig.obstacle_ranges[o].first) << " "
            << sig.obstacle_ranges[o].second << "\n";
      }
      out << "chirotope " << sig.order_type.signs() << "\n";
    } else if (faces->parsed()) {
      const auto file = read_scene_file(scene_path);
      const Graph g = graph_of(file);
      const auto fs = build_arrangement(Drawing::of(placement_of(file), g));
      const auto cx = face_complexity(fs);
      out << "nodes " << fs.node_count() << "\n";
      out << "pieces " << fs.piece_count() << "\n";
      out << "components " << fs.component_count << "\n";
      out << "faces " << fs.face_count() << "\n";
      out << "euler_defect " << euler_defect(fs) << "\n";
      for (std::size_t f = 0; f < fs.face_count(); ++f) {
        out << "face " << f << " " << (fs.faces[f].unbounded ? "unbounded" : "bounded") << " complexity "
            << cx.per_face[f] << " representative " << rational_text(fs.faces[f].representative.x) << " "
            << rational_text(fs.faces[f].representative.y) << "\n";
      }
      out << "max_complexity " << cx.maximum << "\n";
      if (!file.scene.obstacles.empty() && !file.graph) {
        const auto check = obstacle_face_check(file.scene, fs);
        for (std::size_t o = 0; o < check.face_of_obstacle.size(); ++o) {
          out << "obstacle " << label(o) << " face ";
          if (check.face_of_obstacle[o]) out << *check.face_of_obstacle[o] << "\n";
          else out << "none\n";
        }
        out << "obstacles_in_single_faces " << (check.ok ? "true" : "false") << "\n";
      }
    } else if (incidence->parsed()) {
      const auto file = read_scene_file(scene_path);
      const Graph g = graph_of(file);
      const auto fs = build_arrangement(Drawing::of(placement_of(file), g));
      const auto inst = face_nonedge_incidence(fs, g);
      out << "faces " << inst.face_count() << "\n";
      out << "nonedges " << inst.nonedges.size() << "\n";
      for (std::size_t f = 0; f < inst.face_count(); ++f) {
        out << "face " << f << ":";
        for (auto k : inst.incidence[f]) out << " " << edge_text(inst.nonedges[k]);
        out << "\n";
      }
    } else if (cover->parsed()) {
      const auto file = read_scene_file(scene_path);
      const Graph g = graph_of(file);
      const auto result = min_obstacles_for_placement(placement_of(file), g);
      out << "obstacles " << result.obstacles << "\n";
      out << "faces";
      for (auto f : result.faces) out << " " << f;
      out << "\n";
    } else if (obs->parsed()) {
      const auto file = read_scene_file(scene_path);
      const Graph g = graph_of(file);
      SearchConfig cfg;
      cfg.placements = placements;
      cfg.grid = grid;
      cfg.seed = seed;
      cfg.sweep_grid = sweep;
      cfg.threads = threads;
      const auto r = obs_upper_bound(g, cfg);
      out << "vertices " << g.order() << "\n";
      print_result(out, r);
    } else if (chain->parsed()) {
      Graph target(chain_n);
      if (!target_path.empty()) {
        const auto file = read_scene_file(target_path);
        target = graph_of(file);
      }
      SearchConfig cfg;
      cfg.placements = placements;
      cfg.grid = grid;
      cfg.seed = seed;
      const auto record = edge_deletion_chain(chain_n, target, cfg, shuffle);
      out << "steps " << record.steps.size() << "\n";
      out << "step deleted edges upper_bound certified\n";
      for (std::size_t t = 0; t < record.steps.size(); ++t) {
        const auto& s = record.steps[t];
        out << t << " " << (s.deleted ? label(s.deleted->first) + "-" + label(s.deleted->second) : "-")
            << " " << s.graph.edge_count() << " " << s.result.upper_bound << " "
            << (s.result.certified_exact ? "true" : "false") << "\n";
      }
      for (const auto& [value, step] : record.first_reached)
        out << "first_reached " << value << " " << step << "\n";
    } else if (partition->parsed()) {
      const auto file = read_scene_file(scene_path);
      const auto r = partition_lemma_check(file.scene, k);
      out << "groups " << r.groups.size() << "\n";
      for (std::size_t gi = 0; gi < r.groups.size(); ++gi) {
        out << "group " << gi + 1 << " " << (r.flagged[gi] ? "flagged" : "holds_obstacle") << ":";
        for (auto v : r.groups[gi]) out << " " << label(v);
        out << "\n";
      }
      if (!r.leftover.empty()) {
        out << "leftover:";
        for (auto v : r.leftover) out << " " << label(v);
        out << "\n";
      }
      out << "flagged " << r.flagged_count << "\n";
      out << "obstacles " << r.obstacle_count << "\n";
      out << "bound_holds " << (r.bound_holds ? "true" : "false") << "\n";
      out << "lemma_hypothesis " << (r.lemma_hypothesis ? "true" : "false") << "\n";
      if (r.lemma_hypothesis) out << "lemma_conclusion " << (r.lemma_conclusion ? "true" : "false") << "\n";
      if (!r.bound_holds) return exit_contradiction;
    } else if (experiment->parsed()) {
      ExperimentConfig cfg;
      cfg.n = exp_n;
      cfg.trials = trials;
      cfg.seed = seed;
      cfg.placements = budget;
      cfg.grid = grid;
      cfg.exhaustive = exhaustive;
      if (!exhaustive && trials == 0) throw std::invalid_argument("random-exp: --trials must be >= 1");
      const auto r = random_graph_experiment(cfg);
      out << "graphs " << r.graphs << "\n";
      out << "certified_at_most_one " << r.certified_at_most_one << "\n";
      out << "unresolved " << r.unresolved << "\n";
      out << "fraction_certified " << fraction_text(r.certified_at_most_one, r.graphs) << "\n";
      out << "fraction_unresolved " << fraction_text(r.unresolved, r.graphs) << "\n";
      for (const auto& [bound, count] : r.bound_histogram) out << "bound " << bound << " " << count << "\n";
    } else if (bounds->parsed()) {
      BoundsQuery q;
      q.h = bound_h;
      q.s = bound_s;
      try {
        q.c = Rational(bound_c);
      } catch (const std::exception&) {
        throw FormatError("bounds: --c must be a positive rational such as 2 or 3/2");
      }
      const auto n = bounds_threshold(q);
      if (q.h) {
        out << "mode h\nh " << *q.h << "\n";
      } else {
        out << "mode s\ns " << *q.s << "\nc " << rational_text(q.c) << " (for the supplied constant)\n";
      }
      out << "threshold " << n << "\n";
    }
  } catch (const PatternContradiction& e) {
    err << "contradiction: " << e.what() << "\n";
    return exit_contradiction;
  } catch (const InvalidScene& e) {
    err << "invalid scene:";
    for (const auto& issue : e.issues()) err << "\n  " << issue;
    err << "\n";
    return exit_invalid;
  } catch (const FormatError& e) {
    err << "input error: " << e.what() << "\n";
    return exit_invalid;
  } catch (const UnknownPattern& e) {
    err << "decode: " << e.what() << "\n";
    return exit_invalid;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return exit_invalid;
  } catch (const std::logic_error& e) {
    err << "internal contradiction: " << e.what() << "\n";
    return exit_contradiction;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_invalid;
  }
  return exit_ok;
}

}  // namespace obsnum
