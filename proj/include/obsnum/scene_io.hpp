#pragma once

// SceneFile: a JSON document
//
//   {
//     "points":    [[x, y], ...],
//     "obstacles": [[[x, y], ...], ...],
//     "graph":     {"n": 3, "edges": [[1, 2], ...]}
//   }
//
// Coordinates are integers, written as JSON numbers or as decimal strings when
// they exceed 64 bits. Vertex labels in "edges" are 1-based. "obstacles" and
// "graph" are optional; "points" may be omitted when a graph is given.

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "obsnum/geometry.hpp"
#include "obsnum/graph.hpp"
#include "obsnum/visibility.hpp"

namespace obsnum {

struct SceneFile {
  Scene scene;
  std::optional<Graph> graph;

  friend bool operator==(const SceneFile&, const SceneFile&) = default;
};

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline Integer parse_coordinate(const nlohmann::json& v, const std::string& where) {
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) return Integer(v.get<std::uint64_t>());
    return Integer(v.get<std::int64_t>());
  }
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    const std::size_t digits_from = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() == digits_from || s.find_first_not_of("0123456789", digits_from) != std::string::npos)
      throw FormatError(where + ": not an integer: \"" + s + "\"");
    return Integer(s);
  }
  throw FormatError(where + ": coordinate must be an integer");
}

inline Point parse_point(const nlohmann::json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) throw FormatError(where + ": point must be [x, y]");
  return {parse_coordinate(v[0], where + ".x"), parse_coordinate(v[1], where + ".y")};
}

inline std::string coordinate_text(const Integer& v) {
  if (v >= Integer(INT64_MIN) && v <= Integer(INT64_MAX)) return v.str();
  return "\"" + v.str() + "\"";
}

inline std::string point_text(const Point& p) {
  return "[" + coordinate_text(p.x) + ", " + coordinate_text(p.y) + "]";
}

}  // namespace detail

/// Parse without validating scene invariants.
inline SceneFile parse_scene_file(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("malformed scene file: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("scene file must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "points" && key != "obstacles" && key != "graph")
      throw FormatError("unknown field \"" + key + "\"");
  }
  SceneFile file;
  if (doc.contains("points")) {
    const auto& pts = doc["points"];
    if (!pts.is_array()) throw FormatError("points must be a list");
    for (std::size_t i = 0; i < pts.size(); ++i)
      file.scene.points.push_back(detail::parse_point(pts[i], "points[" + std::to_string(i + 1) + "]"));
  }
  if (doc.contains("obstacles")) {
    const auto& obs = doc["obstacles"];
    if (!obs.is_array()) throw FormatError("obstacles must be a list");
    for (std::size_t o = 0; o < obs.size(); ++o) {
      if (!obs[o].is_array()) throw FormatError("obstacle " + std::to_string(o + 1) + " must be a list");
      Polygon poly;
      for (std::size_t i = 0; i < obs[o].size(); ++i)
        poly.vertices.push_back(detail::parse_point(
            obs[o][i], "obstacles[" + std::to_string(o + 1) + "][" + std::to_string(i + 1) + "]"));
      file.scene.obstacles.push_back(std::move(poly));
    }
  }
  if (doc.contains("graph")) {
    const auto& g = doc["graph"];
    if (!g.is_object() || !g.contains("n") || !g["n"].is_number_unsigned())
      throw FormatError("graph needs a non-negative integer \"n\"");
    const auto n = g["n"].get<std::size_t>();
    Graph graph(n);
    if (g.contains("edges")) {
      const auto& edges = g["edges"];
      if (!edges.is_array()) throw FormatError("graph.edges must be a list");
      for (std::size_t k = 0; k < edges.size(); ++k) {
        const auto& e = edges[k];
        const std::string where = "graph.edges[" + std::to_string(k + 1) + "]";
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned())
          throw FormatError(where + ": edge must be [u, v] with 1-based labels");
        const auto u = e[0].get<std::size_t>();
        const auto v = e[1].get<std::size_t>();
        if (u < 1 || v < 1 || u > n || v > n) throw FormatError(where + ": label out of range");
        if (u == v) throw FormatError(where + ": self-loop");
        if (graph.has_edge(u - 1, v - 1)) throw FormatError(where + ": duplicate edge");
        graph.add_edge(u - 1, v - 1);
      }
    }
    file.graph = std::move(graph);
  }
  if (file.graph && !file.scene.points.empty() && file.graph->order() != file.scene.points.size()) {
    throw FormatError("graph has " + std::to_string(file.graph->order()) + " vertices but " +
                      std::to_string(file.scene.points.size()) + " points are given");
  }
  return file;
}

/// Parse and validate the scene invariants.
inline SceneFile load_scene_file(const std::string& text) {
  SceneFile file = parse_scene_file(text);
  require_valid(file.scene);
  return file;
}

inline SceneFile read_scene_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return load_scene_file(buf.str());
}

inline std::string to_string(const SceneFile& file) {
  std::string out = "{\n  \"points\": [";
  for (std::size_t i = 0; i < file.scene.points.size(); ++i) {
    if (i) out += ", ";
    out += detail::point_text(file.scene.points[i]);
  }
  out += "],\n  \"obstacles\": [";
  for (std::size_t o = 0; o < file.scene.obstacles.size(); ++o) {
    out += o ? ",\n    [" : "\n    [";
    const auto& poly = file.scene.obstacles[o];
    for (std::size_t i = 0; i < poly.size(); ++i) {
      if (i) out += ", ";
      out += detail::point_text(poly[i]);
    }
    out += "]";
  }
  out += file.scene.obstacles.empty() ? "]" : "\n  ]";
  if (file.graph) {
    out += ",\n  \"graph\": {\"n\": " + std::to_string(file.graph->order()) + ", \"edges\": [";
    bool first = true;
    for (const auto& [u, v] : file.graph->edges()) {
      if (!first) out += ", ";
      first = false;
      out += "[" + std::to_string(u + 1) + ", " + std::to_string(v + 1) + "]";
    }
    out += "]}";
  }
  out += "\n}\n";
  return out;
}

}  // namespace obsnum
