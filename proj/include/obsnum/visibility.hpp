#pragma once

// Scenes (vertex points plus polygonal obstacles) and their visibility graphs.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "obsnum/geometry.hpp"
#include "obsnum/graph.hpp"

namespace obsnum {

struct Scene {
  std::vector<Point> points;
  std::vector<Polygon> obstacles;

  /// Graph vertices followed by every obstacle vertex, in obstacle order.
  std::vector<Point> all_points() const {
    std::vector<Point> out = points;
    for (const auto& o : obstacles) out.insert(out.end(), o.vertices.begin(), o.vertices.end());
    return out;
  }

  /// Total number of obstacle sides.
  std::size_t side_count() const {
    std::size_t s = 0;
    for (const auto& o : obstacles) s += o.size();
    return s;
  }

  friend bool operator==(const Scene&, const Scene&) = default;
};

namespace detail {

inline std::string describe_point_index(const Scene& scene, std::size_t idx) {
  if (idx < scene.points.size()) return "vertex " + std::to_string(idx + 1);
  idx -= scene.points.size();
  for (std::size_t o = 0; o < scene.obstacles.size(); ++o) {
    if (idx < scene.obstacles[o].size()) {
      return "obstacle " + std::to_string(o + 1) + " corner " + std::to_string(idx + 1);
    }
    idx -= scene.obstacles[o].size();
  }
  return "point ?";
}

inline bool polygons_overlap(const Polygon& a, const Polygon& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (closed_segments_intersect(a[i], a.next(i), b[j], b.next(j))) return true;
  return locate(a, b[0]) != Location::outside || locate(b, a[0]) != Location::outside;
}

}  // namespace detail

/// Every violated scene invariant, as human-readable diagnostics (1-based labels).
inline std::vector<std::string> scene_issues(const Scene& scene) {
  std::vector<std::string> issues;
  for (std::size_t o = 0; o < scene.obstacles.size(); ++o) {
    for (const auto& msg : polygon_issues(scene.obstacles[o]))
      issues.push_back("obstacle " + std::to_string(o + 1) + ": " + msg);
  }
  const auto all = scene.all_points();
  const auto gp = check_general_position(all);
  for (const auto& [i, j] : gp.duplicates) {
    issues.push_back("general position: duplicate point " + detail::describe_point_index(scene, i) +
                     " = " + detail::describe_point_index(scene, j));
  }
  for (const auto& t : gp.collinear) {
    issues.push_back("general position: collinear " + detail::describe_point_index(scene, t[0]) +
                     ", " + detail::describe_point_index(scene, t[1]) + ", " +
                     detail::describe_point_index(scene, t[2]));
  }
  for (std::size_t v = 0; v < scene.points.size(); ++v) {
    for (std::size_t o = 0; o < scene.obstacles.size(); ++o) {
      if (scene.obstacles[o].size() < 3) continue;
      if (locate(scene.obstacles[o], scene.points[v]) != Location::outside) {
        issues.push_back("vertex " + std::to_string(v + 1) + " lies inside or on obstacle " +
                         std::to_string(o + 1));
      }
    }
  }
  for (std::size_t a = 0; a < scene.obstacles.size(); ++a) {
    for (std::size_t b = a + 1; b < scene.obstacles.size(); ++b) {
      if (scene.obstacles[a].size() < 3 || scene.obstacles[b].size() < 3) continue;
      if (detail::polygons_overlap(scene.obstacles[a], scene.obstacles[b])) {
        issues.push_back("obstacles " + std::to_string(a + 1) + " and " + std::to_string(b + 1) +
                         " overlap");
      }
    }
  }
  return issues;
}

inline void require_valid(const Scene& scene) {
  auto issues = scene_issues(scene);
  if (!issues.empty()) throw InvalidScene(std::move(issues));
}

struct VisibilityReport {
  Graph graph;
  /// For each non-edge (lexicographic order): the lowest-index blocking obstacle.
  std::vector<std::pair<Edge, std::size_t>> blockers;
};

/// Reference all-pairs scan: every pair against every obstacle.
/// With validate=false only the per-segment preconditions are enforced, which
/// admits scenes whose collinearities touch no sight line.
inline VisibilityReport visibility_report(const Scene& scene, bool validate = true) {
  if (validate) require_valid(scene);
  const std::size_t n = scene.points.size();
  VisibilityReport report{Graph(n), {}};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Segment seg(scene.points[i], scene.points[j]);
      std::optional<std::size_t> blocker;
      for (std::size_t o = 0; o < scene.obstacles.size() && !blocker; ++o) {
        if (segment_intersects_polygon(seg, scene.obstacles[o])) blocker = o;
      }
      if (blocker) {
        report.blockers.push_back({{i, j}, *blocker});
      } else {
        report.graph.add_edge(i, j);
      }
    }
  }
  return report;
}

inline Graph visibility_graph(const Scene& scene, bool validate = true) {
  return visibility_report(scene, validate).graph;
}

struct RepresentationCheck {
  bool ok = true;
  std::vector<Edge> blocked_but_required;  // in g, not visible
  std::vector<Edge> visible_but_forbidden;  // visible, not in g
};

/// Labeled comparison of the scene's visibility graph with g.
inline RepresentationCheck validate_representation(const Scene& scene, const Graph& g) {
  if (g.order() != scene.points.size()) {
    throw std::invalid_argument("validate_representation: graph has " + std::to_string(g.order()) +
                                " vertices, scene has " + std::to_string(scene.points.size()));
  }
  const Graph vis = visibility_graph(scene);
  RepresentationCheck check;
  for (std::size_t i = 0; i < g.order(); ++i) {
    for (std::size_t j = i + 1; j < g.order(); ++j) {
      if (g.has_edge(i, j) && !vis.has_edge(i, j)) check.blocked_but_required.emplace_back(i, j);
      if (!g.has_edge(i, j) && vis.has_edge(i, j)) check.visible_but_forbidden.emplace_back(i, j);
    }
  }
  check.ok = check.blocked_but_required.empty() && check.visible_but_forbidden.empty();
  return check;
}

}  // namespace obsnum
