#pragma once

// Seeded generators for placements, graphs and scenes. All draws go through
// mt19937_64 with explicit rejection so that output depends only on the seed,
// not on the standard library's distribution implementations.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "obsnum/geometry.hpp"
#include "obsnum/graph.hpp"
#include "obsnum/visibility.hpp"

namespace obsnum {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw std::invalid_argument("Rng::uniform: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
    if (span == UINT64_MAX) return static_cast<std::int64_t>(next());
    const std::uint64_t range = span + 1;
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % range);
    std::uint64_t r;
    do {
      r = next();
    } while (r >= limit);
    return lo + static_cast<std::int64_t>(r % range);
  }

  bool coin() { return (next() >> 63) != 0; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(i) - 1));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

inline Point random_point(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return {Integer(rng.uniform(lo, hi)), Integer(rng.uniform(lo, hi))};
}

/// Edge-independent G(n, 1/2).
inline Graph random_graph(std::size_t n, Rng& rng) {
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.coin()) g.add_edge(i, j);
  return g;
}

/// n points on [0, grid)^2 in general position. With distinct_x, no two share
/// an x-coordinate. Returns nullopt after max_tries failed draws.
inline std::optional<std::vector<Point>> random_placement(std::size_t n, std::int64_t grid, Rng& rng,
                                                          bool distinct_x = true,
                                                          std::size_t max_tries = 1000) {
  for (std::size_t attempt = 0; attempt < max_tries; ++attempt) {
    std::vector<Point> pts;
    pts.reserve(n);
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      // add one point at a time, retrying locally before starting over
      bool placed = false;
      for (int local = 0; local < 64 && !placed; ++local) {
        Point p = random_point(rng, 0, grid - 1);
        bool good = true;
        for (std::size_t a = 0; a < pts.size() && good; ++a) {
          if (pts[a] == p || (distinct_x && pts[a].x == p.x)) good = false;
          for (std::size_t b = a + 1; b < pts.size() && good; ++b)
            if (orient(pts[a], pts[b], p) == 0) good = false;
        }
        if (good) {
          pts.push_back(std::move(p));
          placed = true;
        }
      }
      ok = placed;
    }
    if (ok) return pts;
  }
  return std::nullopt;
}

/// Convex polygon: hull of random points in a box around center, at least 3 corners.
inline Polygon random_convex_polygon(Rng& rng, const Point& center, std::int64_t radius,
                                     std::size_t corner_draws = 8) {
  for (;;) {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < corner_draws; ++i) {
      pts.push_back(center + random_point(rng, -radius, radius));
    }
    auto hull = convex_hull(pts);
    if (hull.size() >= 3) return Polygon{std::move(hull)};
  }
}

/// Star-shaped (generally non-convex) polygon: random points sorted by exact
/// angle around center. Rejects draws where two corners are collinear with center.
inline Polygon random_star_polygon(Rng& rng, const Point& center, std::int64_t radius,
                                   std::size_t corners) {
  for (;;) {
    std::vector<Point> offsets;
    for (std::size_t i = 0; i < corners; ++i) {
      Point d = random_point(rng, -radius, radius);
      if (d.x == 0 && d.y == 0) continue;
      offsets.push_back(std::move(d));
    }
    bool degenerate = offsets.size() < 3;
    for (std::size_t i = 0; i < offsets.size() && !degenerate; ++i)
      for (std::size_t j = i + 1; j < offsets.size() && !degenerate; ++j)
        if (cross(offsets[i], offsets[j]) == 0) degenerate = true;
    if (degenerate) continue;
    std::sort(offsets.begin(), offsets.end(),
              [](const Point& a, const Point& b) { return counterclockwise_less(a, b); });
    Polygon poly;
    for (const auto& d : offsets) poly.vertices.push_back(center + d);
    if (polygon_issues(poly).empty()) return poly;
  }
}

struct SceneShape {
  std::size_t vertices = 6;
  std::size_t obstacles = 1;
  std::int64_t extent = 1000;          // coordinates in [-extent, extent]
  std::int64_t obstacle_radius = 200;  // half-size of the obstacle's box
  bool convex = true;
  std::size_t corners = 8;             // corner draws per obstacle
};

/// Random valid scene (validated; retried until valid).
inline Scene random_scene(const SceneShape& shape, Rng& rng) {
  for (;;) {
    Scene scene;
    const std::int64_t inner = shape.extent - shape.obstacle_radius;
    for (std::size_t o = 0; o < shape.obstacles; ++o) {
      const Point c = random_point(rng, -inner, inner);
      scene.obstacles.push_back(shape.convex
                                    ? random_convex_polygon(rng, c, shape.obstacle_radius, shape.corners)
                                    : random_star_polygon(rng, c, shape.obstacle_radius, shape.corners));
    }
    for (std::size_t v = 0; v < shape.vertices; ++v) {
      scene.points.push_back(random_point(rng, -shape.extent, shape.extent));
    }
    if (scene_issues(scene).empty()) return scene;
  }
}

}  // namespace obsnum
