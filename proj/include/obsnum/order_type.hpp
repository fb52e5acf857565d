#pragma once

// Chirotopes (labeled order types) and the scene signature: the order type
// of the vertices followed by every obstacle's corners, with the obstacle
// index ranges recorded.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "obsnum/geometry.hpp"
#include "obsnum/random.hpp"
#include "obsnum/visibility.hpp"

namespace obsnum {

/// Orientation of every triple i < j < k, in lexicographic triple order.
struct OrderType {
  std::size_t n = 0;
  std::vector<std::int8_t> orientations;

  static std::size_t triple_count(std::size_t n) {
    return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6;
  }

  /// Position of triple (i < j < k) in the orientation list.
  static std::size_t triple_index(std::size_t n, std::size_t i, std::size_t j, std::size_t k) {
    // triples before first index i, then pairs (j, k) with i < j < k
    std::size_t idx = 0;
    for (std::size_t a = 0; a < i; ++a) idx += (n - a - 1) * (n - a - 2) / 2;
    for (std::size_t b = i + 1; b < j; ++b) idx += n - b - 1;
    return idx + (k - j - 1);
  }

  /// Orientation of an arbitrary distinct triple, with alternation applied.
  int at(std::size_t i, std::size_t j, std::size_t k) const {
    if (i == j || j == k || i == k) throw std::invalid_argument("OrderType::at: repeated index");
    std::array<std::size_t, 3> t{i, j, k};
    int parity = 1;
    // bubble sort tracks the permutation sign
    for (int pass = 0; pass < 2; ++pass)
      for (int a = 0; a < 2 - pass; ++a)
        if (t[a] > t[a + 1]) {
          std::swap(t[a], t[a + 1]);
          parity = -parity;
        }
    return parity * orientations.at(triple_index(n, t[0], t[1], t[2]));
  }

  std::string signs() const {
    std::string s;
    s.reserve(orientations.size());
    for (auto o : orientations) s += o > 0 ? '+' : '-';
    return s;
  }

  friend bool operator==(const OrderType&, const OrderType&) = default;
};

class CollinearTriple : public std::invalid_argument {
 public:
  CollinearTriple(std::size_t i, std::size_t j, std::size_t k)
      : std::invalid_argument("collinear triple (" + std::to_string(i + 1) + ", " +
                              std::to_string(j + 1) + ", " + std::to_string(k + 1) + ")"),
        triple_{i, j, k} {}
  std::array<std::size_t, 3> triple() const noexcept { return triple_; }

 private:
  std::array<std::size_t, 3> triple_;
};

inline OrderType chirotope(const std::vector<Point>& points) {
  OrderType ot;
  ot.n = points.size();
  ot.orientations.reserve(OrderType::triple_count(ot.n));
  for (std::size_t i = 0; i < ot.n; ++i)
    for (std::size_t j = i + 1; j < ot.n; ++j)
      for (std::size_t k = j + 1; k < ot.n; ++k) {
        const int o = orient(points[i], points[j], points[k]);
        if (o == 0) throw CollinearTriple(i, j, k);
        ot.orientations.push_back(static_cast<std::int8_t>(o));
      }
  return ot;
}

inline bool same_labeled_order_type(const std::vector<Point>& a, const std::vector<Point>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("same_labeled_order_type: size mismatch");
  return chirotope(a) == chirotope(b);
}

/// Lexicographically smallest sign vector over all relabelings (n <= 8).
inline OrderType canonical_unlabeled(const OrderType& ot) {
  if (ot.n > 8) throw std::invalid_argument("canonical_unlabeled: limited to n <= 8");
  std::vector<std::size_t> perm(ot.n);
  std::iota(perm.begin(), perm.end(), 0);
  OrderType best = ot;
  OrderType candidate;
  candidate.n = ot.n;
  do {
    candidate.orientations.clear();
    for (std::size_t i = 0; i < ot.n; ++i)
      for (std::size_t j = i + 1; j < ot.n; ++j)
        for (std::size_t k = j + 1; k < ot.n; ++k)
          candidate.orientations.push_back(static_cast<std::int8_t>(ot.at(perm[i], perm[j], perm[k])));
    if (candidate.orientations < best.orientations) best = candidate;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

struct SceneSignature {
  std::size_t vertex_count = 0;
  /// Half-open index ranges of each obstacle's corners within the point sequence.
  std::vector<std::pair<std::size_t, std::size_t>> obstacle_ranges;
  OrderType order_type;

  std::size_t point_count() const noexcept { return order_type.n; }

  friend bool operator==(const SceneSignature&, const SceneSignature&) = default;
};

inline SceneSignature scene_signature(const Scene& scene) {
  require_valid(scene);
  SceneSignature sig;
  sig.vertex_count = scene.points.size();
  std::size_t at = scene.points.size();
  for (const auto& o : scene.obstacles) {
    sig.obstacle_ranges.emplace_back(at, at + o.size());
    at += o.size();
  }
  sig.order_type = chirotope(scene.all_points());
  return sig;
}

/// Scene scaled by factor, then `steps` single-coordinate jitters of up to
/// +-magnitude, each kept only if the signature is unchanged.
inline Scene perturb_preserving_order_type(const Scene& scene, Rng& rng, std::int64_t scale = 1000,
                                           std::size_t steps = 1, std::int64_t magnitude = 1) {
  Scene out = scene;
  for (auto& p : out.points) p = {p.x * scale, p.y * scale};
  for (auto& o : out.obstacles)
    for (auto& p : o.vertices) p = {p.x * scale, p.y * scale};
  const SceneSignature target = scene_signature(out);
  const std::size_t total = out.points.size() + out.side_count();
  if (total == 0) return out;
  for (std::size_t s = 0; s < steps; ++s) {
    auto idx = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(total) - 1));
    Point* target_point = nullptr;
    if (idx < out.points.size()) {
      target_point = &out.points[idx];
    } else {
      idx -= out.points.size();
      for (auto& o : out.obstacles) {
        if (idx < o.size()) {
          target_point = &o.vertices[idx];
          break;
        }
        idx -= o.size();
      }
    }
    std::int64_t delta = rng.uniform(1, magnitude);
    if (rng.coin()) delta = -delta;
    const Point saved = *target_point;
    if (rng.coin()) target_point->x += delta;
    else target_point->y += delta;
    // Equal order type of the full sequence already implies a valid scene.
    bool keep = false;
    try {
      keep = chirotope(out.all_points()) == target.order_type;
    } catch (const CollinearTriple&) {
      keep = false;
    }
    if (!keep) *target_point = saved;
  }
  return out;
}

}  // namespace obsnum
