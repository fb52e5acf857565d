#pragma once

// Independent reference computations for tests. Nothing here calls the
// half-edge arrangement; faces come from a vertical-slab decomposition whose
// cells are merged across slab walls with a union-find.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "obsnum/arrangement.hpp"
#include "obsnum/geometry.hpp"
#include "obsnum/graph.hpp"
#include "obsnum/set_cover.hpp"

namespace oracle {

using obsnum::Edge;
using obsnum::Integer;
using obsnum::Point;
using obsnum::Rational;
using obsnum::RationalPoint;

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

inline int sgn(const Integer& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

inline int turn(const Point& a, const Point& b, const Point& c) {
  return sgn((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x));
}

/// Parameter along [a,b] where it properly crosses [c,d], if it does.
inline std::optional<Rational> proper_crossing(const Point& a, const Point& b, const Point& c, const Point& d) {
  if (turn(a, b, c) * turn(a, b, d) >= 0 || turn(c, d, a) * turn(c, d, b) >= 0) return std::nullopt;
  const Integer den = (b.x - a.x) * (d.y - c.y) - (b.y - a.y) * (d.x - c.x);
  const Integer num = (c.x - a.x) * (d.y - c.y) - (c.y - a.y) * (d.x - c.x);
  Rational t(num);
  t /= Rational(den);
  return t;
}

inline RationalPoint along(const Point& a, const Point& b, const Rational& t) {
  return {Rational(a.x) + t * Rational(b.x - a.x), Rational(a.y) + t * Rational(b.y - a.y)};
}

struct Piece {
  RationalPoint a, b;  // a < b lexicographically
  std::size_t edge;
};

class SlabFaces {
 public:
  SlabFaces(const std::vector<Point>& points, const std::vector<Edge>& edges) : points_(points), edges_(edges) {
    std::set<RationalPoint> nodes;
    for (const auto& p : points) nodes.insert(obsnum::to_rational(p));
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const Point& a = points[edges[e].first];
      const Point& b = points[edges[e].second];
      std::vector<Rational> ts{Rational(0), Rational(1)};
      for (std::size_t f = 0; f < edges.size(); ++f) {
        if (f == e) continue;
        if (auto t = proper_crossing(a, b, points[edges[f].first], points[edges[f].second])) ts.push_back(*t);
      }
      std::sort(ts.begin(), ts.end());
      ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
      for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        RationalPoint p = along(a, b, ts[i]), q = along(a, b, ts[i + 1]);
        nodes.insert(p);
        nodes.insert(q);
        if (q < p) std::swap(p, q);
        pieces_.push_back({p, q, e});
      }
    }
    node_count_ = nodes.size();
    for (const auto& n : nodes) xs_.push_back(n.x);
    xs_.erase(std::unique(xs_.begin(), xs_.end()), xs_.end());

    // slab s lies between walls s-1 and s; slab 0 and slab xs_.size() are unbounded
    const std::size_t slabs = xs_.size() + 1;
    slab_pieces_.resize(slabs);
    for (std::size_t s = 1; s + 1 < slabs; ++s) {
      const Rational mid = (xs_[s - 1] + xs_[s]) / 2;
      auto& list = slab_pieces_[s];
      for (std::size_t k = 0; k < pieces_.size(); ++k)
        if (pieces_[k].a.x <= xs_[s - 1] && pieces_[k].b.x >= xs_[s]) list.push_back(k);
      std::sort(list.begin(), list.end(), [&](std::size_t u, std::size_t v) { return y_at(u, mid) < y_at(v, mid); });
    }
    cell_base_.resize(slabs + 1, 0);
    for (std::size_t s = 0; s < slabs; ++s) cell_base_[s + 1] = cell_base_[s] + slab_pieces_[s].size() + 1;
    UnionFind uf(cell_base_.back());
    for (std::size_t w = 0; w < xs_.size(); ++w) {
      for (const Rational& y : gap_samples(w)) uf.unite(cell_at(w, xs_[w], y), cell_at(w + 1, xs_[w], y));
    }
    std::map<std::size_t, std::size_t> root_to_face;
    cell_face_.resize(cell_base_.back());
    // the leftmost cell is the unbounded face, numbered 0
    root_to_face[uf.find(0)] = 0;
    for (std::size_t c = 0; c < cell_face_.size(); ++c) {
      auto [it, fresh] = root_to_face.try_emplace(uf.find(c), root_to_face.size());
      cell_face_[c] = it->second;
    }
    face_count_ = root_to_face.size();

    side_counts_.assign(face_count_, 0);
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
      const Piece& p = pieces_[k];
      if (p.a.x == p.b.x) {
        const RationalPoint m{p.a.x, (p.a.y + p.b.y) / 2};
        const std::size_t w = wall_index(p.a.x);
        ++side_counts_[cell_face_[cell_at(w, m.x, m.y)]];
        ++side_counts_[cell_face_[cell_at(w + 1, m.x, m.y)]];
        continue;
      }
      const std::size_t s = wall_index(p.a.x) + 1;
      const auto& list = slab_pieces_[s];
      const std::size_t j = static_cast<std::size_t>(std::find(list.begin(), list.end(), k) - list.begin());
      ++side_counts_[cell_face_[cell_base_[s] + j]];
      ++side_counts_[cell_face_[cell_base_[s] + j + 1]];
    }
  }

  std::size_t face_count() const { return face_count_; }
  std::size_t node_count() const { return node_count_; }
  std::size_t piece_count() const { return pieces_.size(); }
  const std::vector<std::size_t>& side_counts() const { return side_counts_; }

  std::size_t component_count() const {
    UnionFind uf(points_.size());
    for (const auto& [u, v] : edges_) uf.unite(u, v);
    for (std::size_t e = 0; e < edges_.size(); ++e)
      for (std::size_t f = e + 1; f < edges_.size(); ++f)
        if (proper_crossing(points_[edges_[e].first], points_[edges_[e].second], points_[edges_[f].first],
                            points_[edges_[f].second]))
          uf.unite(edges_[e].first, edges_[f].first);
    std::set<std::size_t> roots;
    for (std::size_t v = 0; v < points_.size(); ++v) roots.insert(uf.find(v));
    return roots.size();
  }

  /// Face containing q, which must not lie on the drawing.
  std::size_t locate(const RationalPoint& q) const {
    const auto it = std::lower_bound(xs_.begin(), xs_.end(), q.x);
    const std::size_t s = static_cast<std::size_t>(it - xs_.begin());
    return cell_face_[cell_at(s, q.x, q.y)];
  }

  /// One sample point strictly inside some cell of every face.
  std::vector<RationalPoint> face_samples() const {
    std::vector<std::optional<RationalPoint>> out(face_count_);
    for (std::size_t s = 0; s < slab_pieces_.size(); ++s) {
      Rational x;
      if (xs_.empty()) x = 0;
      else if (s == 0) x = xs_.front() - 1;
      else if (s == xs_.size()) x = xs_.back() + 1;
      else x = (xs_[s - 1] + xs_[s]) / 2;
      const auto& list = slab_pieces_[s];
      for (std::size_t j = 0; j <= list.size(); ++j) {
        const std::size_t f = cell_face_[cell_base_[s] + j];
        if (out[f]) continue;
        Rational y;
        if (list.empty()) y = 0;
        else if (j == 0) y = y_at(list[0], x) - 1;
        else if (j == list.size()) y = y_at(list.back(), x) + 1;
        else y = (y_at(list[j - 1], x) + y_at(list[j], x)) / 2;
        out[f] = RationalPoint{x, y};
      }
    }
    std::vector<RationalPoint> pts;
    for (auto& p : out) pts.push_back(*p);
    return pts;
  }

  /// Faces met by the open segment between vertices u and v (not an edge).
  std::set<std::size_t> faces_along(std::size_t u, std::size_t v) const {
    const Point& a = points_[u];
    const Point& b = points_[v];
    std::vector<Rational> ts{Rational(0), Rational(1)};
    for (const auto& [c, d] : edges_)
      if (auto t = proper_crossing(a, b, points_[c], points_[d])) ts.push_back(*t);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    std::set<std::size_t> out;
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) out.insert(locate(along(a, b, (ts[i] + ts[i + 1]) / 2)));
    return out;
  }

 private:
  Rational y_at(std::size_t k, const Rational& x) const {
    const Piece& p = pieces_[k];
    return p.a.y + (x - p.a.x) * (p.b.y - p.a.y) / (p.b.x - p.a.x);
  }

  std::size_t wall_index(const Rational& x) const {
    return static_cast<std::size_t>(std::lower_bound(xs_.begin(), xs_.end(), x) - xs_.begin());
  }

  /// Cell of slab s holding (x, y), with x inside the slab or on one of its walls.
  std::size_t cell_at(std::size_t s, const Rational& x, const Rational& y) const {
    std::size_t below = 0;
    for (auto k : slab_pieces_[s]) below += y_at(k, x) < y;
    return cell_base_[s] + below;
  }

  /// A y inside each open gap of wall w left free by the drawing.
  std::vector<Rational> gap_samples(std::size_t w) const {
    const Rational& X = xs_[w];
    std::vector<Rational> blocked;
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
      const Piece& p = pieces_[k];
      if (p.a.x == X) blocked.push_back(p.a.y);
      if (p.b.x == X) blocked.push_back(p.b.y);
      if (p.a.x < X && X < p.b.x) blocked.push_back(y_at(k, X));
    }
    for (const auto& pt : points_)
      if (Rational(pt.x) == X) blocked.push_back(Rational(pt.y));
    std::sort(blocked.begin(), blocked.end());
    blocked.erase(std::unique(blocked.begin(), blocked.end()), blocked.end());
    auto covered = [&](const Rational& lo, const Rational& hi) {
      for (const auto& p : pieces_)
        if (p.a.x == X && p.b.x == X && std::min(p.a.y, p.b.y) <= lo && hi <= std::max(p.a.y, p.b.y)) return true;
      return false;
    };
    std::vector<Rational> out;
    out.push_back(blocked.front() - 1);
    out.push_back(blocked.back() + 1);
    for (std::size_t i = 0; i + 1 < blocked.size(); ++i)
      if (!covered(blocked[i], blocked[i + 1])) out.push_back((blocked[i] + blocked[i + 1]) / 2);
    return out;
  }

  std::vector<Point> points_;
  std::vector<Edge> edges_;
  std::vector<Piece> pieces_;
  std::vector<Rational> xs_;
  std::vector<std::vector<std::size_t>> slab_pieces_;
  std::vector<std::size_t> cell_base_;
  std::vector<std::size_t> cell_face_;
  std::vector<std::size_t> side_counts_;
  std::size_t node_count_ = 0;
  std::size_t face_count_ = 0;
};

/// Result of comparing a FaceSet against the slab oracle; empty string when they agree.
inline std::string compare_with_slabs(const obsnum::FaceSet& fs, const obsnum::Graph& g) {
  const SlabFaces ref(fs.points, fs.edges);
  if (ref.face_count() != fs.face_count())
    return "face count " + std::to_string(fs.face_count()) + " vs " + std::to_string(ref.face_count());
  if (ref.node_count() != fs.node_count()) return "node count";
  if (ref.piece_count() != fs.piece_count()) return "piece count";
  if (ref.component_count() != fs.component_count) return "component count";
  // oracle face -> library face, via sample points
  std::vector<std::size_t> to_lib;
  std::set<std::size_t> hit;
  for (const auto& q : ref.face_samples()) {
    to_lib.push_back(fs.locate(q));
    hit.insert(to_lib.back());
  }
  if (hit.size() != fs.face_count()) return "face correspondence is not a bijection";
  if (to_lib[0] != 0) return "unbounded face mismatch";
  const auto lib_cx = fs.complexities();
  for (std::size_t f = 0; f < to_lib.size(); ++f)
    if (lib_cx[to_lib[f]] != ref.side_counts()[f]) return "complexity of face " + std::to_string(to_lib[f]);
  for (std::size_t f = 0; f < fs.face_count(); ++f)
    if (ref.locate(fs.faces[f].representative) >= to_lib.size() || to_lib[ref.locate(fs.faces[f].representative)] != f)
      return "representative of face " + std::to_string(f);
  const auto inst = obsnum::face_nonedge_incidence(fs, g);
  for (std::size_t k = 0; k < inst.nonedges.size(); ++k) {
    std::set<std::size_t> expect;
    for (auto f : ref.faces_along(inst.nonedges[k].first, inst.nonedges[k].second)) expect.insert(to_lib[f]);
    std::set<std::size_t> got;
    for (std::size_t f = 0; f < inst.face_count(); ++f)
      if (std::find(inst.incidence[f].begin(), inst.incidence[f].end(), k) != inst.incidence[f].end()) got.insert(f);
    if (expect != got) return "incidence of non-edge " + std::to_string(k);
  }
  return {};
}

/// Minimum cover by enumerating subsets in order of size, then lexicographically.
inline std::optional<std::vector<std::size_t>> brute_force_cover(const std::vector<obsnum::Bitset>& sets,
                                                                 std::size_t universe) {
  const std::size_t m = sets.size();
  for (std::size_t k = 0; k <= m; ++k) {
    std::vector<std::size_t> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    for (;;) {
      obsnum::Bitset u(universe);
      for (auto i : pick) u |= sets[i];
      if (u.count() == universe) return pick;
      // next k-combination in lexicographic order
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == m - k + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return std::nullopt;
}

/// 2 h n log2(2n) < C(n,2), in floating point.
inline bool convex_bound_float(double n, double h) { return 2 * h * n * std::log2(2 * n) < n * (n - 1) / 2; }

inline std::size_t convex_threshold_float(double h) {
  std::size_t n = 2;
  while (!convex_bound_float(static_cast<double>(n), h)) ++n;
  return n;
}

}  // namespace oracle
