#pragma once

// Faces of a straight-line drawing. Edges may cross; crossing points become
// subdivision nodes. The subdivision is stored as half-edges with the face on
// the left, boundary walks are grouped into faces (holes included), and every
// face carries an exact rational interior point.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "obsnum/geometry.hpp"
#include "obsnum/graph.hpp"
#include "obsnum/visibility.hpp"

namespace obsnum {

struct Drawing {
  std::vector<Point> points;
  std::vector<Edge> edges;

  static Drawing of(const std::vector<Point>& points, const Graph& g) {
    if (g.order() != points.size()) throw std::invalid_argument("Drawing: graph/point count mismatch");
    return {points, g.edges()};
  }
};

struct HalfEdge {
  std::size_t origin = 0;
  std::size_t target = 0;
  std::size_t twin = 0;
  std::size_t next = 0;
  std::size_t cycle = 0;
  std::size_t edge = 0;  // index into Drawing::edges
};

struct ArrangementNode {
  RationalPoint at;
  std::optional<std::size_t> vertex;  // drawing vertex, if not a crossing
  std::vector<std::size_t> outgoing;  // half-edges sorted counterclockwise
};

/// One closed boundary walk (face on the left).
struct BoundaryCycle {
  std::vector<std::size_t> half_edges;
  Rational twice_area;  // > 0 exactly for the outer walk of a bounded face
  std::size_t component = 0;
  std::size_t face = 0;
};

struct Face {
  bool unbounded = false;
  std::optional<std::size_t> outer;           // outer boundary walk (bounded faces)
  std::vector<std::size_t> holes;             // walks of components nested inside
  std::vector<std::size_t> isolated_vertices; // node ids of edgeless vertices inside
  RationalPoint representative;
};

class FaceSet {
 public:
  std::vector<ArrangementNode> nodes;
  std::vector<HalfEdge> half_edges;
  std::vector<BoundaryCycle> cycles;
  std::vector<Face> faces;  // faces[0] is the unbounded face
  std::vector<std::size_t> node_component;
  std::size_t component_count = 0;
  /// Per drawing edge: nodes along it in order from first to second endpoint.
  std::vector<std::vector<std::size_t>> edge_nodes;
  /// Per drawing edge and piece index: the forward half-edge.
  std::vector<std::vector<std::size_t>> edge_pieces;
  std::map<RationalPoint, std::size_t> node_at;
  std::vector<Point> points;
  std::vector<Edge> edges;

  std::size_t node_count() const noexcept { return nodes.size(); }
  std::size_t piece_count() const noexcept { return half_edges.size() / 2; }
  std::size_t face_count() const noexcept { return faces.size(); }
  std::size_t unbounded_face() const noexcept { return 0; }

  std::size_t face_of(std::size_t half_edge) const { return cycles[half_edges[half_edge].cycle].face; }

  std::vector<RationalPoint> ring(std::size_t cycle) const {
    std::vector<RationalPoint> out;
    out.reserve(cycles[cycle].half_edges.size());
    for (auto h : cycles[cycle].half_edges) out.push_back(nodes[half_edges[h].origin].at);
    return out;
  }

  RationalPoint direction(std::size_t h) const {
    return nodes[half_edges[h].target].at - nodes[half_edges[h].origin].at;
  }

  /// Face entered when leaving `node` in direction `dir` (dir not along any piece).
  std::size_t face_in_direction(std::size_t node, const RationalPoint& dir) const {
    const auto& out = nodes[node].outgoing;
    if (out.empty()) return isolated_face.at(node);
    // the sector is bounded clockwise by the last half-edge before dir
    std::size_t before = out.size() - 1;
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (!counterclockwise_less(direction(out[i]), dir)) break;
      before = i;
    }
    return face_of(out[before]);
  }

  /// Is q on a node or a piece of the drawing?
  bool on_drawing(const RationalPoint& q) const {
    if (node_at.count(q)) return true;
    for (std::size_t h = 0; h < half_edges.size(); h += 2) {
      if (on_segment(nodes[half_edges[h].origin].at, nodes[half_edges[h].target].at, q)) return true;
    }
    return false;
  }

  /// Face containing q by winding numbers of the boundary walks. q must not lie
  /// on the drawing.
  std::size_t locate(const RationalPoint& q) const {
    for (std::size_t f = 1; f < faces.size(); ++f) {
      if (winding(*faces[f].outer, q) == 0) continue;
      bool in_hole = false;
      for (auto hole : faces[f].holes) {
        if (winding(hole, q) != 0) {
          in_hole = true;
          break;
        }
      }
      if (!in_hole) return f;
    }
    return 0;
  }

  int winding(std::size_t cycle, const RationalPoint& q) const {
    int w = 0;
    for (auto h : cycles[cycle].half_edges) {
      const auto& a = nodes[half_edges[h].origin].at;
      const auto& b = nodes[half_edges[h].target].at;
      if (a.y <= q.y) {
        if (b.y > q.y && orient(a, b, q) > 0) ++w;
      } else {
        if (b.y <= q.y && orient(a, b, q) < 0) --w;
      }
    }
    return w;
  }

  /// Number of boundary half-edges of each face (a piece with the same face on
  /// both sides counts twice).
  std::vector<std::size_t> complexities() const {
    std::vector<std::size_t> out(faces.size(), 0);
    for (const auto& c : cycles) out[c.face] += c.half_edges.size();
    return out;
  }

  /// Face containing each edgeless node.
  std::map<std::size_t, std::size_t> isolated_face;
};

namespace detail {

inline std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace detail

inline void require_drawing_valid(const Drawing& d) {
  const auto gp = check_general_position(d.points);
  if (!gp.ok) {
    std::vector<std::string> issues;
    for (const auto& [i, j] : gp.duplicates)
      issues.push_back("duplicate vertices " + std::to_string(i + 1) + ", " + std::to_string(j + 1));
    for (const auto& t : gp.collinear)
      issues.push_back("collinear vertices " + std::to_string(t[0] + 1) + ", " +
                       std::to_string(t[1] + 1) + ", " + std::to_string(t[2] + 1));
    throw InvalidScene(std::move(issues));
  }
  for (const auto& [u, v] : d.edges) {
    if (u >= d.points.size() || v >= d.points.size() || u == v)
      throw InvalidScene("drawing edge out of range");
  }
}

inline FaceSet build_arrangement(const Drawing& drawing) {
  require_drawing_valid(drawing);
  FaceSet fs;
  fs.points = drawing.points;
  fs.edges = drawing.edges;
  const auto& pts = drawing.points;
  const auto& edges = drawing.edges;

  auto add_node = [&fs](const RationalPoint& at, std::optional<std::size_t> vertex) {
    auto [it, inserted] = fs.node_at.try_emplace(at, fs.nodes.size());
    if (inserted) fs.nodes.push_back({at, vertex, {}});
    return it->second;
  };
  for (std::size_t v = 0; v < pts.size(); ++v) add_node(to_rational(pts[v]), v);

  // (parameter along edge, node) stops for every edge
  std::vector<std::vector<std::pair<Rational, std::size_t>>> stops(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    stops[e].push_back({Rational(0), edges[e].first});
    stops[e].push_back({Rational(1), edges[e].second});
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const Point& a = pts[edges[e].first];
    const Point& b = pts[edges[e].second];
    for (std::size_t f = e + 1; f < edges.size(); ++f) {
      const Point& c = pts[edges[f].first];
      const Point& d = pts[edges[f].second];
      if (!segments_cross_properly(a, b, c, d)) continue;
      const Rational t = crossing_parameter(a, b, c, d);
      const Rational s = crossing_parameter(c, d, a, b);
      const std::size_t node = add_node(point_at(a, b, t), std::nullopt);
      stops[e].push_back({t, node});
      stops[f].push_back({s, node});
    }
  }

  fs.edge_nodes.resize(edges.size());
  fs.edge_pieces.resize(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto& st = stops[e];
    std::sort(st.begin(), st.end());
    st.erase(std::unique(st.begin(), st.end(),
                         [](const auto& x, const auto& y) { return x.second == y.second; }),
             st.end());
    for (const auto& [t, node] : st) fs.edge_nodes[e].push_back(node);
    for (std::size_t i = 0; i + 1 < st.size(); ++i) {
      const std::size_t h = fs.half_edges.size();
      HalfEdge fwd;
      fwd.origin = st[i].second;
      fwd.target = st[i + 1].second;
      fwd.twin = h + 1;
      fwd.edge = e;
      HalfEdge bwd;
      bwd.origin = st[i + 1].second;
      bwd.target = st[i].second;
      bwd.twin = h;
      bwd.edge = e;
      fs.half_edges.push_back(fwd);
      fs.half_edges.push_back(bwd);
      fs.nodes[fwd.origin].outgoing.push_back(h);
      fs.nodes[bwd.origin].outgoing.push_back(h + 1);
      fs.edge_pieces[e].push_back(h);
    }
  }

  for (auto& node : fs.nodes) {
    std::sort(node.outgoing.begin(), node.outgoing.end(), [&fs](std::size_t x, std::size_t y) {
      return counterclockwise_less(fs.direction(x), fs.direction(y));
    });
  }

  // next(h): at h's target, the outgoing half-edge just clockwise of twin(h)
  for (std::size_t node = 0; node < fs.nodes.size(); ++node) {
    const auto& out = fs.nodes[node].outgoing;
    const std::size_t deg = out.size();
    for (std::size_t i = 0; i < deg; ++i) {
      const std::size_t incoming = fs.half_edges[out[i]].twin;
      fs.half_edges[incoming].next = out[(i + deg - 1) % deg];
    }
  }

  // boundary walks
  std::vector<bool> seen(fs.half_edges.size(), false);
  for (std::size_t h0 = 0; h0 < fs.half_edges.size(); ++h0) {
    if (seen[h0]) continue;
    BoundaryCycle cycle;
    std::size_t h = h0;
    do {
      seen[h] = true;
      fs.half_edges[h].cycle = fs.cycles.size();
      cycle.half_edges.push_back(h);
      h = fs.half_edges[h].next;
    } while (h != h0);
    fs.cycles.push_back(std::move(cycle));
    fs.cycles.back().twice_area = twice_signed_area(fs.ring(fs.cycles.size() - 1));
  }

  // connected components
  std::vector<std::size_t> parent(fs.nodes.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& he : fs.half_edges) {
    const auto ra = detail::find_root(parent, he.origin);
    const auto rb = detail::find_root(parent, he.target);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  fs.node_component.assign(fs.nodes.size(), 0);
  std::map<std::size_t, std::size_t> root_to_component;
  for (std::size_t v = 0; v < fs.nodes.size(); ++v) {
    const auto r = detail::find_root(parent, v);
    auto [it, inserted] = root_to_component.try_emplace(r, root_to_component.size());
    fs.node_component[v] = it->second;
  }
  fs.component_count = root_to_component.size();

  // faces: the unbounded face first, then one per positively oriented walk
  fs.faces.push_back(Face{true, std::nullopt, {}, {}, {}});
  std::vector<std::optional<std::size_t>> component_outer(fs.component_count);
  std::vector<std::size_t> component_node(fs.component_count, 0);
  for (std::size_t v = fs.nodes.size(); v-- > 0;) component_node[fs.node_component[v]] = v;
  for (std::size_t c = 0; c < fs.cycles.size(); ++c) {
    auto& cyc = fs.cycles[c];
    cyc.component = fs.node_component[fs.half_edges[cyc.half_edges.front()].origin];
    if (cyc.twice_area > 0) {
      cyc.face = fs.faces.size();
      fs.faces.push_back(Face{false, c, {}, {}, {}});
    } else {
      if (component_outer[cyc.component])
        throw std::logic_error("build_arrangement: component with two outer walks");
      component_outer[cyc.component] = c;
    }
  }

  // place every component's outer boundary in the innermost enclosing face
  for (std::size_t comp = 0; comp < fs.component_count; ++comp) {
    const RationalPoint probe = fs.nodes[component_node[comp]].at;
    std::size_t best_face = 0;
    std::optional<Rational> best_area;
    for (std::size_t f = 1; f < fs.faces.size(); ++f) {
      const auto outer = *fs.faces[f].outer;
      if (fs.cycles[outer].component == comp) continue;
      if (fs.winding(outer, probe) == 0) continue;
      if (!best_area || fs.cycles[outer].twice_area < *best_area) {
        best_area = fs.cycles[outer].twice_area;
        best_face = f;
      }
    }
    if (component_outer[comp]) {
      fs.cycles[*component_outer[comp]].face = best_face;
      fs.faces[best_face].holes.push_back(*component_outer[comp]);
    } else {
      const std::size_t node = component_node[comp];
      fs.faces[best_face].isolated_vertices.push_back(node);
      fs.isolated_face[node] = best_face;
    }
  }

  // representative points: step left off a boundary piece, half-way to the
  // first obstruction along the normal
  for (std::size_t f = 0; f < fs.faces.size(); ++f) {
    auto& face = fs.faces[f];
    std::optional<std::size_t> h;
    if (face.outer) {
      h = fs.cycles[*face.outer].half_edges.front();
    } else if (!face.holes.empty()) {
      h = fs.cycles[face.holes.front()].half_edges.front();
    }
    if (!h) {
      // no pieces at all: any point left of every vertex
      Rational min_x = 0;
      for (std::size_t i = 0; i < fs.nodes.size(); ++i)
        if (i == 0 || fs.nodes[i].at.x < min_x) min_x = fs.nodes[i].at.x;
      face.representative = {min_x - 1, Rational(0)};
      continue;
    }
    const auto& a = fs.nodes[fs.half_edges[*h].origin].at;
    const auto& b = fs.nodes[fs.half_edges[*h].target].at;
    const RationalPoint mid{(a.x + b.x) / 2, (a.y + b.y) / 2};
    const RationalPoint normal{-(b.y - a.y), b.x - a.x};
    std::optional<Rational> nearest;
    auto consider = [&nearest](const Rational& s) {
      if (s > 0 && (!nearest || s < *nearest)) nearest = s;
    };
    // The ray stays in this face until its first hit, which therefore lies
    // on this face's own boundary walks.
    std::vector<std::size_t> boundary;
    if (face.outer) boundary = fs.cycles[*face.outer].half_edges;
    for (auto c : face.holes)
      boundary.insert(boundary.end(), fs.cycles[c].half_edges.begin(), fs.cycles[c].half_edges.end());
    for (auto& b : boundary) b &= ~std::size_t{1};
    std::sort(boundary.begin(), boundary.end());
    boundary.erase(std::unique(boundary.begin(), boundary.end()), boundary.end());
    for (const std::size_t k : boundary) {
      if (k == (*h & ~std::size_t{1})) continue;
      const auto& p = fs.nodes[fs.half_edges[k].origin].at;
      const auto& q = fs.nodes[fs.half_edges[k].target].at;
      const RationalPoint seg = q - p;
      const Rational den = cross(normal, seg);
      if (den == 0) {
        // parallel: only the endpoints can be hit first
        for (const auto* end : {&p, &q}) {
          const RationalPoint off = *end - mid;
          if (cross(off, normal) == 0) consider(dot(off, normal) / dot(normal, normal));
        }
        continue;
      }
      const RationalPoint off = p - mid;
      const Rational s = cross(off, seg) / den;
      const Rational u = cross(off, normal) / den;
      if (u >= 0 && u <= 1) consider(s);
    }
    for (const auto node : face.isolated_vertices) {
      const RationalPoint off = fs.nodes[node].at - mid;
      if (cross(off, normal) == 0) consider(dot(off, normal) / dot(normal, normal));
    }
    const Rational step = nearest ? *nearest / 2 : Rational(1);
    face.representative = {mid.x + step * normal.x, mid.y + step * normal.y};
  }
  return fs;
}

struct ComplexityReport {
  std::vector<std::size_t> per_face;
  std::size_t maximum = 0;
};

inline ComplexityReport face_complexity(const FaceSet& fs) {
  ComplexityReport r;
  r.per_face = fs.complexities();
  for (auto c : r.per_face) r.maximum = std::max(r.maximum, c);
  return r;
}

/// V - E + F - (1 + C): zero for every plane subdivision.
inline long long euler_defect(const FaceSet& fs) {
  return static_cast<long long>(fs.node_count()) - static_cast<long long>(fs.piece_count()) +
         static_cast<long long>(fs.face_count()) - 1 - static_cast<long long>(fs.component_count);
}

/// Face versus non-edge incidence: which faces each non-edge's open segment
/// passes through.
struct CoverInstance {
  std::vector<Edge> nonedges;
  /// faces[f]: sorted indices into nonedges
  std::vector<std::vector<std::size_t>> incidence;

  std::size_t face_count() const noexcept { return incidence.size(); }
};

/// Faces crossed by the open segment between drawing vertices u and v (not an edge).
inline std::vector<std::size_t> faces_along(const FaceSet& fs, std::size_t u, std::size_t v) {
  const Point& pu = fs.points[u];
  const Point& pv = fs.points[v];
  struct Cut {
    Rational t;
    std::size_t edge;
    Rational along;  // parameter on the drawn edge
  };
  std::vector<Cut> cuts;
  for (std::size_t e = 0; e < fs.edges.size(); ++e) {
    const auto [a, b] = fs.edges[e];
    if (a == u || a == v || b == u || b == v) continue;
    const Point& pa = fs.points[a];
    const Point& pb = fs.points[b];
    if (!segments_cross_properly(pu, pv, pa, pb)) continue;
    cuts.push_back({crossing_parameter(pu, pv, pa, pb), e, crossing_parameter(pa, pb, pu, pv)});
  }
  std::sort(cuts.begin(), cuts.end(), [](const Cut& x, const Cut& y) { return x.t < y.t; });

  const RationalPoint dir = to_rational(pv - pu);
  std::vector<std::size_t> faces{fs.face_in_direction(u, dir)};
  for (std::size_t i = 0; i < cuts.size();) {
    std::size_t j = i;
    while (j < cuts.size() && cuts[j].t == cuts[i].t) ++j;
    const RationalPoint at = point_at(pu, pv, cuts[i].t);
    auto node = fs.node_at.find(at);
    if (node != fs.node_at.end()) {
      faces.push_back(fs.face_in_direction(node->second, dir));
    } else {
      // interior of one piece of the crossed edge
      const auto& cut = cuts[i];
      const auto& stops = fs.edge_nodes[cut.edge];
      const Point& pa = fs.points[fs.edges[cut.edge].first];
      const Point& pb = fs.points[fs.edges[cut.edge].second];
      std::size_t piece = 0;
      for (std::size_t k = 1; k + 1 < stops.size(); ++k) {
        // parameter of stop k along the edge
        const auto& s = fs.nodes[stops[k]].at;
        const Rational sk = (pb.x != pa.x) ? (s.x - Rational(pa.x)) / Rational(pb.x - pa.x)
                                           : (s.y - Rational(pa.y)) / Rational(pb.y - pa.y);
        if (sk < cut.along) piece = k;
      }
      const std::size_t h = fs.edge_pieces[cut.edge][piece];
      const int side = sign(cross(fs.direction(h), dir));
      faces.push_back(side > 0 ? fs.face_of(h) : fs.face_of(fs.half_edges[h].twin));
    }
    i = j;
  }
  std::sort(faces.begin(), faces.end());
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
  return faces;
}

inline CoverInstance face_nonedge_incidence(const FaceSet& fs, const Graph& g) {
  if (g.order() != fs.points.size()) throw std::invalid_argument("incidence: graph/drawing size mismatch");
  CoverInstance inst;
  inst.nonedges = g.non_edges();
  inst.incidence.assign(fs.face_count(), {});
  for (std::size_t k = 0; k < inst.nonedges.size(); ++k) {
    const auto [u, v] = inst.nonedges[k];
    for (auto f : faces_along(fs, u, v)) inst.incidence[f].push_back(k);
  }
  return inst;
}

struct ObstacleFaceCheck {
  bool ok = true;
  std::vector<std::optional<std::size_t>> face_of_obstacle;
  std::optional<std::size_t> offending;  // first obstacle not inside a single face
};

/// Each obstacle against the drawing of the scene's own visibility graph.
inline ObstacleFaceCheck obstacle_face_check(const Scene& scene, const FaceSet& fs) {
  ObstacleFaceCheck check;
  for (std::size_t o = 0; o < scene.obstacles.size(); ++o) {
    const Polygon& poly = scene.obstacles[o];
    bool inside_one_face = true;
    for (const auto& p : fs.points)
      if (locate(poly, p) != Location::outside) inside_one_face = false;
    for (std::size_t e = 0; e < fs.edges.size() && inside_one_face; ++e) {
      const Point& a = fs.points[fs.edges[e].first];
      const Point& b = fs.points[fs.edges[e].second];
      for (std::size_t i = 0; i < poly.size() && inside_one_face; ++i)
        if (closed_segments_intersect(a, b, poly[i], poly.next(i))) inside_one_face = false;
    }
    if (inside_one_face && fs.on_drawing(to_rational(poly[0]))) inside_one_face = false;
    if (!inside_one_face) {
      check.face_of_obstacle.push_back(std::nullopt);
      if (!check.offending) check.offending = o;
      check.ok = false;
      continue;
    }
    check.face_of_obstacle.push_back(fs.locate(to_rational(poly[0])));
  }
  return check;
}

inline ObstacleFaceCheck obstacle_face_check(const Scene& scene) {
  const Graph vis = visibility_graph(scene);
  return obstacle_face_check(scene, build_arrangement(Drawing::of(scene.points, vis)));
}

}  // namespace obsnum
