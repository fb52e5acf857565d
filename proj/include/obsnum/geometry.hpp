#pragma once

// Exact planar primitives over arbitrary-precision integers (and rationals
// where intersection points are needed). No floating point is used here.

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace obsnum {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised when an input violates a scene invariant. Carries every violation.
class InvalidScene : public std::runtime_error {
 public:
  explicit InvalidScene(std::vector<std::string> issues)
      : std::runtime_error(join(issues)), issues_(std::move(issues)) {}
  explicit InvalidScene(const std::string& issue)
      : InvalidScene(std::vector<std::string>{issue}) {}

  const std::vector<std::string>& issues() const noexcept { return issues_; }

 private:
  static std::string join(const std::vector<std::string>& issues) {
    std::string out;
    for (const auto& s : issues) {
      if (!out.empty()) out += "; ";
      out += s;
    }
    return out.empty() ? std::string("invalid scene") : out;
  }

  std::vector<std::string> issues_;
};

template <typename T>
struct BasicPoint {
  T x{};
  T y{};

  friend bool operator==(const BasicPoint&, const BasicPoint&) = default;
  friend bool operator<(const BasicPoint& a, const BasicPoint& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  }
  friend BasicPoint operator-(const BasicPoint& a, const BasicPoint& b) {
    return {a.x - b.x, a.y - b.y};
  }
  friend BasicPoint operator+(const BasicPoint& a, const BasicPoint& b) {
    return {a.x + b.x, a.y + b.y};
  }
};

using Point = BasicPoint<Integer>;
using RationalPoint = BasicPoint<Rational>;

inline RationalPoint to_rational(const Point& p) { return {Rational(p.x), Rational(p.y)}; }

template <typename T>
int sign(const T& v) {
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

template <typename T>
T cross(const BasicPoint<T>& u, const BasicPoint<T>& v) {
  return u.x * v.y - u.y * v.x;
}

template <typename T>
T dot(const BasicPoint<T>& u, const BasicPoint<T>& v) {
  return u.x * v.x + u.y * v.y;
}

/// Sign of (b-a) x (c-a): +1 counterclockwise, 0 collinear, -1 clockwise.
template <typename T>
int orient(const BasicPoint<T>& a, const BasicPoint<T>& b, const BasicPoint<T>& c) {
  return sign(cross(b - a, c - a));
}

/// Clockwise angular position of a nonzero direction, measured from +y.
/// Compares exactly: half-plane first, then the cross product.
template <typename T>
bool clockwise_from_up_less(const BasicPoint<T>& u, const BasicPoint<T>& v) {
  // half 0: directions in [up, down) going clockwise (x > 0, or straight up)
  auto half = [](const BasicPoint<T>& d) {
    return (d.x > 0 || (d.x == 0 && d.y > 0)) ? 0 : 1;
  };
  const int hu = half(u);
  const int hv = half(v);
  if (hu != hv) return hu < hv;
  return cross(u, v) < 0;
}

/// Counterclockwise angular position measured from +x, in [0, 2pi).
template <typename T>
bool counterclockwise_less(const BasicPoint<T>& u, const BasicPoint<T>& v) {
  auto half = [](const BasicPoint<T>& d) {
    return (d.y > 0 || (d.y == 0 && d.x > 0)) ? 0 : 1;
  };
  const int hu = half(u);
  const int hv = half(v);
  if (hu != hv) return hu < hv;
  return cross(u, v) > 0;
}

/// Closed-segment test: does c lie on segment [a, b]?
template <typename T>
bool on_segment(const BasicPoint<T>& a, const BasicPoint<T>& b, const BasicPoint<T>& c) {
  if (orient(a, b, c) != 0) return false;
  return std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= c.y && c.y <= std::max(a.y, b.y);
}

/// Do the closed segments [a, b] and [c, d] share at least one point?
template <typename T>
bool closed_segments_intersect(const BasicPoint<T>& a, const BasicPoint<T>& b,
                               const BasicPoint<T>& c, const BasicPoint<T>& d) {
  const int o1 = orient(a, b, c);
  const int o2 = orient(a, b, d);
  const int o3 = orient(c, d, a);
  const int o4 = orient(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  return on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) ||
         on_segment(c, d, b);
}

/// Do the open segments (a, b) and (c, d) cross at a single interior point?
template <typename T>
bool segments_cross_properly(const BasicPoint<T>& a, const BasicPoint<T>& b,
                             const BasicPoint<T>& c, const BasicPoint<T>& d) {
  return orient(a, b, c) * orient(a, b, d) < 0 && orient(c, d, a) * orient(c, d, b) < 0;
}

/// Parameter t along [a, b] of the proper crossing with [c, d]; a + t (b - a).
/// num/den. Boost's two-argument constructor rejects negative denominators.
inline Rational make_rational(Integer num, Integer den) {
  if (den == 0) throw std::domain_error("make_rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(num, den);
}

inline Rational crossing_parameter(const Point& a, const Point& b, const Point& c,
                                   const Point& d) {
  const Integer den = cross(b - a, d - c);
  if (den == 0) throw std::logic_error("crossing_parameter: parallel segments");
  return make_rational(cross(c - a, d - c), den);
}

inline RationalPoint point_at(const Point& a, const Point& b, const Rational& t) {
  return {Rational(a.x) + t * Rational(b.x - a.x), Rational(a.y) + t * Rational(b.y - a.y)};
}

struct Segment {
  enum class Openness { open, closed };

  Point a;
  Point b;
  Openness openness = Openness::open;

  Segment(Point from, Point to, Openness kind = Openness::open)
      : a(std::move(from)), b(std::move(to)), openness(kind) {
    if (a == b) throw std::invalid_argument("Segment: endpoints coincide");
  }
};

/// A closed polygonal obstacle; vertices counterclockwise.
struct Polygon {
  std::vector<Point> vertices;

  std::size_t size() const noexcept { return vertices.size(); }
  const Point& operator[](std::size_t i) const { return vertices[i]; }
  const Point& next(std::size_t i) const { return vertices[(i + 1) % vertices.size()]; }
  const Point& prev(std::size_t i) const {
    return vertices[(i + vertices.size() - 1) % vertices.size()];
  }

  friend bool operator==(const Polygon&, const Polygon&) = default;
};

/// Twice the signed area (positive for counterclockwise order).
template <typename T>
T twice_signed_area(const std::vector<BasicPoint<T>>& ring) {
  T acc = 0;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) acc += cross(ring[i], ring[(i + 1) % n]);
  return acc;
}

inline bool is_simple(const Polygon& p) {
  const std::size_t n = p.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (p[i] == p.next(i)) return false;
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) {
        // adjacent edges may only share their common vertex
        const Point& shared = (j == i + 1) ? p.next(i) : p[i];
        const Point& u = (j == i + 1) ? p[i] : p.next(i);
        const Point& w = (j == i + 1) ? p.next(j) : p[j];
        if (orient(u, shared, w) == 0 && dot(u - shared, w - shared) > 0) return false;
        continue;
      }
      if (closed_segments_intersect(p[i], p.next(i), p[j], p.next(j))) return false;
    }
  }
  return true;
}

inline bool is_convex(const Polygon& p) {
  const std::size_t n = p.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (orient(p[i], p.next(i), p.next((i + 1) % n)) <= 0) return false;
  }
  return twice_signed_area(p.vertices) > 0;
}

/// Problems with a polygon as an obstacle; empty when it is valid.
inline std::vector<std::string> polygon_issues(const Polygon& p) {
  std::vector<std::string> issues;
  if (p.size() < 3) {
    issues.push_back("polygon has fewer than 3 vertices");
    return issues;
  }
  if (!is_simple(p)) issues.push_back("polygon is not simple");
  if (twice_signed_area(p.vertices) <= 0) issues.push_back("polygon is not counterclockwise");
  return issues;
}

enum class Location { outside, boundary, inside };

/// Exact point-in-polygon (crossing number with a boundary check).
template <typename T>
Location locate_in_ring(const std::vector<BasicPoint<T>>& ring, const BasicPoint<T>& q) {
  const std::size_t n = ring.size();
  bool inside = false;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = ring[i];
    const auto& b = ring[(i + 1) % n];
    if (on_segment(a, b, q)) return Location::boundary;
    if ((a.y > q.y) != (b.y > q.y)) {
      // x-coordinate of the edge at height q.y compared with q.x, without division
      const int o = orient(a, b, q);
      if ((b.y > a.y) ? (o > 0) : (o < 0)) inside = !inside;
    }
  }
  return inside ? Location::inside : Location::outside;
}

inline Location locate(const Polygon& p, const Point& q) { return locate_in_ring(p.vertices, q); }

inline Location locate(const Polygon& p, const RationalPoint& q) {
  std::vector<RationalPoint> ring;
  ring.reserve(p.size());
  for (const auto& v : p.vertices) ring.push_back(to_rational(v));
  return locate_in_ring(ring, q);
}

/// True iff the open segment meets the closed region of the polygon.
/// Both endpoints must lie strictly outside the polygon.
inline bool segment_intersects_polygon(const Segment& s, const Polygon& p) {
  if (locate(p, s.a) != Location::outside || locate(p, s.b) != Location::outside) {
    throw InvalidScene("segment endpoint inside or on obstacle");
  }
  // bounding boxes
  auto [pxmin, pxmax] = std::minmax_element(
      p.vertices.begin(), p.vertices.end(), [](const Point& u, const Point& v) { return u.x < v.x; });
  auto [pymin, pymax] = std::minmax_element(
      p.vertices.begin(), p.vertices.end(), [](const Point& u, const Point& v) { return u.y < v.y; });
  if (std::max(s.a.x, s.b.x) < pxmin->x || std::min(s.a.x, s.b.x) > pxmax->x ||
      std::max(s.a.y, s.b.y) < pymin->y || std::min(s.a.y, s.b.y) > pymax->y) {
    return false;
  }
  // With both endpoints outside, the segment reaches the region only through
  // its boundary.
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (closed_segments_intersect(s.a, s.b, p[i], p.next(i))) return true;
  }
  return false;
}

struct GeneralPositionReport {
  bool ok = true;
  std::vector<std::pair<std::size_t, std::size_t>> duplicates;
  std::vector<std::array<std::size_t, 3>> collinear;
};

/// Every duplicate pair and every collinear triple (i < j < k).
inline GeneralPositionReport check_general_position(const std::vector<Point>& points) {
  GeneralPositionReport report;
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (points[i] == points[j]) report.duplicates.emplace_back(i, j);
      for (std::size_t k = j + 1; k < n; ++k) {
        if (orient(points[i], points[j], points[k]) == 0) report.collinear.push_back({i, j, k});
      }
    }
  }
  report.ok = report.duplicates.empty() && report.collinear.empty();
  return report;
}

inline bool is_general_position(const std::vector<Point>& points) {
  return check_general_position(points).ok;
}

/// Convex hull, counterclockwise, strictly convex vertices only (monotone chain).
inline std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && orient(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && orient(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace obsnum
