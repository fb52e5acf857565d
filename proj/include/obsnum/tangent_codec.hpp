#pragma once

// Rotating-tangent encoding of a single convex obstacle and a table-driven
// decoder that recovers pairwise visibility from the encoding alone.
//
// Convention: the oriented tangent line keeps the obstacle on its right and
// turns clockwise. A vertex touched by the line gets '+' when it lies ahead of
// the tangency corner (along the line's direction) and '-' when behind. The
// linear form starts with the first event at or clockwise after straight up.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "obsnum/geometry.hpp"
#include "obsnum/graph.hpp"
#include "obsnum/random.hpp"
#include "obsnum/visibility.hpp"

namespace obsnum {

enum class TangentSign : std::uint8_t { minus, plus };

struct TangentEvent {
  std::size_t vertex = 0;
  TangentSign sign = TangentSign::plus;

  friend bool operator==(const TangentEvent&, const TangentEvent&) = default;
};

/// Circular sequence of signed vertex symbols; stored linearly, read cyclically.
struct TangentSequence {
  std::vector<TangentEvent> events;

  std::size_t size() const noexcept { return events.size(); }

  /// Same linear reading; see circular_equal for equality up to rotation.
  friend bool operator==(const TangentSequence&, const TangentSequence&) = default;

  /// Vertex count, requiring each of 0..n-1 exactly once with each sign.
  std::size_t vertex_count() const {
    const std::size_t n = events.size() / 2;
    if (events.size() % 2 != 0) throw std::invalid_argument("tangent sequence has odd length");
    std::vector<std::array<int, 2>> seen(n, {0, 0});
    for (const auto& e : events) {
      if (e.vertex >= n) throw std::invalid_argument("tangent sequence label out of range");
      ++seen[e.vertex][static_cast<int>(e.sign)];
    }
    for (const auto& s : seen)
      if (s[0] != 1 || s[1] != 1)
        throw std::invalid_argument("tangent sequence: each vertex needs one '+' and one '-'");
    return n;
  }
};

/// Equality up to rotation.
inline bool circular_equal(const TangentSequence& a, const TangentSequence& b) {
  const std::size_t n = a.size();
  if (n != b.size()) return false;
  if (n == 0) return true;
  for (std::size_t shift = 0; shift < n; ++shift) {
    bool same = true;
    for (std::size_t i = 0; i < n && same; ++i) same = a.events[i] == b.events[(i + shift) % n];
    if (same) return true;
  }
  return false;
}

/// Text form with 1-based labels, e.g. "2+1-2-3+1+3-".
inline std::string to_string(const TangentSequence& seq) {
  std::string out;
  for (const auto& e : seq.events) {
    out += std::to_string(e.vertex + 1);
    out += e.sign == TangentSign::plus ? '+' : '-';
  }
  return out;
}

inline TangentSequence parse_tangent_sequence(const std::string& text) {
  TangentSequence seq;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j == i || j >= text.size() || (text[j] != '+' && text[j] != '-'))
      throw std::invalid_argument("malformed tangent sequence near position " + std::to_string(i));
    const auto label = std::stoul(text.substr(i, j - i));
    if (label == 0) throw std::invalid_argument("tangent sequence labels are 1-based");
    seq.events.push_back({label - 1, text[j] == '+' ? TangentSign::plus : TangentSign::minus});
    i = j + 1;
  }
  seq.vertex_count();
  return seq;
}

/// Rotating-tangent sweep of a convex obstacle against the given vertices.
inline TangentSequence encode_tangent(const std::vector<Point>& points, const Polygon& obstacle) {
  if (!is_convex(obstacle)) throw InvalidScene("encode_tangent: obstacle is not convex");
  for (std::size_t v = 0; v < points.size(); ++v) {
    if (locate(obstacle, points[v]) != Location::outside) {
      throw InvalidScene("encode_tangent: vertex " + std::to_string(v + 1) +
                         " inside or on obstacle");
    }
  }

  struct Event {
    Point direction;
    TangentEvent symbol;
  };
  std::vector<Event> events;
  for (std::size_t v = 0; v < points.size(); ++v) {
    const Point& p = points[v];
    std::size_t found = 0;
    for (std::size_t w = 0; w < obstacle.size(); ++w) {
      const Point& corner = obstacle[w];
      const int s_prev = orient(p, corner, obstacle.prev(w));
      const int s_next = orient(p, corner, obstacle.next(w));
      if (s_prev == 0 || s_next == 0) {
        throw InvalidScene("encode_tangent: vertex " + std::to_string(v + 1) +
                           " collinear with an obstacle side");
      }
      if (s_prev != s_next) continue;
      // Line through p and corner supports the obstacle. Orient it so the
      // obstacle (both neighbours of corner) lies to the right.
      // Direction corner - p has neighbours on side s_prev; right means -1.
      const bool toward_corner = s_prev < 0;
      Point dir = toward_corner ? corner - p : p - corner;
      // p ahead of the tangency corner iff direction points from corner to p.
      const TangentSign sign = toward_corner ? TangentSign::minus : TangentSign::plus;
      events.push_back({std::move(dir), {v, sign}});
      ++found;
    }
    if (found != 2) {
      throw InvalidScene("encode_tangent: vertex " + std::to_string(v + 1) + " has " +
                         std::to_string(found) + " tangents (expected 2)");
    }
  }

  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    return clockwise_from_up_less(a.direction, b.direction);
  });
  for (std::size_t i = 0; i + 1 < events.size(); ++i) {
    const auto& a = events[i].direction;
    const auto& b = events[i + 1].direction;
    if (cross(a, b) == 0 && dot(a, b) > 0) {
      throw InvalidScene("encode_tangent: two events share a tangent direction (vertices " +
                         std::to_string(events[i].symbol.vertex + 1) + " and " +
                         std::to_string(events[i + 1].symbol.vertex + 1) + ")");
    }
  }

  TangentSequence seq;
  seq.events.reserve(events.size());
  for (const auto& e : events) seq.events.push_back(e.symbol);
  return seq;
}

inline TangentSequence encode_tangent(const Scene& scene, std::size_t obstacle_index) {
  require_valid(scene);
  return encode_tangent(scene.points, scene.obstacles.at(obstacle_index));
}

/// Four events of a vertex pair: role p is the smaller label, q the larger.
/// Canonical rotation puts q- first.
struct PairPattern {
  enum class Role : std::uint8_t { p, q };
  struct Symbol {
    Role role;
    TangentSign sign;
    friend auto operator<=>(const Symbol&, const Symbol&) = default;
  };
  std::array<Symbol, 4> symbols;

  friend auto operator<=>(const PairPattern&, const PairPattern&) = default;

  /// Same circular pattern with the two roles exchanged (re-canonicalized).
  PairPattern swapped() const {
    std::array<Symbol, 4> s = symbols;
    for (auto& sym : s) sym.role = sym.role == Role::p ? Role::q : Role::p;
    return canonical(s);
  }

  static PairPattern canonical(const std::array<Symbol, 4>& s) {
    for (std::size_t start = 0; start < 4; ++start) {
      if (s[start].role == Role::q && s[start].sign == TangentSign::minus) {
        PairPattern out{};
        for (std::size_t i = 0; i < 4; ++i) out.symbols[i] = s[(start + i) % 4];
        return out;
      }
    }
    throw std::invalid_argument("pattern lacks a q- event");
  }
};

inline std::string to_string(const PairPattern& pattern) {
  std::string out;
  for (const auto& s : pattern.symbols) {
    out += s.role == PairPattern::Role::p ? 'p' : 'q';
    out += s.sign == TangentSign::plus ? '+' : '-';
  }
  return out;
}

inline PairPattern parse_pair_pattern(const std::string& text) {
  if (text.size() != 8) throw std::invalid_argument("pattern must have 4 symbols: " + text);
  std::array<PairPattern::Symbol, 4> s{};
  int p_plus = 0, p_minus = 0, q_plus = 0, q_minus = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    const char r = text[2 * i];
    const char g = text[2 * i + 1];
    if ((r != 'p' && r != 'q') || (g != '+' && g != '-'))
      throw std::invalid_argument("malformed pattern: " + text);
    s[i] = {r == 'p' ? PairPattern::Role::p : PairPattern::Role::q,
            g == '+' ? TangentSign::plus : TangentSign::minus};
    (r == 'p' ? (g == '+' ? p_plus : p_minus) : (g == '+' ? q_plus : q_minus))++;
  }
  if (p_plus != 1 || p_minus != 1 || q_plus != 1 || q_minus != 1)
    throw std::invalid_argument("pattern needs each of p+, p-, q+, q- once: " + text);
  return PairPattern::canonical(s);
}

inline PairPattern pair_pattern(const TangentSequence& seq, std::size_t i, std::size_t j) {
  if (i == j) throw std::invalid_argument("pair_pattern: identical vertices");
  const std::size_t p = std::min(i, j);
  const std::size_t q = std::max(i, j);
  std::array<PairPattern::Symbol, 4> s{};
  std::size_t count = 0;
  for (const auto& e : seq.events) {
    if (e.vertex != p && e.vertex != q) continue;
    if (count == 4) throw std::invalid_argument("pair_pattern: too many events for pair");
    s[count++] = {e.vertex == p ? PairPattern::Role::p : PairPattern::Role::q, e.sign};
  }
  if (count != 4) throw std::invalid_argument("pair_pattern: vertex missing from sequence");
  return PairPattern::canonical(s);
}

enum class Visibility : std::uint8_t { blocked, visible };

inline const char* to_string(Visibility v) { return v == Visibility::visible ? "visible" : "blocked"; }

/// Two scenes that produced the same pattern with opposite outcomes.
class PatternContradiction : public std::runtime_error {
 public:
  PatternContradiction(PairPattern pattern, Scene first, Edge first_pair, Scene second,
                       Edge second_pair)
      : std::runtime_error("pattern " + to_string(pattern) + " observed as both visible and blocked"),
        pattern_(pattern),
        first_(std::move(first)),
        second_(std::move(second)),
        first_pair_(first_pair),
        second_pair_(second_pair) {}

  const PairPattern& pattern() const noexcept { return pattern_; }
  const Scene& first_witness() const noexcept { return first_; }
  const Scene& second_witness() const noexcept { return second_; }
  Edge first_pair() const noexcept { return first_pair_; }
  Edge second_pair() const noexcept { return second_pair_; }

 private:
  PairPattern pattern_;
  Scene first_;
  Scene second_;
  Edge first_pair_;
  Edge second_pair_;
};

/// Observed pattern -> outcome map. Every observation is also recorded with
/// roles swapped, since the geometry does not depend on label order.
class PatternTable {
 public:
  struct Entry {
    Visibility outcome;
    Scene witness;
    Edge pair;
  };

  void observe(const PairPattern& pattern, Visibility outcome, const Scene& witness, Edge pair) {
    record(pattern, outcome, witness, pair);
    record(pattern.swapped(), outcome, witness, pair);
  }

  /// Record every pair of a single-obstacle scene.
  void observe_scene(const Scene& scene) {
    if (scene.obstacles.size() != 1)
      throw std::invalid_argument("observe_scene: exactly one obstacle required");
    const auto seq = encode_tangent(scene, 0);
    const Graph vis = visibility_graph(scene);
    for (std::size_t i = 0; i < vis.order(); ++i)
      for (std::size_t j = i + 1; j < vis.order(); ++j)
        observe(pair_pattern(seq, i, j), vis.has_edge(i, j) ? Visibility::visible : Visibility::blocked,
                scene, {i, j});
  }

  void merge(const PatternTable& other) {
    for (const auto& [pattern, entry] : other.entries_) record(pattern, entry.outcome, entry.witness, entry.pair);
  }

  std::optional<Visibility> lookup(const PairPattern& pattern) const {
    auto it = entries_.find(pattern);
    if (it == entries_.end()) return std::nullopt;
    return it->second.outcome;
  }

  /// Set an outcome without a witness (for tables read from text).
  void insert(const PairPattern& pattern, Visibility outcome) {
    auto [it, inserted] = entries_.try_emplace(pattern, Entry{outcome, Scene{}, {0, 0}});
    if (!inserted && it->second.outcome != outcome)
      throw std::invalid_argument("pattern table: conflicting entries for " + to_string(pattern));
  }

  std::size_t size() const noexcept { return entries_.size(); }
  const std::map<PairPattern, Entry>& entries() const noexcept { return entries_; }

 private:
  void record(const PairPattern& pattern, Visibility outcome, const Scene& witness, Edge pair) {
    auto [it, inserted] = entries_.try_emplace(pattern, Entry{outcome, witness, pair});
    if (!inserted && it->second.outcome != outcome) {
      throw PatternContradiction(pattern, it->second.witness, it->second.pair, witness, pair);
    }
  }

  std::map<PairPattern, Entry> entries_;
};

/// Text form: one "pattern outcome" line per entry, sorted.
inline std::string to_string(const PatternTable& table) {
  std::string out;
  for (const auto& [pattern, entry] : table.entries()) {
    out += to_string(pattern) + " " + to_string(entry.outcome) + "\n";
  }
  return out;
}

inline PatternTable parse_pattern_table(const std::string& text) {
  PatternTable table;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto space = line.find(' ');
    if (space == std::string::npos) throw std::invalid_argument("malformed table line: " + line);
    const std::string outcome = line.substr(space + 1);
    if (outcome != "visible" && outcome != "blocked")
      throw std::invalid_argument("unknown outcome in table line: " + line);
    table.insert(parse_pair_pattern(line.substr(0, space)),
                 outcome == "visible" ? Visibility::visible : Visibility::blocked);
  }
  return table;
}

struct TableSampling {
  std::size_t max_vertices = 10;
  std::int64_t extent = 1000;
  std::int64_t obstacle_radius = 300;
  std::size_t threads = 1;
};

/// Random single-convex-obstacle scene for table derivation and codec checks.
inline Scene random_codec_scene(Rng& rng, const TableSampling& cfg) {
  SceneShape shape;
  shape.vertices = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(cfg.max_vertices)));
  shape.obstacles = 1;
  shape.extent = cfg.extent;
  shape.obstacle_radius = cfg.obstacle_radius;
  shape.convex = true;
  shape.corners = static_cast<std::size_t>(rng.uniform(3, 10));
  return random_scene(shape, rng);
}

/// Build the pattern table from random scenes checked against geometric
/// visibility. Throws PatternContradiction if any pattern has both outcomes.
/// Sample k uses its own stream seeded from (seed, k), so the result does not
/// depend on the thread count.
inline PatternTable derive_pattern_table(std::size_t sample_count, std::uint64_t seed,
                                         const TableSampling& cfg = {}) {
  if (sample_count == 0) throw std::invalid_argument("derive_pattern_table: sample_count must be >= 1");
  auto run_range = [&](std::size_t begin, std::size_t end, PatternTable& table) {
    for (std::size_t k = begin; k < end; ++k) {
      Rng rng(seed ^ (0x9e3779b97f4a7c15ULL * (k + 1)));
      table.observe_scene(random_codec_scene(rng, cfg));
    }
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min(cfg.threads, sample_count));
  if (workers == 1) {
    PatternTable table;
    run_range(0, sample_count, table);
    return table;
  }
  std::vector<PatternTable> partial(workers);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        run_range(sample_count * w / workers, sample_count * (w + 1) / workers, partial[w]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  PatternTable table;
  for (const auto& p : partial) table.merge(p);
  return table;
}

class UnknownPattern : public std::runtime_error {
 public:
  explicit UnknownPattern(const PairPattern& p)
      : std::runtime_error("pattern " + to_string(p) + " absent from table"), pattern_(p) {}
  const PairPattern& pattern() const noexcept { return pattern_; }

 private:
  PairPattern pattern_;
};

/// Visibility graph recovered from one obstacle's sequence.
inline Graph decode_visibility(const TangentSequence& seq, const PatternTable& table) {
  const std::size_t n = seq.vertex_count();
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto pattern = pair_pattern(seq, i, j);
      const auto outcome = table.lookup(pattern);
      if (!outcome) throw UnknownPattern(pattern);
      if (*outcome == Visibility::visible) g.add_edge(i, j);
    }
  }
  return g;
}

}  // namespace obsnum
