#pragma once

// Obstacle counts from the face structure of a drawing: for a fixed placement
// the fewest obstacles equals a minimum cover of the non-edges by faces. On top
// of that: sampled upper bounds over placements, the edge-deletion chain from
// K_n, the vertical-strip partition check, and the G(n, 1/2) experiment driver.

#include <algorithm>
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

#include "obsnum/arrangement.hpp"
#include "obsnum/geometry.hpp"
#include "obsnum/graph.hpp"
#include "obsnum/random.hpp"
#include "obsnum/set_cover.hpp"
#include "obsnum/visibility.hpp"

namespace obsnum {

inline std::vector<Bitset> incidence_bitsets(const CoverInstance& inst) {
  std::vector<Bitset> sets;
  sets.reserve(inst.face_count());
  for (const auto& members : inst.incidence) {
    Bitset b(inst.nonedges.size());
    for (auto k : members) b.set(k);
    sets.push_back(std::move(b));
  }
  return sets;
}

struct PlacementCover {
  std::size_t obstacles = 0;
  std::vector<std::size_t> faces;  // lexicographically smallest minimum face set
};

/// Fewest obstacles for g with its vertices fixed at `points`.
inline PlacementCover min_obstacles_for_placement(const std::vector<Point>& points, const Graph& g) {
  if (points.size() != g.order())
    throw std::invalid_argument("min_obstacles_for_placement: point/vertex count mismatch");
  const FaceSet fs = build_arrangement(Drawing::of(points, g));
  if (g.is_complete()) return {};
  const CoverInstance inst = face_nonedge_incidence(fs, g);
  const auto solution = solve_set_cover(incidence_bitsets(inst), inst.nonedges.size());
  if (!solution) throw std::logic_error("non-edge incident to no face");
  return {solution->size(), solution->sets};
}

struct ObsWitness {
  std::vector<Point> placement;
  std::vector<std::size_t> faces;
};

struct ObsResult {
  std::size_t upper_bound = 0;
  ObsWitness witness;
  bool certified_exact = false;
  std::size_t placements_evaluated = 0;
};

/// Rebuild drawing, incidence and cover from the witness; true iff the
/// witness faces cover every non-edge and number exactly `upper_bound`.
inline bool replay_witness(const Graph& g, const ObsResult& result) {
  if (result.witness.placement.size() != g.order()) return false;
  const FaceSet fs = build_arrangement(Drawing::of(result.witness.placement, g));
  if (result.witness.faces.size() != result.upper_bound) return false;
  const CoverInstance inst = face_nonedge_incidence(fs, g);
  Bitset covered(inst.nonedges.size());
  for (auto f : result.witness.faces) {
    if (f >= inst.face_count()) return false;
    for (auto k : inst.incidence[f]) covered.set(k);
  }
  return covered.count() == inst.nonedges.size();
}

struct SearchConfig {
  std::size_t placements = 64;
  std::int64_t grid = 0;  // 0 selects 100 n^2
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  /// Side of the small grid swept exhaustively (one vertex per column) for
  /// n <= 5; 0 disables the sweep.
  std::int64_t sweep_grid = 0;
  std::size_t sweep_limit = 20000;
  /// Evaluated before the random placements.
  std::vector<std::vector<Point>> seed_placements;
};

namespace detail {

/// Placements of the one-vertex-per-column sweep, in enumeration order.
inline std::vector<std::vector<Point>> sweep_placements(std::size_t n, std::int64_t rows,
                                                        std::size_t limit) {
  std::vector<std::vector<Point>> out;
  if (n == 0 || rows <= 0) return out;
  std::vector<std::size_t> columns(n);
  std::vector<std::int64_t> heights(n, 0);
  for (;;) {
    std::vector<Point> base(n);
    for (std::size_t c = 0; c < n; ++c) base[c] = {Integer(c), Integer(heights[c])};
    if (is_general_position(base)) {
      for (std::size_t c = 0; c < n; ++c) columns[c] = c;
      do {
        if (out.size() >= limit) return out;
        std::vector<Point> placement(n);
        for (std::size_t v = 0; v < n; ++v) placement[v] = base[columns[v]];
        out.push_back(std::move(placement));
      } while (std::next_permutation(columns.begin(), columns.end()));
    }
    std::size_t i = 0;
    while (i < n && ++heights[i] == rows) heights[i++] = 0;
    if (i == n) break;
  }
  return out;
}

}  // namespace detail

/// Minimum over sampled placements. Candidates are evaluated in a fixed order
/// (seed placements, random placements, sweep) and the first candidate reaching
/// the minimum supplies the witness; evaluation stops once the trivial lower
/// bound is met. The result does not depend on the thread count.
inline ObsResult obs_upper_bound(const Graph& g, const SearchConfig& cfg) {
  const std::size_t n = g.order();
  const std::int64_t grid = cfg.grid > 0 ? cfg.grid : static_cast<std::int64_t>(100 * n * n + 1);
  if (grid < static_cast<std::int64_t>(n * n)) throw std::invalid_argument("obs_upper_bound: grid < n^2");
  const std::size_t floor_bound = g.is_complete() ? 0 : 1;

  Rng rng(cfg.seed);
  std::vector<std::vector<Point>> sweep;
  if (cfg.sweep_grid > 0 && n <= 5) sweep = detail::sweep_placements(n, cfg.sweep_grid, cfg.sweep_limit);
  const std::size_t total = cfg.seed_placements.size() + cfg.placements + sweep.size();
  if (total == 0) throw std::invalid_argument("obs_upper_bound: no candidate placements");

  std::size_t generated_random = 0;
  auto candidate = [&](std::size_t idx) -> std::vector<Point> {
    if (idx < cfg.seed_placements.size()) return cfg.seed_placements[idx];
    idx -= cfg.seed_placements.size();
    if (idx < cfg.placements) {
      // random placements are drawn strictly in order from a single stream
      if (idx != generated_random) throw std::logic_error("placement order violated");
      ++generated_random;
      auto p = random_placement(n, grid, rng);
      if (!p) throw std::runtime_error("obs_upper_bound: no general-position placement found");
      return *p;
    }
    return sweep[idx - cfg.placements];
  };

  ObsResult best;
  bool have = false;
  const std::size_t workers = std::max<std::size_t>(1, cfg.threads);
  std::size_t idx = 0;
  while (idx < total) {
    const std::size_t block = std::min(workers, total - idx);
    std::vector<std::vector<Point>> batch;
    for (std::size_t b = 0; b < block; ++b) batch.push_back(candidate(idx + b));
    std::vector<PlacementCover> covers(block);
    if (block == 1) {
      covers[0] = min_obstacles_for_placement(batch[0], g);
    } else {
      std::vector<std::exception_ptr> errors(block);
      std::vector<std::thread> pool;
      for (std::size_t b = 0; b < block; ++b) {
        pool.emplace_back([&, b] {
          try {
            covers[b] = min_obstacles_for_placement(batch[b], g);
          } catch (...) {
            errors[b] = std::current_exception();
          }
        });
      }
      for (auto& t : pool) t.join();
      for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    }
    for (std::size_t b = 0; b < block; ++b) {
      if (!have || covers[b].obstacles < best.upper_bound) {
        best.upper_bound = covers[b].obstacles;
        best.witness = {batch[b], covers[b].faces};
        have = true;
      }
    }
    idx += block;
    best.placements_evaluated = idx;
    if (best.upper_bound <= floor_bound) break;
  }
  best.certified_exact = best.upper_bound == floor_bound && best.upper_bound <= 1;
  return best;
}

struct ChainStep {
  std::optional<Edge> deleted;
  Graph graph;
  ObsResult result;
};

struct ChainRecord {
  std::vector<ChainStep> steps;
  /// Smallest step index at which the upper bound first equals each value.
  std::map<std::size_t, std::size_t> first_reached;
};

/// Delete the given edges of K_n in order, one per step. Each step also
/// re-evaluates the previous step's witness placement, so the bound rises by
/// at most one per deletion.
inline ChainRecord edge_deletion_chain(std::size_t n, const std::vector<Edge>& order,
                                       const SearchConfig& cfg) {
  ChainRecord record;
  Graph current = Graph::complete(n);
  std::optional<std::vector<Point>> carried;
  for (std::size_t step = 0; step <= order.size(); ++step) {
    std::optional<Edge> deleted;
    if (step > 0) {
      deleted = order[step - 1];
      if (!current.has_edge(deleted->first, deleted->second))
        throw std::invalid_argument("edge_deletion_chain: edge deleted twice or out of range");
      current.remove_edge(deleted->first, deleted->second);
    }
    SearchConfig local = cfg;
    local.seed = cfg.seed + 0x9e3779b97f4a7c15ULL * step;
    if (carried) local.seed_placements.insert(local.seed_placements.begin(), *carried);
    ObsResult r = obs_upper_bound(current, local);
    carried = r.witness.placement;
    record.first_reached.try_emplace(r.upper_bound, step);
    record.steps.push_back({deleted, current, std::move(r)});
  }
  return record;
}

/// Chain from K_n down to `target`, in lexicographic or seeded random order.
inline ChainRecord edge_deletion_chain(std::size_t n, const Graph& target, const SearchConfig& cfg,
                                       bool shuffled_order = false) {
  if (target.order() != n) throw std::invalid_argument("edge_deletion_chain: target size mismatch");
  std::vector<Edge> order = target.non_edges();
  if (shuffled_order) {
    Rng rng(cfg.seed ^ 0x5bd1e995ULL);
    rng.shuffle(order);
  }
  return edge_deletion_chain(n, order, cfg);
}

struct PartitionReport {
  std::vector<std::vector<std::size_t>> groups;  // full groups, left to right
  std::vector<std::size_t> leftover;             // final partial group (not counted)
  std::vector<bool> flagged;                     // hull holds no whole obstacle
  std::size_t flagged_count = 0;
  std::size_t obstacle_count = 0;
  /// flagged_count >= floor(n/k) - obstacle_count
  bool bound_holds = false;
  /// obstacle_count < n / (2k)
  bool lemma_hypothesis = false;
  /// flagged_count > floor(n/k) - n/(2k); only meaningful under the hypothesis
  bool lemma_conclusion = false;
};

namespace detail {

template <typename Contained>
PartitionReport partition_core(const std::vector<Point>& points, std::size_t k,
                               std::size_t obstacle_count, Contained&& contained) {
  if (k == 0) throw std::invalid_argument("partition_lemma_check: k must be >= 1");
  const std::size_t n = points.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return points[a].x < points[b].x; });
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (points[order[i]].x == points[order[i + 1]].x) {
      throw InvalidScene("partition_lemma_check: vertices " + std::to_string(order[i] + 1) + " and " +
                         std::to_string(order[i + 1] + 1) + " share an x-coordinate");
    }
  }
  PartitionReport r;
  r.obstacle_count = obstacle_count;
  const std::size_t full = n / k;
  for (std::size_t gi = 0; gi < full; ++gi) {
    std::vector<std::size_t> group(order.begin() + static_cast<std::ptrdiff_t>(gi * k),
                                   order.begin() + static_cast<std::ptrdiff_t>((gi + 1) * k));
    std::vector<Point> pts;
    for (auto v : group) pts.push_back(points[v]);
    const auto hull = convex_hull(pts);
    bool holds_obstacle = false;
    if (hull.size() >= 3) {
      std::vector<RationalPoint> ring;
      for (const auto& p : hull) ring.push_back(to_rational(p));
      for (std::size_t o = 0; o < obstacle_count && !holds_obstacle; ++o)
        holds_obstacle = contained(o, ring);
    }
    r.groups.push_back(std::move(group));
    r.flagged.push_back(!holds_obstacle);
    r.flagged_count += holds_obstacle ? 0 : 1;
  }
  r.leftover.assign(order.begin() + static_cast<std::ptrdiff_t>(full * k), order.end());
  r.bound_holds = r.flagged_count + obstacle_count >= full;
  r.lemma_hypothesis = 2 * k * obstacle_count < n;
  // flagged > full - n/(2k)  <=>  2k * flagged + n > 2k * full
  r.lemma_conclusion = 2 * k * r.flagged_count + n > 2 * k * full;
  return r;
}

inline bool ring_contains_all(const std::vector<RationalPoint>& ring, const std::vector<RationalPoint>& pts) {
  for (const auto& p : pts)
    if (locate_in_ring(ring, p) == Location::outside) return false;
  return true;
}

}  // namespace detail

/// Vertical-strip groups of k vertices; flags groups whose hull contains no
/// whole obstacle.
inline PartitionReport partition_lemma_check(const Scene& scene, std::size_t k) {
  return detail::partition_core(scene.points, k, scene.obstacles.size(),
                                [&](std::size_t o, const std::vector<RationalPoint>& ring) {
                                  std::vector<RationalPoint> corners;
                                  for (const auto& p : scene.obstacles[o].vertices)
                                    corners.push_back(to_rational(p));
                                  return detail::ring_contains_all(ring, corners);
                                });
}

/// Same check for a face-level witness: each chosen face stands for an
/// obstacle filling it. The unbounded face is never inside a hull.
inline PartitionReport partition_lemma_check(const std::vector<Point>& placement, const Graph& g,
                                             const std::vector<std::size_t>& faces, std::size_t k) {
  const FaceSet fs = build_arrangement(Drawing::of(placement, g));
  return detail::partition_core(placement, k, faces.size(),
                                [&](std::size_t o, const std::vector<RationalPoint>& ring) {
                                  const Face& face = fs.faces.at(faces[o]);
                                  if (face.unbounded) return false;
                                  return detail::ring_contains_all(ring, fs.ring(*face.outer));
                                });
}

struct ExperimentConfig {
  std::size_t n = 4;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::size_t placements = 32;  // budget per graph
  std::int64_t grid = 0;
  bool exhaustive = false;      // every labeled graph on n vertices instead of sampling
  std::size_t threads = 1;
};

struct ExperimentReport {
  std::size_t graphs = 0;
  std::size_t certified_at_most_one = 0;
  std::size_t unresolved = 0;  // best bound found is >= 2
  std::map<std::size_t, std::size_t> bound_histogram;

  double fraction_certified() const {
    return graphs == 0 ? 0.0 : static_cast<double>(certified_at_most_one) / static_cast<double>(graphs);
  }
  double fraction_unresolved() const {
    return graphs == 0 ? 0.0 : static_cast<double>(unresolved) / static_cast<double>(graphs);
  }
};

inline ExperimentReport random_graph_experiment(const ExperimentConfig& cfg) {
  if (!cfg.exhaustive && cfg.trials == 0) throw std::invalid_argument("random_graph_experiment: trials must be >= 1");
  const std::size_t pairs = cfg.n * (cfg.n - (cfg.n > 0 ? 1 : 0)) / 2;
  if (cfg.exhaustive && pairs > 20) throw std::invalid_argument("random_graph_experiment: exhaustive mode limited to n <= 6");
  ExperimentReport report;
  Rng rng(cfg.seed);
  const std::size_t count = cfg.exhaustive ? (std::size_t{1} << pairs) : cfg.trials;
  for (std::size_t t = 0; t < count; ++t) {
    Graph g(cfg.n);
    if (cfg.exhaustive) {
      std::size_t bit = 0;
      for (std::size_t i = 0; i < cfg.n; ++i)
        for (std::size_t j = i + 1; j < cfg.n; ++j, ++bit)
          if ((t >> bit) & 1U) g.add_edge(i, j);
    } else {
      g = random_graph(cfg.n, rng);
    }
    SearchConfig search;
    search.placements = cfg.placements;
    search.grid = cfg.grid;
    search.seed = cfg.seed + 0x9e3779b97f4a7c15ULL * (t + 1);
    search.threads = cfg.threads;
    const ObsResult r = obs_upper_bound(g, search);
    ++report.graphs;
    ++report.bound_histogram[r.upper_bound];
    if (r.certified_exact && r.upper_bound <= 1) ++report.certified_at_most_one;
    if (r.upper_bound >= 2) ++report.unresolved;
  }
  return report;
}

}  // namespace obsnum
