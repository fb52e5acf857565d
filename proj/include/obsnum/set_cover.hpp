#pragma once

// Exact minimum set cover by branch and bound. Among minimum covers the
// lexicographically smallest sorted id list is returned.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace obsnum {

using Bitset = boost::dynamic_bitset<>;

struct CoverSolution {
  std::vector<std::size_t> sets;  // sorted ascending

  std::size_t size() const noexcept { return sets.size(); }
  friend bool operator==(const CoverSolution&, const CoverSolution&) = default;
};

class SetCoverSolver {
 public:
  SetCoverSolver(std::vector<Bitset> sets, std::size_t universe)
      : sets_(std::move(sets)), universe_(universe) {
    for (const auto& s : sets_)
      if (s.size() != universe_) throw std::invalid_argument("set cover: bitset size mismatch");
  }

  /// Minimum cover, or nullopt when the union of all sets misses an element.
  std::optional<CoverSolution> solve() {
    Bitset all(universe_);
    for (const auto& s : sets_) all |= s;
    if (all.count() != universe_) return std::nullopt;
    Bitset uncovered(universe_);
    uncovered.set();
    if (universe_ == 0) return CoverSolution{};

    best_ = std::numeric_limits<std::size_t>::max();
    minimum(uncovered, 0, 0);
    const std::size_t k = best_;

    CoverSolution out;
    std::size_t from = 0;
    while (uncovered.any()) {
      const std::size_t slots_left = k - out.sets.size();
      if (slots_left == 0) throw std::logic_error("set cover: optimum inconsistent");
      bool placed = false;
      for (std::size_t id = from; id < sets_.size(); ++id) {
        if (!sets_[id].intersects(uncovered)) continue;
        Bitset rest = uncovered - sets_[id];
        if (coverable(rest, slots_left - 1, id + 1)) {
          out.sets.push_back(id);
          uncovered = std::move(rest);
          from = id + 1;
          placed = true;
          break;
        }
      }
      if (!placed) throw std::logic_error("set cover: lexicographic reconstruction failed");
    }
    return out;
  }

  std::size_t nodes_explored() const noexcept { return nodes_; }

 private:
  std::size_t lower_bound(const Bitset& uncovered, std::size_t first) const {
    std::size_t widest = 0;
    for (std::size_t id = first; id < sets_.size(); ++id)
      widest = std::max(widest, (sets_[id] & uncovered).count());
    if (widest == 0) return std::numeric_limits<std::size_t>::max() / 2;
    const std::size_t need = uncovered.count();
    return (need + widest - 1) / widest;
  }

  /// Element with the fewest covering sets among ids >= first.
  std::size_t pivot(const Bitset& uncovered, std::size_t first, std::size_t& options) const {
    std::size_t best_elem = Bitset::npos;
    options = std::numeric_limits<std::size_t>::max();
    for (auto e = uncovered.find_first(); e != Bitset::npos; e = uncovered.find_next(e)) {
      std::size_t c = 0;
      for (std::size_t id = first; id < sets_.size(); ++id) c += sets_[id].test(e);
      if (c < options) {
        options = c;
        best_elem = e;
      }
    }
    return best_elem;
  }

  void minimum(const Bitset& uncovered, std::size_t chosen, std::size_t first) {
    ++nodes_;
    if (uncovered.none()) {
      best_ = std::min(best_, chosen);
      return;
    }
    if (chosen + lower_bound(uncovered, first) >= best_) return;
    std::size_t options = 0;
    const std::size_t e = pivot(uncovered, first, options);
    if (options == 0) return;
    std::vector<std::size_t> branch;
    for (std::size_t id = first; id < sets_.size(); ++id)
      if (sets_[id].test(e)) branch.push_back(id);
    std::stable_sort(branch.begin(), branch.end(), [&](std::size_t a, std::size_t b) {
      return (sets_[a] & uncovered).count() > (sets_[b] & uncovered).count();
    });
    for (auto id : branch) minimum(uncovered - sets_[id], chosen + 1, first);
  }

  /// Can `uncovered` be covered with at most `budget` sets of id >= first?
  bool coverable(const Bitset& uncovered, std::size_t budget, std::size_t first) {
    ++nodes_;
    if (uncovered.none()) return true;
    if (budget == 0) return false;
    if (lower_bound(uncovered, first) > budget) return false;
    std::size_t options = 0;
    const std::size_t e = pivot(uncovered, first, options);
    if (options == 0) return false;
    for (std::size_t id = first; id < sets_.size(); ++id) {
      if (sets_[id].test(e) && coverable(uncovered - sets_[id], budget - 1, first)) return true;
    }
    return false;
  }

  std::vector<Bitset> sets_;
  std::size_t universe_;
  std::size_t best_ = 0;
  std::size_t nodes_ = 0;
};

inline std::optional<CoverSolution> solve_set_cover(std::vector<Bitset> sets, std::size_t universe) {
  return SetCoverSolver(std::move(sets), universe).solve();
}

}  // namespace obsnum
