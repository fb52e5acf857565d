#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "obsnum/bounds.hpp"
#include "obsnum/cli.hpp"
#include "obsnum/obstacle_search.hpp"
#include "oracles.hpp"

using namespace obsnum;

namespace {

SearchConfig quick(std::uint64_t seed, std::size_t placements = 32) {
  SearchConfig cfg;
  cfg.seed = seed;
  cfg.placements = placements;
  return cfg;
}

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli_dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string samples = OBSNUM_SAMPLES;

}  // namespace

TEST(PlacementCover, ConvexC4NeedsOne) {
  const Graph c4 = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  const auto r = min_obstacles_for_placement({{0, 0}, {10, 1}, {11, 12}, {-1, 10}}, c4);
  EXPECT_EQ(r.obstacles, 1u);
  EXPECT_EQ(r.faces, std::vector<std::size_t>{1});
}

TEST(PlacementCover, CompleteGraphNeedsNone) {
  EXPECT_EQ(min_obstacles_for_placement({{0, 0}, {10, 1}, {3, 9}}, Graph::complete(3)).obstacles, 0u);
}

TEST(ObsSearch, CompleteGraphsAreZero) {
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto r = obs_upper_bound(Graph::complete(n), quick(n));
    EXPECT_EQ(r.upper_bound, 0u);
    EXPECT_TRUE(r.certified_exact);
    EXPECT_TRUE(replay_witness(Graph::complete(n), r));
  }
}

TEST(ObsSearch, SmallGraphsCertifiedAtOne) {
  const std::vector<Graph> graphs{Graph(5), Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}),
                                  Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}})};
  for (const auto& g : graphs) {
    const auto r = obs_upper_bound(g, quick(3));
    EXPECT_EQ(r.upper_bound, 1u);
    EXPECT_TRUE(r.certified_exact);
    EXPECT_TRUE(replay_witness(g, r));
  }
}

TEST(ObsSearch, ReproducibleAndThreadIndependent) {
  Rng rng(12);
  const Graph g = random_graph(7, rng);
  SearchConfig a = quick(99, 40), b = quick(99, 40);
  b.threads = 3;
  const auto ra = obs_upper_bound(g, a), rb = obs_upper_bound(g, b);
  EXPECT_EQ(ra.upper_bound, rb.upper_bound);
  EXPECT_EQ(ra.witness.placement, rb.witness.placement);
  EXPECT_EQ(ra.witness.faces, rb.witness.faces);
  EXPECT_TRUE(replay_witness(g, ra));
}

TEST(ObsSearch, SweepCoversSmallGraphs) {
  SearchConfig cfg = quick(1, 0);
  cfg.sweep_grid = 4;
  const Graph p4 = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
  const auto r = obs_upper_bound(p4, cfg);
  EXPECT_EQ(r.upper_bound, 1u);
  EXPECT_TRUE(replay_witness(p4, r));
}

TEST(Chain, MonotoneAndStartsAtZero) {
  for (std::size_t n : {4u, 5u}) {
    const auto rec = edge_deletion_chain(n, Graph(n), quick(7, 16), true);
    ASSERT_EQ(rec.steps.size(), n * (n - 1) / 2 + 1);
    EXPECT_EQ(rec.steps[0].result.upper_bound, 0u);
    for (std::size_t t = 0; t + 1 < rec.steps.size(); ++t)
      EXPECT_LE(rec.steps[t + 1].result.upper_bound, rec.steps[t].result.upper_bound + 1);
    EXPECT_TRUE(rec.first_reached.count(1));
    EXPECT_TRUE(rec.steps.back().graph == Graph(n));
  }
}

TEST(Chain, RejectsRepeatedDeletion) {
  EXPECT_THROW(edge_deletion_chain(3, std::vector<Edge>{{0, 1}, {0, 1}}, quick(1)), std::invalid_argument);
}

TEST(Partition, ArithmeticOnAScene) {
  // six vertices left to right, one triangle obstacle inside the hull of the middle pair's strip
  Scene s{{{0, 0}, {10, 50}, {20, -40}, {30, 60}, {40, -30}, {50, 10}}, {Polygon{{{19, 5}, {23, 5}, {21, 9}}}}};
  const auto k2 = partition_lemma_check(s, 2);
  ASSERT_EQ(k2.groups.size(), 3u);
  EXPECT_EQ(k2.obstacle_count, 1u);
  EXPECT_GE(k2.flagged_count + k2.obstacle_count, 3u);
  EXPECT_TRUE(k2.bound_holds);
  const auto k3 = partition_lemma_check(s, 3);
  EXPECT_EQ(k3.groups.size(), 2u);
  EXPECT_TRUE(k3.leftover.empty());
  const auto k4 = partition_lemma_check(s, 4);
  EXPECT_EQ(k4.groups.size(), 1u);
  EXPECT_EQ(k4.leftover.size(), 2u);
}

TEST(Partition, FaceWitnesses) {
  const Graph c4 = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  const auto r = obs_upper_bound(c4, quick(5));
  for (std::size_t k = 1; k <= 3; ++k) {
    const auto p = partition_lemma_check(r.witness.placement, c4, r.witness.faces, k);
    EXPECT_EQ(p.obstacle_count, 1u);
    EXPECT_TRUE(p.bound_holds);
  }
}

TEST(Partition, DuplicateXIsRejected) {
  EXPECT_THROW(partition_lemma_check(Scene{{{0, 0}, {0, 5}, {3, 1}}, {}}, 1), InvalidScene);
}

TEST(Experiment, ExhaustiveThreeVertices) {
  ExperimentConfig cfg;
  cfg.n = 3;
  cfg.exhaustive = true;
  const auto r = random_graph_experiment(cfg);
  EXPECT_EQ(r.graphs, 8u);
  EXPECT_EQ(r.certified_at_most_one, 8u);
  EXPECT_EQ(r.fraction_certified(), 1.0);
}

TEST(Experiment, SeededRunsRepeat) {
  ExperimentConfig cfg;
  cfg.n = 5;
  cfg.trials = 15;
  cfg.seed = 31;
  const auto a = random_graph_experiment(cfg), b = random_graph_experiment(cfg);
  EXPECT_EQ(a.bound_histogram, b.bound_histogram);
  EXPECT_EQ(a.certified_at_most_one, b.certified_at_most_one);
}

TEST(Bounds, MatchesFloatingPointEvaluation) {
  EXPECT_EQ(bounds_threshold(BoundsQuery{1, std::nullopt, 1}), 24u);
  std::uint64_t prev = 0;
  for (std::uint64_t h = 1; h <= 10; ++h) {
    const auto n = bounds_threshold(BoundsQuery{h, std::nullopt, 1});
    EXPECT_EQ(n, oracle::convex_threshold_float(static_cast<double>(h))) << "h=" << h;
    EXPECT_GT(n, prev);
    prev = n;
  }
}

TEST(Bounds, SidesModeAndValidation) {
  for (std::uint64_t s : {3u, 10u, 40u}) {
    const auto n = bounds_threshold(BoundsQuery{std::nullopt, s, 1});
    auto beaten = [&](double m) { return (m + s) * std::log2(m + s) < m * (m - 1) / 2; };
    EXPECT_TRUE(beaten(static_cast<double>(n)));
    EXPECT_FALSE(beaten(static_cast<double>(n - 1)));
  }
  EXPECT_GT(bounds_threshold(BoundsQuery{std::nullopt, 10, Rational(3, 2)}),
            bounds_threshold(BoundsQuery{std::nullopt, 10, 1}));
  EXPECT_THROW(bounds_threshold(BoundsQuery{1, 4, 1}), std::invalid_argument);
  EXPECT_THROW(bounds_threshold(BoundsQuery{}), std::invalid_argument);
  EXPECT_THROW(bounds_threshold(BoundsQuery{std::nullopt, 5, 0}), std::invalid_argument);
}

TEST(Bounds, SequenceCount) {
  EXPECT_EQ(convex_sequence_count(3, 1), Rational(720));
  EXPECT_EQ(convex_sequence_count(2, 2), Rational(24 * 24, 2));
}

TEST(Cli, SampleCommands) {
  const auto enc = run({"encode", samples + "/sample.json"});
  EXPECT_EQ(enc.code, 0);
  EXPECT_EQ(enc.out, "2+1-2-3+1+3-\n");
  const auto vis = run({"visibility", samples + "/sample.json"});
  EXPECT_EQ(vis.code, 0);
  EXPECT_NE(vis.out.find("edge 1 2\nedge 1 3\n"), std::string::npos);
  EXPECT_NE(vis.out.find("blocked 2 3 by 1"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"visibility", samples + "/degenerate.json"}).code, 1);
  EXPECT_EQ(run({"visibility", samples + "/missing.json"}).code, 1);
  EXPECT_EQ(run({"bogus"}).code, 1);
  EXPECT_EQ(run({"obs-search", samples + "/k4.json"}).code, 1);  // --seed is required
  EXPECT_EQ(run({"bounds", "--h", "1", "--s", "4"}).code, 1);
  EXPECT_EQ(run({"validate", samples + "/k4.json"}).code, 1);
}

TEST(Cli, BoundsAndSearch) {
  const auto b = run({"bounds", "--h", "1"});
  EXPECT_EQ(b.code, 0);
  EXPECT_NE(b.out.find("threshold 24\n"), std::string::npos);
  const auto o = run({"obs-search", samples + "/c4.json", "--seed", "4"});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("upper_bound 1\ncertified true\n"), std::string::npos);
  const auto e = run({"random-exp", "--n", "3", "--exhaustive", "--seed", "0"});
  EXPECT_NE(e.out.find("graphs 8\ncertified_at_most_one 8\n"), std::string::npos);
}

TEST(Cli, StochasticCommandsAreByteIdentical) {
  const std::vector<std::vector<std::string>> commands{
      {"obs-search", samples + "/c4.json", "--seed", "11", "--placements", "8"},
      {"chain", "--n", "4", "--seed", "2", "--shuffle"},
      {"random-exp", "--n", "4", "--trials", "10", "--seed", "5"},
      {"derive-table", "--samples", "300", "--seed", "8"},
  };
  for (const auto& args : commands) {
    const auto a = run(args), b = run(args);
    EXPECT_EQ(a.code, 0) << args[0] << ": " << a.err;
    EXPECT_EQ(a.out, b.out) << args[0];
  }
}

TEST(Cli, CompleteGraphFileIsZero) {
  const auto r = run({"obs-search", samples + "/k4.json", "--seed", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("upper_bound 0\ncertified true\n"), std::string::npos);
}
