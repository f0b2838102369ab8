#include <cmath>
#include <map>

#include "doctest.h"
#include "rwnet/generative.hpp"
#include "rwnet/spectral.hpp"
#include "test_support.hpp"

using namespace rwnet;

namespace {

// Canonical bucket for comparing event draws with the analytic distribution.
std::string event_key(const EdgeEvent& e) {
  switch (e.kind) {
    case EdgeEvent::Kind::NewVertex:
      return "n" + std::to_string(e.v);
    case EdgeEvent::Kind::SelfLoop:
      return "l" + std::to_string(e.v);
    case EdgeEvent::Kind::Pair: {
      const int lo = std::min(e.v, e.u), hi = std::max(e.v, e.u);
      return "p" + std::to_string(lo) + "," + std::to_string(hi);
    }
  }
  return "?";
}

}  // namespace

TEST_SUITE("generative") {

TEST_CASE("walk simulation endpoints") {
  const Graph g = testsup::two_vertex_graph();
  Rng rng(3);
  CHECK(simulate_walk(g, 0, 0, rng) == 0);
  CHECK(simulate_walk(g, 0, 3, rng) == 1);  // odd length crosses the edge
  CHECK(simulate_walk(g, 1, 2, rng) == 1);
}

TEST_CASE("event distribution sums to one") {
  for (GraphMode mode : {GraphMode::Multigraph, GraphMode::Simple}) {
    ModelConfig cfg;
    cfg.alpha = 0.35;
    cfg.law = WalkLengthLaw::poisson_plus(1.2);
    cfg.selection = Selection::SizeBiased;
    cfg.mode = mode;
    const Graph g = mode == GraphMode::Simple ? testsup::lollipop4()
                                              : build_graph({{0, 1}, {0, 1}, {1, 2}}, GraphMode::Multigraph);
    const EventDistribution dist = edge_event_distribution(g, cfg);
    double total = 0.0;
    for (double p : dist.prob) {
      CHECK(p >= 0.0);
      total += p;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("simple mode excludes loops and adjacent pairs") {
  ModelConfig cfg;
  cfg.alpha = 0.3;
  cfg.mode = GraphMode::Simple;
  cfg.selection = Selection::Uniform;
  const Graph g = testsup::lollipop4();
  const EventDistribution dist = edge_event_distribution(g, cfg);
  for (const EdgeEvent& e : dist.events) {
    CHECK(e.kind != EdgeEvent::Kind::SelfLoop);
    if (e.kind == EdgeEvent::Kind::Pair) {
      CHECK_FALSE(g.is_adjacent(e.v, e.u));
      CHECK(e.v != e.u);
    }
  }
}

TEST_CASE("fully collided state attaches with probability one") {
  // Every walk endpoint from any vertex of a triangle lies in its closed
  // neighborhood, so in simple mode each step must open a new vertex.
  ModelConfig cfg;
  cfg.alpha = 0.25;
  cfg.mode = GraphMode::Simple;
  cfg.selection = Selection::Uniform;
  const EventDistribution dist = edge_event_distribution(testsup::complete_graph(3), cfg);
  REQUIRE(dist.events.size() == 3);
  for (std::size_t i = 0; i < dist.events.size(); ++i) {
    CHECK(dist.events[i].kind == EdgeEvent::Kind::NewVertex);
    CHECK(dist.prob[i] == doctest::Approx(1.0 / 3.0));
  }
}

TEST_CASE("two-vertex multigraph events in closed form") {
  ModelConfig cfg;
  cfg.alpha = 0.3;
  cfg.law = WalkLengthLaw::poisson_plus(1.0);
  cfg.selection = Selection::Uniform;
  cfg.mode = GraphMode::Multigraph;
  const Graph g = testsup::two_vertex_graph();
  const double q_uv = 0.5 * (1.0 + std::exp(-2.0));
  const double q_uu = 1.0 - q_uv;
  std::map<std::string, double> want = {
      {"n0", 0.3 * 0.5},          {"n1", 0.3 * 0.5},          {"p0,1", 0.7 * q_uv},
      {"l0", 0.7 * 0.5 * q_uu},   {"l1", 0.7 * 0.5 * q_uu},
  };
  const EventDistribution dist = edge_event_distribution(g, cfg);
  REQUIRE(dist.events.size() == want.size());
  for (std::size_t i = 0; i < dist.events.size(); ++i)
    CHECK(dist.prob[i] == doctest::Approx(want.at(event_key(dist.events[i]))).epsilon(1e-12));
}

TEST_CASE("direct simulation matches the analytic distribution") {
  ModelConfig cfg;
  cfg.alpha = 0.4;
  cfg.law = WalkLengthLaw::poisson_plus(1.0);
  cfg.selection = Selection::SizeBiased;
  cfg.mode = GraphMode::Multigraph;
  const Graph g = testsup::lollipop4(GraphMode::Multigraph);
  const EventDistribution dist = edge_event_distribution(g, cfg);
  std::map<std::string, double> want, got;
  for (std::size_t i = 0; i < dist.events.size(); ++i) want[event_key(dist.events[i])] += dist.prob[i];
  Rng rng(55);
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const StepDraw d = sample_step(g, cfg, rng);
    got[event_key(d.event)] += 1.0 / n;
    if (d.b == 1) CHECK(d.walk_length == -1);
    if (d.b == 0) CHECK(d.walk_length >= 1);
  }
  double tv = 0.0;
  for (const auto& kv : want) tv += std::abs(kv.second - (got.count(kv.first) ? got.at(kv.first) : 0.0));
  for (const auto& kv : got)
    if (!want.count(kv.first)) tv += kv.second;
  CHECK(tv * 0.5 < 0.01);
}

TEST_CASE("simple-mode collisions open new vertices with a drawn walk") {
  ModelConfig cfg;
  cfg.alpha = 0.2;
  cfg.law = WalkLengthLaw::poisson_plus(1.0);
  cfg.selection = Selection::Uniform;
  cfg.mode = GraphMode::Simple;
  const Graph g = testsup::star_graph(3);
  Rng rng(11);
  bool saw_collision = false;
  for (int i = 0; i < 500 && !saw_collision; ++i) {
    const StepDraw d = sample_step(g, cfg, rng);
    if (d.event.kind == EdgeEvent::Kind::NewVertex && d.b == 0) {
      CHECK(d.walk_length >= 1);
      saw_collision = true;
    }
  }
  CHECK(saw_collision);
}

TEST_CASE("growth runs have coherent histories") {
  ModelConfig cfg;
  cfg.alpha = 0.5;
  cfg.law = WalkLengthLaw::poisson_plus(2.0);
  cfg.selection = Selection::SizeBiased;
  cfg.mode = GraphMode::Multigraph;
  Rng rng(17);
  const GenerateResult res = rw_generate(cfg, 300, rng);
  CHECK(res.graph.edge_count() == 300);
  CHECK(res.graph.is_connected());
  REQUIRE(res.history.b_flags.size() == 300);
  REQUIRE(res.history.walk_lengths.size() == 300);
  CHECK(res.history.b_flags[0] == 1);
  CHECK(res.history.walk_lengths[0] == -1);
  int new_vertices = 0;
  for (std::size_t t = 1; t < res.history.b_flags.size(); ++t) {
    if (res.history.b_flags[t] == 1) {
      CHECK(res.history.walk_lengths[t] == -1);  // multigraph attach steps draw no walk
      ++new_vertices;
    } else {
      CHECK(res.history.walk_lengths[t] >= 1);
    }
  }
  CHECK(res.graph.vertex_count() == 2 + new_vertices);
}

TEST_CASE("simple-mode growth keeps the graph simple and records collisions") {
  ModelConfig cfg;
  cfg.alpha = 0.5;
  cfg.law = WalkLengthLaw::poisson_plus(2.0);
  cfg.selection = Selection::Uniform;
  cfg.mode = GraphMode::Simple;
  Rng rng(18);
  const GenerateResult res = rw_generate(cfg, 200, rng);
  CHECK(res.graph.mode() == GraphMode::Simple);
  CHECK(res.graph.edge_count() == 200);
  CHECK(res.graph.is_connected());
  CHECK(res.history.b_flags[0] == 1);
  // Replay the insertion order: an attach step must open a vertex without a
  // walk, a collision opens one with a recorded walk, and a pair step opens
  // nothing.
  std::vector<char> seen(res.graph.vertex_count(), 0);
  seen[res.graph.edge(0).first] = 1;
  seen[res.graph.edge(0).second] = 1;
  bool saw_collision = false;
  for (int t = 1; t < res.graph.edge_count(); ++t) {
    const auto [u, v] = res.graph.edge(t);
    const bool opens = !seen[u] || !seen[v];
    if (res.history.b_flags[t] == 1) {
      CHECK(opens);
      CHECK(res.history.walk_lengths[t] == -1);
    } else if (opens) {
      CHECK(res.history.walk_lengths[t] >= 1);
      saw_collision = true;
    } else {
      CHECK(res.history.walk_lengths[t] >= 1);
    }
    seen[u] = 1;
    seen[v] = 1;
  }
  CHECK(saw_collision);
}

TEST_CASE("pure attachment growth is a tree process") {
  ModelConfig cfg;
  cfg.alpha = 1.0;
  cfg.selection = Selection::SizeBiased;
  cfg.mode = GraphMode::Multigraph;
  Rng rng(19);
  const GenerateResult res = rw_generate(cfg, 500, rng);
  CHECK(res.graph.vertex_count() == 501);
  for (int b : res.history.b_flags) CHECK(b == 1);
}

TEST_CASE("attachment baseline and uniform baseline shapes") {
  Rng rng(20);
  const GenerateResult acl = acl_generate(1.0, 400, rng);
  CHECK(acl.graph.edge_count() == 400);
  CHECK(acl.graph.vertex_count() == 401);

  Rng rng2(21);
  const Graph er = er_generate(10, 20, rng2);
  CHECK(er.vertex_count() == 10);
  CHECK(er.edge_count() == 20);
  for (const auto& [u, v] : er.edges()) CHECK(u != v);
  for (int u = 0; u < 10; ++u)
    for (int v = u + 1; v < 10; ++v) CHECK(er.multiplicity(u, v) <= 1);
  CHECK_THROWS(er_generate(4, 7, rng2));  // only 6 distinct pairs exist
}

TEST_CASE("generation is deterministic per seed") {
  ModelConfig cfg;
  cfg.alpha = 0.6;
  cfg.law = WalkLengthLaw::neg_bin_plus(2.0, 0.3);
  cfg.selection = Selection::Uniform;
  cfg.mode = GraphMode::Multigraph;
  Rng a(1234), b(1234), c(1235);
  const GenerateResult ra = rw_generate(cfg, 120, a);
  const GenerateResult rb = rw_generate(cfg, 120, b);
  const GenerateResult rc = rw_generate(cfg, 120, c);
  CHECK(ra.graph.edges() == rb.graph.edges());
  CHECK(ra.history.b_flags == rb.history.b_flags);
  CHECK(ra.history.walk_lengths == rb.history.walk_lengths);
  CHECK(ra.graph.edges() != rc.graph.edges());
}

TEST_CASE("self loop diagnostic shape") {
  ModelConfig cfg;
  cfg.alpha = 0.5;
  cfg.law = WalkLengthLaw::poisson_plus(1.0);
  cfg.selection = Selection::SizeBiased;
  cfg.mode = GraphMode::Multigraph;
  Rng rng(22);
  const auto rows = self_loop_diagnostic(cfg, 60, {30, 60}, rng);
  CHECK_FALSE(rows.empty());
  int count30 = 0, count60 = 0;
  for (const auto& r : rows) {
    CHECK((r.t == 30 || r.t == 60));
    CHECK(r.degree >= 1);
    CHECK(r.count >= 1);
    CHECK(r.mean_return_prob >= 0.0);
    CHECK(r.mean_return_prob <= 1.0);
    (r.t == 30 ? count30 : count60) += r.count;
  }
  CHECK(count30 >= 2);
  CHECK(count60 >= count30);
}

}  // TEST_SUITE
