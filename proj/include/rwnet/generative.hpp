#pragma once

#include <vector>

#include "rwnet/graph.hpp"
#include "rwnet/rng.hpp"
#include "rwnet/walk_law.hpp"

namespace rwnet {

/// Parameters of the network growth model. Each step selects a vertex V
/// (uniformly or size biased), attaches a new vertex to V with probability
/// alpha, and otherwise connects V to the endpoint of a random walk from V
/// whose length follows `law`. Simple mode diverts colliding walk steps
/// (endpoint equal or already adjacent to V) into new-vertex attachments.
struct ModelConfig {
  double alpha = 0.5;
  WalkLengthLaw law = WalkLengthLaw::poisson_plus(1.0);
  Selection selection = Selection::SizeBiased;
  GraphMode mode = GraphMode::Multigraph;
};

/// Endpoint of a `steps`-step uniform random walk (multiplicity respected;
/// a self loop is two half-edges back to its vertex). steps = 0 stays put.
int simulate_walk(const Graph& g, int start, int steps, Rng& rng);

/// One growth event. NewVertex attaches a fresh vertex to v (u is the id the
/// new vertex will take, -1 when unknown); Pair joins existing vertices v and
/// u; SelfLoop adds a loop at v (multigraph only).
struct EdgeEvent {
  enum class Kind { NewVertex, Pair, SelfLoop };
  Kind kind = Kind::NewVertex;
  int v = -1;
  int u = -1;
};

/// Analytic distribution of the next growth event on state g, computed from
/// the spectral walk kernel. Probabilities sum to 1.
struct EventDistribution {
  std::vector<EdgeEvent> events;
  std::vector<double> prob;
};

EventDistribution edge_event_distribution(const Graph& g, const ModelConfig& cfg);

/// Draw of a single growth step: the event plus the latent branch indicator
/// and walk length (walk_length = -1 when no walk was drawn).
struct StepDraw {
  EdgeEvent event;
  int b = 1;
  int walk_length = -1;
};

/// Samples one step by direct simulation (vertex selection, branch coin,
/// walk stepping); never evaluates the kernel.
StepDraw sample_step(const Graph& g, const ModelConfig& cfg, Rng& rng);

struct GenerateResult {
  Graph graph;
  History history;
};

/// Runs the growth model to T edges starting from the single-edge seed.
GenerateResult rw_generate(const ModelConfig& cfg, int T, Rng& rng);

/// Preferential-attachment baseline: with probability alpha a new vertex
/// attaches to a size-biased vertex, otherwise an edge joins two vertices
/// drawn independently size biased. Coincides with the infinite-walk limit
/// of the size-biased model. Multigraph output.
GenerateResult acl_generate(double alpha, int T, Rng& rng);

/// Uniform simple graph with n vertices and m distinct edges (no
/// connectivity conditioning; isolated vertices possible).
Graph er_generate(int n, int m, Rng& rng);

/// Mean return probability of a law-length walk, grouped by degree, at a
/// sequence of growth checkpoints. One row per (checkpoint, degree) pair.
struct SelfLoopDiagnosticRow {
  int t = 0;
  int degree = 0;
  int count = 0;
  double mean_return_prob = 0.0;
};

std::vector<SelfLoopDiagnosticRow> self_loop_diagnostic(const ModelConfig& cfg, int T,
                                                        const std::vector<int>& checkpoints, Rng& rng);

}  // namespace rwnet
