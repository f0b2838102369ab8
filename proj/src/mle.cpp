#include "rwnet/mle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "rwnet/spectral.hpp"

namespace rwnet {

std::vector<int> detect_b_flags(const Graph& g) {
  if (g.mode() == GraphMode::Simple)
    throw std::invalid_argument("detect_b_flags: branch recovery is only exact for multigraph growth");
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<int> flags;
  flags.reserve(g.edge_count());
  for (const auto& [u, v] : g.edges()) {
    flags.push_back(!seen[u] || !seen[v] ? 1 : 0);
    seen[u] = 1;
    seen[v] = 1;
  }
  return flags;
}

double estimate_alpha(const Graph& g) {
  if (g.mode() == GraphMode::Simple)
    throw std::invalid_argument("estimate_alpha: observed-order estimator assumes multigraph growth");
  const int T = g.edge_count();
  if (T < 2) throw std::invalid_argument("estimate_alpha: need at least two edges");
  return static_cast<double>(g.vertex_count() - 2) / static_cast<double>(T - 1);
}

LambdaObjective::LambdaObjective(const Graph& g, const LambdaFitOptions& opts) {
  if (g.mode() == GraphMode::Simple)
    throw std::invalid_argument("lambda objective: observed-order estimator assumes multigraph growth");
  const int T = g.edge_count();
  if (T < 2) throw std::invalid_argument("lambda objective: need at least two edges");

  double lambda_max = opts.lambda_max;
  if (lambda_max <= 0.0) lambda_max = 4.0 * std::max(1, graph_metrics(g).diameter);
  // Support long enough that the Poisson tail above it is < 1e-12 for every
  // lambda in the search bracket.
  max_length_ = static_cast<int>(std::ceil(lambda_max + 12.0 * std::sqrt(lambda_max + 1.0) + 20.0));

  const std::vector<int> flags = detect_b_flags(g);
  Graph prefix(GraphMode::Multigraph);
  // Map original ids to prefix ids as vertices appear.
  std::vector<int> local(g.vertex_count(), -1);
  {
    const auto [a0, b0] = g.edge(0);
    local[a0] = prefix.add_vertex();
    if (local[b0] < 0) local[b0] = prefix.add_vertex();
    prefix.add_edge(local[a0], local[b0]);
  }

  for (int s = 1; s < T; ++s) {
    const auto [ou, ov] = g.edge(s);
    if (flags[s] == 0) {
      const int u = local[ou];
      const int v = local[ov];
      const bool self_loop = (u == v);
      if (!self_loop || opts.include_self_loops) {
        const CsrGraph csr = CsrGraph::from_graph(prefix);
        const double nverts = prefix.vertex_count();
        const double vol = static_cast<double>(prefix.volume());
        auto weight = [&](int x) {
          return opts.selection == Selection::Uniform ? 1.0 / nverts : prefix.degree(x) / vol;
        };
        std::vector<double> prof(max_length_, 0.0);
        const Eigen::MatrixXd ru = power_rows(csr, u, max_length_);
        if (self_loop) {
          for (int l = 0; l < max_length_; ++l) prof[l] = weight(u) * ru(l, u);
        } else {
          const Eigen::MatrixXd rv = power_rows(csr, v, max_length_);
          for (int l = 0; l < max_length_; ++l) prof[l] = weight(u) * ru(l, v) + weight(v) * rv(l, u);
        }
        profiles_.push_back(std::move(prof));
      }
    }
    // Extend the prefix with edge s.
    for (int ow : {ou, ov}) {
      if (local[ow] < 0) local[ow] = prefix.add_vertex();
    }
    prefix.add_edge(local[ou], local[ov]);
  }
}

double LambdaObjective::eval(double lambda) const {
  if (lambda < 0.0) return -std::numeric_limits<double>::infinity();
  // Poisson weights over lengths 1..L computed iteratively.
  std::vector<double> w(max_length_);
  double cur = std::exp(-lambda);
  for (int l = 1; l <= max_length_; ++l) {
    w[l - 1] = cur;
    cur *= lambda / l;
  }
  double total = 0.0;
  for (const auto& prof : profiles_) {
    double mass = 0.0;
    for (int l = 0; l < max_length_; ++l) mass += w[l] * prof[l];
    if (mass <= 0.0) return -std::numeric_limits<double>::infinity();
    total += std::log(mass);
  }
  return total;
}

double lambda_loglik(const Graph& g, double lambda, const LambdaFitOptions& opts) {
  LambdaFitOptions local = opts;
  if (local.lambda_max <= 0.0) local.lambda_max = std::max(4.0, 2.0 * lambda);
  return LambdaObjective(g, local).eval(lambda);
}

LambdaEstimate estimate_lambda(const Graph& g, const LambdaFitOptions& opts) {
  LambdaFitOptions local = opts;
  if (local.lambda_max <= 0.0) local.lambda_max = 4.0 * std::max(1, graph_metrics(g).diameter);
  const LambdaObjective obj(g, local);
  if (obj.walk_steps() == 0)
    throw std::invalid_argument("estimate_lambda: no walk steps observed; lambda is unidentifiable");

  // Grid pre-scan, then golden-section refinement in the best bracket.
  const int grid = std::max(4, local.grid_points);
  double best_x = 0.0;
  double best_f = -std::numeric_limits<double>::infinity();
  int best_i = 0;
  for (int i = 0; i < grid; ++i) {
    const double x = local.lambda_max * static_cast<double>(i) / static_cast<double>(grid - 1);
    const double f = obj.eval(x);
    if (f > best_f) {
      best_f = f;
      best_x = x;
      best_i = i;
    }
  }
  double lo = local.lambda_max * static_cast<double>(std::max(0, best_i - 1)) / static_cast<double>(grid - 1);
  double hi = local.lambda_max * static_cast<double>(std::min(grid - 1, best_i + 1)) / static_cast<double>(grid - 1);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = obj.eval(c), fd = obj.eval(d);
  while (b - a > local.tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = obj.eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = obj.eval(d);
    }
  }
  LambdaEstimate est;
  est.lambda = 0.5 * (a + b);
  est.loglik = obj.eval(est.lambda);
  if (best_f > est.loglik) {
    est.lambda = best_x;
    est.loglik = best_f;
  }
  est.walk_steps = obj.walk_steps();
  est.lambda_max = local.lambda_max;
  return est;
}

}  // namespace rwnet
