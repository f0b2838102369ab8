#include "rwnet/netstats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rwnet/generative.hpp"
#include "rwnet/rng.hpp"

namespace rwnet {

FitStatistics compute_fit_statistics(const Graph& g) {
  if (g.mode() == GraphMode::Multigraph)
    throw std::invalid_argument(
        "compute_fit_statistics: statistics are defined for simple graphs; use simple_skeleton first");
  const int n = g.vertex_count();
  const int m = g.edge_count();

  FitStatistics out;
  out.degree.kind = StatKind::Degree;
  out.shared_partners.kind = StatKind::SharedPartners;
  out.path_length.kind = StatKind::PathLength;

  for (int v = 0; v < n; ++v) out.degree.values[g.degree(v)] += 1.0 / n;

  std::vector<std::vector<int>> sorted_adj(n);
  for (int v = 0; v < n; ++v) {
    sorted_adj[v] = g.neighbors(v);
    std::sort(sorted_adj[v].begin(), sorted_adj[v].end());
  }
  for (int e = 0; e < m; ++e) {
    auto [u, v] = g.edge(e);
    const auto& a = sorted_adj[u];
    const auto& b = sorted_adj[v];
    int shared = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i] < b[j])
        ++i;
      else if (a[i] > b[j])
        ++j;
      else {
        ++shared;
        ++i;
        ++j;
      }
    }
    out.shared_partners.values[shared] += 1.0 / m;
  }

  if (n >= 2) {
    const double pairs = 0.5 * n * (n - 1.0);
    for (int v = 0; v < n; ++v) {
      std::vector<int> dist = bfs_distances(g, v);
      for (int u = v + 1; u < n; ++u) {
        int key = dist[u] >= 0 ? dist[u] : kUnreachableKey;
        out.path_length.values[key] += 1.0 / pairs;
      }
    }
  }
  return out;
}

double tv_distance(const StatVector& a, const StatVector& b) {
  if (a.kind != b.kind) throw std::invalid_argument("tv_distance: statistic kinds differ");
  double sa = 0.0, sb = 0.0;
  for (const auto& [k, v] : a.values) sa += v;
  for (const auto& [k, v] : b.values) sb += v;
  if (sa <= 0.0 && sb <= 0.0) return 0.0;
  if (sa <= 0.0 || sb <= 0.0) return 1.0;
  double tv = 0.0;
  auto ia = a.values.begin();
  auto ib = b.values.begin();
  while (ia != a.values.end() || ib != b.values.end()) {
    if (ib == b.values.end() || (ia != a.values.end() && ia->first < ib->first)) {
      tv += std::abs(ia->second / sa);
      ++ia;
    } else if (ia == a.values.end() || ib->first < ia->first) {
      tv += std::abs(ib->second / sb);
      ++ib;
    } else {
      tv += std::abs(ia->second / sa - ib->second / sb);
      ++ia;
      ++ib;
    }
  }
  return 0.5 * tv;
}

double rho_of_alpha(double alpha) {
  if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("rho_of_alpha: alpha must lie in [0, 1]");
  return 1.0 + alpha / (2.0 - alpha);
}

double yule_simon_pmf(int d, double rho) {
  if (d < 1) throw std::invalid_argument("yule_simon_pmf: degree must be at least 1");
  if (rho <= 0.0) throw std::invalid_argument("yule_simon_pmf: rho must be positive");
  return std::exp(std::log(rho) + std::lgamma(d) + std::lgamma(1.0 + rho) - std::lgamma(d + 1.0 + rho));
}

double hyp2f1(double a, double b, double c, double z) {
  if (std::abs(z) > 1.0) throw std::invalid_argument("hyp2f1: series needs |z| <= 1");
  if (std::abs(z) == 1.0 && c - a - b <= 0.0)
    throw std::invalid_argument("hyp2f1: series diverges at the unit boundary");
  // Terms decay only like i^{-1-(c-a-b)} at z = 1; Gauss's summation gives the
  // boundary value directly.
  if (z == 1.0)
    return std::exp(std::lgamma(c) + std::lgamma(c - a - b) - std::lgamma(c - a) - std::lgamma(c - b));
  double term = 1.0;
  double sum = 1.0;
  for (int i = 0; i < 2000000; ++i) {
    term *= (a + i) * (b + i) / ((c + i) * (i + 1.0)) * z;
    sum += term;
    if (std::abs(term) <= 1e-15 * std::abs(sum)) return sum;
  }
  throw std::runtime_error("hyp2f1: series failed to converge");
}

double scaled_degree_moment(int j, int k, double alpha) {
  if (j < 2) throw std::invalid_argument("scaled_degree_moment: defined for arrival index j >= 2");
  if (k < 0) throw std::invalid_argument("scaled_degree_moment: moment order must be nonnegative");
  if (k == 0) return 1.0;
  if (alpha <= 0.0 || alpha > 1.0)
    throw std::invalid_argument("scaled_degree_moment: alpha must lie in (0, 1]");
  const double rho = rho_of_alpha(alpha);
  const double kr = k / rho;
  double lg = std::lgamma(k + 1.0) + std::lgamma(j - 1.0) - std::lgamma(j - 1.0 + kr);
  double hyp = hyp2f1(1.0 + kr, kr, j - 1.0 + kr, 1.0 - alpha);
  return std::exp(lg + kr * std::log(alpha)) * hyp;
}

PpdResult ppd_run(const Graph& data, const std::vector<ChainSample>& chain, const PpdOptions& opts) {
  if (opts.samples < 1) throw std::invalid_argument("ppd_run: need at least one sample");
  if (opts.model != PpdModel::Er && chain.empty())
    throw std::invalid_argument("ppd_run: parameter chain is empty");
  const FitStatistics data_stats = compute_fit_statistics(data);
  const int t_target = data.edge_count();
  const int n_target = data.vertex_count();

  PpdResult out;
  out.tv_degree.reserve(opts.samples);
  out.tv_shared.reserve(opts.samples);
  out.tv_path.reserve(opts.samples);

  for (int s = 0; s < opts.samples; ++s) {
    Rng rng = Rng::substream(opts.seed, 12, static_cast<std::uint64_t>(s));
    Graph sim(GraphMode::Simple);
    switch (opts.model) {
      case PpdModel::RwUniform:
      case PpdModel::RwSizeBiased: {
        const ChainSample& cs = chain[rng.uniform_int(static_cast<int>(chain.size()))];
        ModelConfig cfg;
        cfg.alpha = cs.alpha;
        cfg.law = WalkLengthLaw::poisson_plus(cs.lambda);
        cfg.selection =
            opts.model == PpdModel::RwUniform ? Selection::Uniform : Selection::SizeBiased;
        cfg.mode = GraphMode::Simple;
        sim = rw_generate(cfg, t_target, rng).graph;
        break;
      }
      case PpdModel::Acl: {
        const ChainSample& cs = chain[rng.uniform_int(static_cast<int>(chain.size()))];
        sim = acl_generate(cs.alpha, t_target, rng).graph.simple_skeleton();
        break;
      }
      case PpdModel::Er:
        sim = er_generate(n_target, t_target, rng);
        break;
    }
    FitStatistics sim_stats = compute_fit_statistics(sim);
    out.tv_degree.push_back(tv_distance(data_stats.degree, sim_stats.degree));
    out.tv_shared.push_back(tv_distance(data_stats.shared_partners, sim_stats.shared_partners));
    out.tv_path.push_back(tv_distance(data_stats.path_length, sim_stats.path_length));
  }

  auto mean_sd = [](const std::vector<double>& xs, double& mean, double& sd) {
    mean = 0.0;
    for (double x : xs) mean += x;
    mean /= xs.size();
    double v = 0.0;
    for (double x : xs) v += (x - mean) * (x - mean);
    sd = xs.size() > 1 ? std::sqrt(v / (xs.size() - 1.0)) : 0.0;
  };
  mean_sd(out.tv_degree, out.mean_tv_degree, out.sd_tv_degree);
  mean_sd(out.tv_shared, out.mean_tv_shared, out.sd_tv_shared);
  mean_sd(out.tv_path, out.mean_tv_path, out.sd_tv_path);
  return out;
}

}  // namespace rwnet
