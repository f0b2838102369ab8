#include "rwnet/spectral.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "rwnet/rng.hpp"

namespace rwnet {

namespace {

void require_spectral_ready(const Graph& g) {
  if (g.vertex_count() == 0) throw std::invalid_argument("spectral: empty graph");
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) == 0) throw std::invalid_argument("spectral: isolated vertex (degree 0)");
  }
  if (!g.is_connected()) throw std::invalid_argument("spectral: graph must be connected");
}

}  // namespace

Spectrum spectrum(const Graph& g) {
  require_spectral_ready(g);
  const int n = g.vertex_count();
  Eigen::VectorXd deg(n);
  for (int v = 0; v < n; ++v) deg[v] = g.degree(v);
  Eigen::MatrixXd lap = Eigen::MatrixXd::Identity(n, n);
  for (int u = 0; u < n; ++u) {
    const double su = 1.0 / std::sqrt(deg[u]);
    for (int w : g.neighbors(u)) lap(u, w) -= su / std::sqrt(deg[w]);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
  if (solver.info() != Eigen::Success) throw std::runtime_error("spectral: eigensolver failed");
  Spectrum s;
  s.eta = solver.eigenvalues();
  s.vectors = solver.eigenvectors();
  s.deg = deg;
  for (int i = 0; i < n; ++i) {
    if (s.eta[i] < -1e-9 || s.eta[i] > 2.0 + 1e-9)
      throw std::runtime_error("spectral: eigenvalue outside [0, 2] beyond tolerance");
    s.eta[i] = std::min(2.0, std::max(0.0, s.eta[i]));
  }
  return s;
}

std::shared_ptr<const Spectrum> spectrum_cached(const Graph& g) {
  static std::unordered_map<std::uint64_t, std::shared_ptr<const Spectrum>> cache;
  std::uint64_t key = g.structural_hash();
  key = splitmix64(key ^ (static_cast<std::uint64_t>(g.vertex_count()) << 32) ^
                   static_cast<std::uint64_t>(g.edge_count()));
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  if (cache.size() > 2048) cache.clear();
  auto sp = std::make_shared<const Spectrum>(spectrum(g));
  cache.emplace(key, sp);
  return sp;
}

Eigen::MatrixXd rw_prob_matrix(const Graph& g, const WalkLengthLaw& law) {
  const auto sp = spectrum_cached(g);
  const int n = g.vertex_count();
  Eigen::VectorXd h(n);
  for (int i = 0; i < n; ++i) h[i] = law.pgf(1.0 - sp->eta[i]);
  Eigen::MatrixXd core = sp->vectors * h.asDiagonal() * sp->vectors.transpose();
  Eigen::VectorXd sq = sp->deg.array().sqrt();
  Eigen::MatrixXd q = sq.cwiseInverse().asDiagonal() * core * sq.asDiagonal();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (q(i, j) < 0.0) {
        if (q(i, j) < -1e-10) throw std::runtime_error("rw_prob_matrix: negative entry beyond round-off tolerance");
        q(i, j) = 0.0;
      }
    }
    const double rs = q.row(i).sum();
    if (rs > 0.0) q.row(i) /= rs;
  }
  return q;
}

Eigen::MatrixXd series_prob_matrix(const Graph& g, const WalkLengthLaw& law, double tol) {
  require_spectral_ready(g);
  const CsrGraph csr = CsrGraph::from_graph(g);
  std::vector<int> starts(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) starts[v] = v;
  return mixed_rows(csr, starts, truncate_law(law, tol));
}

Eigen::MatrixXd fixed_step_matrix(const Graph& g, int k) {
  if (k < 0) throw std::invalid_argument("fixed_step_matrix: k must be nonnegative");
  const CsrGraph csr = CsrGraph::from_graph(g);
  const int n = g.vertex_count();
  TruncatedLaw law;
  if (k == 0) {
    law.weight0 = 1.0;
  } else {
    law.weights.assign(k, 0.0);
    law.weights[k - 1] = 1.0;
  }
  std::vector<int> starts(n);
  for (int v = 0; v < n; ++v) starts[v] = v;
  return mixed_rows(csr, starts, law);
}

Eigen::VectorXd degree_biased_distribution(const Graph& g) {
  if (g.edge_count() == 0) throw std::invalid_argument("degree_biased_distribution: graph has no edges");
  const int n = g.vertex_count();
  Eigen::VectorXd s(n);
  for (int v = 0; v < n; ++v) s[v] = static_cast<double>(g.degree(v));
  return s / static_cast<double>(g.volume());
}

MixingTimes mixing_time_l2(const Graph& g, double threshold, int t_max) {
  require_spectral_ready(g);
  const CsrGraph csr = CsrGraph::from_graph(g);
  const int n = csr.n;
  Eigen::VectorXd pi(n);
  for (int v = 0; v < n; ++v) pi[v] = 1.0 / csr.inv_deg[v];
  pi /= pi.sum();
  MixingTimes out;
  out.t_max = t_max;
  out.steps.assign(n, -1);
  Eigen::VectorXd x(n), y(n);
  for (int src = 0; src < n; ++src) {
    x.setZero();
    x[src] = 1.0;
    for (int t = 1; t <= t_max; ++t) {
      y.setZero();
      for (int u = 0; u < n; ++u) {
        if (x[u] == 0.0) continue;
        const double c = x[u] * csr.inv_deg[u];
        for (int e = csr.offset[u]; e < csr.offset[u + 1]; ++e) y[csr.target[e]] += c;
      }
      x.swap(y);
      if ((x - pi).norm() <= threshold) {
        out.steps[src] = t;
        break;
      }
    }
  }
  double sum = 0.0;
  for (int v = 0; v < n; ++v) {
    if (out.steps[v] >= 0) {
      sum += out.steps[v];
      ++out.finite_count;
    }
  }
  out.mean_finite = out.finite_count > 0 ? sum / out.finite_count : 0.0;
  return out;
}

CsrGraph CsrGraph::from_graph(const Graph& g) {
  CsrGraph c;
  c.n = g.vertex_count();
  c.offset.assign(c.n + 1, 0);
  for (int v = 0; v < c.n; ++v) c.offset[v + 1] = c.offset[v] + g.degree(v);
  c.target.resize(c.offset[c.n]);
  c.inv_deg.assign(c.n, 0.0);
  for (int v = 0; v < c.n; ++v) {
    int pos = c.offset[v];
    for (int w : g.neighbors(v)) c.target[pos++] = w;
    if (g.degree(v) > 0) c.inv_deg[v] = 1.0 / g.degree(v);
  }
  return c;
}

Eigen::MatrixXd mixed_rows(const CsrGraph& g, const std::vector<int>& starts, const TruncatedLaw& law) {
  const int S = static_cast<int>(starts.size());
  const int n = g.n;
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(S, n);
  Eigen::MatrixXd Y(S, n);
  Eigen::MatrixXd R = Eigen::MatrixXd::Zero(S, n);
  Eigen::VectorXd col(S);
  for (int s = 0; s < S; ++s) X(s, starts[s]) = 1.0;
  if (law.weight0 != 0.0) {
    for (int s = 0; s < S; ++s) R(s, starts[s]) = law.weight0;
  }
  for (std::size_t li = 0; li < law.weights.size(); ++li) {
    Y.setZero();
    for (int u = 0; u < n; ++u) {
      const double d = g.inv_deg[u];
      if (d == 0.0) continue;
      if ((X.col(u).array() == 0.0).all()) continue;
      col = X.col(u) * d;
      for (int e = g.offset[u]; e < g.offset[u + 1]; ++e) Y.col(g.target[e]) += col;
    }
    X.swap(Y);
    const double w = law.weights[li];
    if (w != 0.0) R += w * X;
  }
  return R;
}

Eigen::MatrixXd power_rows(const CsrGraph& g, int start, int L) {
  const int n = g.n;
  Eigen::MatrixXd R = Eigen::MatrixXd::Zero(L, n);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n), y(n);
  x[start] = 1.0;
  for (int l = 1; l <= L; ++l) {
    y.setZero();
    for (int u = 0; u < n; ++u) {
      if (x[u] == 0.0) continue;
      const double c = x[u] * g.inv_deg[u];
      for (int e = g.offset[u]; e < g.offset[u + 1]; ++e) y[g.target[e]] += c;
    }
    x.swap(y);
    R.row(l - 1) = x;
  }
  return R;
}

}  // namespace rwnet
