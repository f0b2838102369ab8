#include "rwnet/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "rwnet/bridge.hpp"
#include "rwnet/generative.hpp"
#include "rwnet/graph.hpp"
#include "rwnet/graph_io.hpp"
#include "rwnet/mle.hpp"
#include "rwnet/netstats.hpp"
#include "rwnet/pmcmc.hpp"
#include "rwnet/spectral.hpp"

namespace rwnet {

namespace {

using nlohmann::json;

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

WalkLengthLaw parse_law(const std::string& text) {
  auto colon = text.find(':');
  std::string name = text.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (name == "poisson") return WalkLengthLaw::poisson_plus(std::stod(arg));
  if (name == "negbin") {
    auto comma = arg.find(',');
    if (comma == std::string::npos) throw CLI::ValidationError("--law", "negbin needs r,p");
    return WalkLengthLaw::neg_bin_plus(std::stod(arg.substr(0, comma)), std::stod(arg.substr(comma + 1)));
  }
  if (name == "fixed") return WalkLengthLaw::fixed_length(std::stoi(arg));
  if (name == "limit") return WalkLengthLaw::limit_degenerate();
  throw CLI::ValidationError("--law", "expected poisson:L, negbin:R,P, fixed:K, or limit");
}

Selection parse_selection(const std::string& s) {
  if (s == "uniform") return Selection::Uniform;
  if (s == "size-biased" || s == "sb") return Selection::SizeBiased;
  throw CLI::ValidationError("--selection", "expected uniform or size-biased");
}

GraphMode parse_mode(const std::string& s) {
  if (s == "simple") return GraphMode::Simple;
  if (s == "multigraph" || s == "multi") return GraphMode::Multigraph;
  throw CLI::ValidationError("--mode", "expected simple or multigraph");
}

Graph load_graph(const std::string& path, GraphMode mode) {
  if (path == "-") return read_edge_list(std::cin, mode).graph;
  return read_edge_list_file(path, mode).graph;
}

// Every command writes to one primary sink; "-" means stdout.
class OutSink {
 public:
  explicit OutSink(const std::string& path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

// One-line echo of every option value in effect for the invoked subcommand,
// defaults included, so any output file names the run that produced it.
// File-system locations are left out: they are environment, not model config,
// and the input is already identified by its hash.
std::string config_echo(const CLI::App& cmd) {
  static const char* skip[] = {"help", "output", "input", "history-output", "histories", "chain"};
  const std::string ini = cmd.config_to_str(true, false);
  std::string out;
  std::istringstream in(ini);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || eq + 1 == line.size()) continue;
    const std::string key = line.substr(0, eq);
    bool skipped = false;
    for (const char* s : skip) skipped = skipped || key == s;
    if (skipped) continue;
    if (!out.empty()) out += ' ';
    out += line;
  }
  return out;
}

json meta_json(const std::string& command, std::uint64_t seed, const Graph* input, const std::string& cfg) {
  json meta;
  meta["tool"] = "rwnet";
  meta["version"] = kVersion;
  meta["command"] = command;
  meta["seed"] = seed;
  if (input) meta["input_hash"] = hash_hex(input->structural_hash());
  if (!cfg.empty()) meta["config"] = cfg;
  return meta;
}

std::vector<std::string> text_header(const std::string& command, std::uint64_t seed, const Graph* input,
                                     const std::string& cfg) {
  std::vector<std::string> lines;
  lines.push_back(std::string("rwnet ") + kVersion);
  lines.push_back("command: " + command);
  lines.push_back("seed: " + std::to_string(seed));
  if (input) lines.push_back("input-hash: " + hash_hex(input->structural_hash()));
  if (!cfg.empty()) lines.push_back("config: " + cfg);
  return lines;
}

json stat_vector_json(const StatVector& sv) {
  json out = json::object();
  for (const auto& [k, v] : sv.values) {
    if (k == kUnreachableKey)
      out["inf"] = v;
    else
      out[std::to_string(k)] = v;
  }
  return out;
}

json summary_json(const ChainSummary& s) {
  json out;
  out["mean"] = s.mean;
  out["sd"] = s.sd;
  out["q025"] = s.q025;
  out["median"] = s.median;
  out["q975"] = s.q975;
  out["ess"] = s.ess;
  out["degenerate"] = s.degenerate;
  out["acf"] = s.acf;
  return out;
}

// Burn-in runs as extra iterations ahead of the requested chain length, so the
// written chain always has ceil(iterations / thin) rows.
Chain retained_chain(Chain chain, int burn, int thin) {
  Chain out;
  out.acceptance_rate = chain.acceptance_rate;
  out.tail_warnings = chain.tail_warnings;
  out.last_history = std::move(chain.last_history);
  for (std::size_t i = static_cast<std::size_t>(burn); i < chain.samples.size();
       i += static_cast<std::size_t>(thin))
    out.samples.push_back(chain.samples[i]);
  return out;
}

void write_chain_csv(std::ostream& os, const Chain& chain, const std::string& command,
                     std::uint64_t seed, const Graph& input, const std::string& cfg) {
  for (const auto& line : text_header(command, seed, &input, cfg)) os << "# " << line << "\n";
  os << "iteration,alpha,lambda,loglik_estimate,accepted\n";
  for (std::size_t i = 0; i < chain.samples.size(); ++i) {
    const ChainSample& cs = chain.samples[i];
    os << (i + 1) << ',' << cs.alpha << ',' << cs.lambda << ',' << cs.loglik << ','
       << (cs.accepted ? 1 : 0) << "\n";
  }
}

std::vector<ChainSample> read_chain_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open chain file: " + path);
  std::vector<ChainSample> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("iteration", 0) == 0) continue;
    std::istringstream ls(line);
    std::string field;
    ChainSample cs;
    std::getline(ls, field, ',');  // iteration, unused
    std::getline(ls, field, ',');
    cs.alpha = std::stod(field);
    std::getline(ls, field, ',');
    cs.lambda = std::stod(field);
    std::getline(ls, field, ',');
    cs.loglik = std::stod(field);
    std::getline(ls, field, ',');
    cs.accepted = field == "1";
    out.push_back(cs);
  }
  if (out.empty()) throw std::runtime_error("chain file has no samples: " + path);
  return out;
}

struct CommonModelFlags {
  double alpha = 0.5;
  std::string law = "poisson:1.0";
  std::string selection = "size-biased";
  std::string mode = "multigraph";

  void attach(CLI::App* cmd) {
    cmd->add_option("--alpha", alpha, "attachment probability");
    cmd->add_option("--law", law, "walk-length law (poisson:L, negbin:R,P, fixed:K, limit)");
    cmd->add_option("--selection", selection, "vertex selection (uniform, size-biased)");
    cmd->add_option("--mode", mode, "graph mode (simple, multigraph)");
  }
  ModelConfig config() const {
    ModelConfig cfg;
    cfg.alpha = alpha;
    cfg.law = parse_law(law);
    cfg.selection = parse_selection(selection);
    cfg.mode = parse_mode(mode);
    return cfg;
  }
};

struct PriorFlags {
  Priors priors;
  void attach(CLI::App* cmd) {
    cmd->add_option("--a-alpha", priors.a_alpha, "Beta prior shape on alpha");
    cmd->add_option("--b-alpha", priors.b_alpha, "Beta prior shape on 1 - alpha");
    cmd->add_option("--a-lambda", priors.a_lambda, "Gamma prior shape on lambda");
    cmd->add_option("--b-lambda", priors.b_lambda, "Gamma prior rate on lambda");
  }
};

int run_app(const std::vector<std::string>& args) {
  CLI::App app{"random-walk network formation: simulation and inference"};
  app.option_defaults()->always_capture_default(true);
  app.set_config("--config", "", "read defaults from an INI file");
  int threads = 0;
  app.add_option("--threads", threads,
                 "worker thread cap; this build executes sequentially, so outputs never depend "
                 "on it");
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "simulate a graph");
  std::string gen_model = "rw";
  int gen_edges = 100;
  int gen_vertices = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_out = "-";
  std::string gen_hist;
  CommonModelFlags gen_flags;
  gen->add_option("--model", gen_model, "rw, acl, or er");
  gen->add_option("--edges,-T", gen_edges, "number of edges to grow")->required();
  gen->add_option("--vertices", gen_vertices, "vertex count (er only)");
  gen->add_option("--seed", gen_seed, "rng seed");
  gen->add_option("--output,-o", gen_out, "edge-list output path, - for stdout");
  gen->add_option("--history-output", gen_hist, "per-step branch flags and walk lengths (csv)");
  gen_flags.attach(gen);

  // stats
  auto* stats = app.add_subcommand("stats", "summary metrics and fit statistics");
  std::string stats_in;
  std::string stats_out = "-";
  bool stats_skeleton = false;
  stats->add_option("--input,-i", stats_in, "edge-list path, - for stdin")->required();
  stats->add_option("--output,-o", stats_out, "output path");
  stats->add_flag("--simple-skeleton", stats_skeleton, "collapse parallel edges and loops first");

  // mixing-time
  auto* mix = app.add_subcommand("mixing-time", "per-vertex walk mixing times");
  std::string mix_in;
  std::string mix_out = "-";
  double mix_threshold = 0.25;
  int mix_tmax = 4096;
  mix->add_option("--input,-i", mix_in, "edge-list path")->required();
  mix->add_option("--output,-o", mix_out, "output path");
  mix->add_option("--threshold", mix_threshold, "l2 distance threshold");
  mix->add_option("--t-max", mix_tmax, "step cap");

  // mle
  auto* mle = app.add_subcommand("mle", "point estimates from an ordered multigraph");
  std::string mle_in;
  std::string mle_out = "-";
  std::string mle_selection = "size-biased";
  bool mle_no_loops = false;
  double mle_lambda_max = 0.0;
  int mle_grid = 32;
  mle->add_option("--input,-i", mle_in, "edge-list path in insertion order")->required();
  mle->add_option("--output,-o", mle_out, "output path");
  mle->add_option("--selection", mle_selection, "vertex selection (uniform, size-biased)");
  mle->add_flag("--no-self-loops", mle_no_loops, "drop self-loop steps from the walk objective");
  mle->add_option("--lambda-max", mle_lambda_max, "search upper bound, 0 for automatic");
  mle->add_option("--grid", mle_grid, "coarse grid size");

  // bridge
  auto* bridge = app.add_subcommand("bridge", "likelihood estimate by sequential sampling");
  std::string bridge_in;
  std::string bridge_out = "-";
  std::string bridge_hist;
  int bridge_particles = 100;
  std::uint64_t bridge_seed = 0;
  bool bridge_strat = false;
  CommonModelFlags bridge_flags;
  bridge->add_option("--input,-i", bridge_in, "edge-list path")->required();
  bridge->add_option("--output,-o", bridge_out, "output path");
  bridge->add_option("--histories", bridge_hist, "write resampled insertion orders here");
  bridge->add_option("--particles,-N", bridge_particles, "particle count");
  bridge->add_option("--seed", bridge_seed, "rng seed");
  bridge->add_flag("--stratified", bridge_strat, "stratified resampling");
  bridge_flags.attach(bridge);

  // pmmh
  auto* pmmh = app.add_subcommand("pmmh", "particle marginal Metropolis-Hastings");
  std::string pmmh_in;
  std::string pmmh_out = "-";
  std::string pmmh_chain;
  PmmhOptions pmmh_opts;
  PriorFlags pmmh_priors;
  std::string pmmh_selection = "size-biased";
  std::string pmmh_mode = "multigraph";
  pmmh->add_option("--input,-i", pmmh_in, "edge-list path")->required();
  pmmh->add_option("--output,-o", pmmh_out, "summary output path");
  pmmh->add_option("--chain", pmmh_chain, "chain csv path");
  int pmmh_burn = 0;
  int pmmh_thin = 1;
  pmmh->add_option("--iterations,-n", pmmh_opts.iterations, "retained chain length");
  pmmh->add_option("--burn", pmmh_burn, "extra iterations discarded before retention");
  pmmh->add_option("--thin", pmmh_thin, "keep every thin-th retained sample");
  pmmh->add_option("--particles,-N", pmmh_opts.particles, "particles per estimate");
  pmmh->add_option("--step-alpha", pmmh_opts.step_alpha, "proposal scale on logit(alpha)");
  pmmh->add_option("--step-lambda", pmmh_opts.step_lambda, "proposal scale on log(lambda)");
  pmmh->add_flag("--adapt", pmmh_opts.adapt, "adapt step sizes toward 0.25 acceptance");
  pmmh->add_option("--init-alpha", pmmh_opts.init_alpha, "initial alpha");
  pmmh->add_option("--init-lambda", pmmh_opts.init_lambda, "initial lambda");
  pmmh->add_option("--seed", pmmh_opts.seed, "rng seed");
  pmmh->add_option("--selection", pmmh_selection, "vertex selection");
  pmmh->add_option("--mode", pmmh_mode, "graph mode");
  pmmh_priors.attach(pmmh);

  // pg
  auto* pg = app.add_subcommand("pg", "particle Gibbs with collapsed parameters");
  std::string pg_in;
  std::string pg_out = "-";
  std::string pg_chain;
  PgOptions pg_opts;
  PriorFlags pg_priors;
  std::string pg_selection = "size-biased";
  std::string pg_mode = "multigraph";
  pg->add_option("--input,-i", pg_in, "edge-list path")->required();
  pg->add_option("--output,-o", pg_out, "summary output path");
  pg->add_option("--chain", pg_chain, "chain csv path");
  int pg_burn = 0;
  int pg_thin = 1;
  pg->add_option("--iterations,-n", pg_opts.iterations, "retained chain length");
  pg->add_option("--burn", pg_burn, "extra iterations discarded before retention");
  pg->add_option("--thin", pg_thin, "keep every thin-th retained sample");
  pg->add_option("--particles,-N", pg_opts.particles, "particles per conditional run");
  pg->add_option("--seed", pg_opts.seed, "rng seed");
  pg->add_option("--selection", pg_selection, "vertex selection");
  pg->add_option("--mode", pg_mode, "graph mode");
  pg_priors.attach(pg);

  // ppd
  auto* ppd = app.add_subcommand("ppd", "posterior predictive statistic distances");
  std::string ppd_in;
  std::string ppd_out = "-";
  std::string ppd_chain;
  std::string ppd_model = "rw-uniform";
  int ppd_samples = 50;
  std::uint64_t ppd_seed = 0;
  ppd->add_option("--input,-i", ppd_in, "observed edge-list path")->required();
  ppd->add_option("--output,-o", ppd_out, "output path");
  ppd->add_option("--chain", ppd_chain, "fitted chain csv (unused for er)");
  ppd->add_option("--model", ppd_model, "rw-uniform, rw-size-biased, acl, or er");
  ppd->add_option("--samples", ppd_samples, "replicate count");
  ppd->add_option("--seed", ppd_seed, "rng seed");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "exact insertion-order posterior for small graphs");
  std::string oracle_in;
  std::string oracle_out = "-";
  int oracle_max_edges = 8;
  CommonModelFlags oracle_flags;
  oracle->add_option("--input,-i", oracle_in, "edge-list path")->required();
  oracle->add_option("--output,-o", oracle_out, "output path");
  oracle->add_option("--max-edges", oracle_max_edges, "enumeration cap");
  oracle_flags.attach(oracle);

  std::vector<const char*> argv;
  argv.push_back("rwnet");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  const std::string cfg_echo = config_echo(*app.get_subcommands().front());

  if (gen->parsed()) {
    ModelConfig cfg = gen_flags.config();
    Rng rng(gen_seed);
    Graph out_graph(cfg.mode);
    History history;
    if (gen_model == "rw") {
      GenerateResult res = rw_generate(cfg, gen_edges, rng);
      out_graph = std::move(res.graph);
      history = std::move(res.history);
    } else if (gen_model == "acl") {
      GenerateResult res = acl_generate(cfg.alpha, gen_edges, rng);
      out_graph = std::move(res.graph);
      history = std::move(res.history);
    } else if (gen_model == "er") {
      if (gen_vertices < 2) throw CLI::ValidationError("--vertices", "er needs a vertex count");
      out_graph = er_generate(gen_vertices, gen_edges, rng);
    } else {
      throw CLI::ValidationError("--model", "expected rw, acl, or er");
    }
    OutSink sink(gen_out);
    write_edge_list(sink.stream(), out_graph, text_header("generate", gen_seed, nullptr, cfg_echo));
    if (!gen_hist.empty() && !history.b_flags.empty()) {
      std::ofstream hf(gen_hist);
      if (!hf) throw std::runtime_error("cannot open history output: " + gen_hist);
      for (const auto& line : text_header("generate", gen_seed, nullptr, cfg_echo)) hf << "# " << line << "\n";
      hf << "step,branch,walk_length\n";
      for (std::size_t t = 0; t < history.b_flags.size(); ++t)
        hf << (t + 1) << ',' << history.b_flags[t] << ',' << history.walk_lengths[t] << "\n";
    }
    return 0;
  }

  if (stats->parsed()) {
    Graph g = load_graph(stats_in, stats_skeleton ? GraphMode::Multigraph : GraphMode::Simple);
    if (stats_skeleton) g = g.simple_skeleton();
    GraphMetrics metrics = graph_metrics(g);
    FitStatistics fit = compute_fit_statistics(g);
    json out;
    out["meta"] = meta_json("stats", 0, &g, cfg_echo);
    out["metrics"] = {{"vertices", metrics.vertices},
                      {"edges", metrics.edges},
                      {"connected", metrics.connected},
                      {"diameter", metrics.diameter},
                      {"mean_shortest_path", metrics.mean_shortest_path},
                      {"clustering_global", metrics.clustering_global},
                      {"clustering_mean_local", metrics.clustering_mean_local},
                      {"largest_component", metrics.largest_component}};
    out["degree"] = stat_vector_json(fit.degree);
    out["shared_partners"] = stat_vector_json(fit.shared_partners);
    out["path_length"] = stat_vector_json(fit.path_length);
    OutSink sink(stats_out);
    sink.stream() << out.dump(2) << "\n";
    return 0;
  }

  if (mix->parsed()) {
    Graph g = load_graph(mix_in, GraphMode::Multigraph);
    MixingTimes mt = mixing_time_l2(g, mix_threshold, mix_tmax);
    json out;
    out["meta"] = meta_json("mixing-time", 0, &g, cfg_echo);
    out["threshold"] = mix_threshold;
    out["t_max"] = mt.t_max;
    out["steps"] = mt.steps;
    out["mean_finite"] = mt.mean_finite;
    out["finite_count"] = mt.finite_count;
    OutSink sink(mix_out);
    sink.stream() << out.dump(2) << "\n";
    return 0;
  }

  if (mle->parsed()) {
    Graph g = load_graph(mle_in, GraphMode::Multigraph);
    double alpha_hat = estimate_alpha(g);
    LambdaFitOptions opts;
    opts.selection = parse_selection(mle_selection);
    opts.include_self_loops = !mle_no_loops;
    opts.lambda_max = mle_lambda_max;
    opts.grid_points = mle_grid;
    json out;
    out["meta"] = meta_json("mle", 0, &g, cfg_echo);
    out["alpha_hat"] = alpha_hat;
    LambdaObjective obj(g, opts);
    if (obj.walk_steps() > 0) {
      LambdaEstimate est = estimate_lambda(g, opts);
      out["lambda_hat"] = est.lambda;
      out["loglik"] = est.loglik;
      out["walk_steps"] = est.walk_steps;
      out["lambda_max"] = est.lambda_max;
    } else {
      out["lambda_hat"] = nullptr;
      out["walk_steps"] = 0;
    }
    OutSink sink(mle_out);
    sink.stream() << out.dump(2) << "\n";
    return 0;
  }

  if (bridge->parsed()) {
    ModelConfig cfg = bridge_flags.config();
    Graph g = load_graph(bridge_in, cfg.mode);
    BridgeConfig bc;
    bc.model = cfg;
    bc.particles = bridge_particles;
    bc.stratified = bridge_strat;
    bc.seed = bridge_seed;
    BridgeResult res = run_bridge(g, bc);
    json out;
    out["meta"] = meta_json("bridge", bridge_seed, &g, cfg_echo);
    out["loglik"] = res.loglik;
    out["log_increments"] = res.log_increments;
    out["particles"] = bridge_particles;
    if (!bridge_hist.empty()) {
      std::ofstream hf(bridge_hist);
      if (!hf) throw std::runtime_error("cannot open histories output: " + bridge_hist);
      write_histories(hf, res.histories);
      out["histories_path"] = bridge_hist;
    }
    OutSink sink(bridge_out);
    sink.stream() << out.dump(2) << "\n";
    return 0;
  }

  if (pmmh->parsed()) {
    ModelConfig proto;
    proto.selection = parse_selection(pmmh_selection);
    proto.mode = parse_mode(pmmh_mode);
    Graph g = load_graph(pmmh_in, proto.mode);
    if (pmmh_burn < 0 || pmmh_thin < 1 || pmmh_opts.iterations < 1)
      throw std::runtime_error("need iterations >= 1, burn >= 0, thin >= 1");
    const int pmmh_retain = pmmh_opts.iterations;
    pmmh_opts.iterations += pmmh_burn;
    Chain chain = retained_chain(pmmh_run(g, proto, pmmh_priors.priors, pmmh_opts),
                                 pmmh_burn, pmmh_thin);
    if (!pmmh_chain.empty()) {
      std::ofstream cf(pmmh_chain);
      if (!cf) throw std::runtime_error("cannot open chain output: " + pmmh_chain);
      write_chain_csv(cf, chain, "pmmh", pmmh_opts.seed, g, cfg_echo);
    }
    std::vector<double> alphas, lambdas;
    for (const auto& s : chain.samples) {
      alphas.push_back(s.alpha);
      lambdas.push_back(s.lambda);
    }
    json out;
    out["meta"] = meta_json("pmmh", pmmh_opts.seed, &g, cfg_echo);
    out["iterations"] = pmmh_retain;
    out["burn"] = pmmh_burn;
    out["thin"] = pmmh_thin;
    out["retained"] = chain.samples.size();
    out["particles"] = pmmh_opts.particles;
    out["acceptance_rate"] = chain.acceptance_rate;
    out["alpha"] = summary_json(chain_summary(alphas));
    out["lambda"] = summary_json(chain_summary(lambdas));
    OutSink sink(pmmh_out);
    sink.stream() << out.dump(2) << "\n";
    return 0;
  }

  if (pg->parsed()) {
    ModelConfig proto;
    proto.selection = parse_selection(pg_selection);
    proto.mode = parse_mode(pg_mode);
    Graph g = load_graph(pg_in, proto.mode);
    if (pg_burn < 0 || pg_thin < 1 || pg_opts.iterations < 1)
      throw std::runtime_error("need iterations >= 1, burn >= 0, thin >= 1");
    const int pg_retain = pg_opts.iterations;
    pg_opts.iterations += pg_burn;
    Chain chain = retained_chain(pg_run(g, proto, pg_priors.priors, pg_opts), pg_burn, pg_thin);
    if (!pg_chain.empty()) {
      std::ofstream cf(pg_chain);
      if (!cf) throw std::runtime_error("cannot open chain output: " + pg_chain);
      write_chain_csv(cf, chain, "pg", pg_opts.seed, g, cfg_echo);
    }
    std::vector<double> alphas, lambdas;
    for (const auto& s : chain.samples) {
      alphas.push_back(s.alpha);
      lambdas.push_back(s.lambda);
    }
    json out;
    out["meta"] = meta_json("pg", pg_opts.seed, &g, cfg_echo);
    out["iterations"] = pg_retain;
    out["burn"] = pg_burn;
    out["thin"] = pg_thin;
    out["retained"] = chain.samples.size();
    out["particles"] = pg_opts.particles;
    out["tail_warnings"] = chain.tail_warnings;
    out["alpha"] = summary_json(chain_summary(alphas));
    out["lambda"] = summary_json(chain_summary(lambdas));
    OutSink sink(pg_out);
    sink.stream() << out.dump(2) << "\n";
    return 0;
  }

  if (ppd->parsed()) {
    Graph g = load_graph(ppd_in, GraphMode::Simple);
    PpdOptions opts;
    opts.samples = ppd_samples;
    opts.seed = ppd_seed;
    if (ppd_model == "rw-uniform")
      opts.model = PpdModel::RwUniform;
    else if (ppd_model == "rw-size-biased")
      opts.model = PpdModel::RwSizeBiased;
    else if (ppd_model == "acl")
      opts.model = PpdModel::Acl;
    else if (ppd_model == "er")
      opts.model = PpdModel::Er;
    else
      throw CLI::ValidationError("--model", "expected rw-uniform, rw-size-biased, acl, or er");
    std::vector<ChainSample> chain;
    if (opts.model != PpdModel::Er) {
      if (ppd_chain.empty()) throw CLI::ValidationError("--chain", "required for posterior models");
      chain = read_chain_csv(ppd_chain);
    }
    PpdResult res = ppd_run(g, chain, opts);
    json out;
    out["meta"] = meta_json("ppd", ppd_seed, &g, cfg_echo);
    out["model"] = ppd_model;
    out["samples"] = ppd_samples;
    out["tv_degree"] = {{"mean", res.mean_tv_degree}, {"sd", res.sd_tv_degree}, {"values", res.tv_degree}};
    out["tv_shared_partners"] = {
        {"mean", res.mean_tv_shared}, {"sd", res.sd_tv_shared}, {"values", res.tv_shared}};
    out["tv_path_length"] = {{"mean", res.mean_tv_path}, {"sd", res.sd_tv_path}, {"values", res.tv_path}};
    OutSink sink(ppd_out);
    sink.stream() << out.dump(2) << "\n";
    return 0;
  }

  if (oracle->parsed()) {
    ModelConfig cfg = oracle_flags.config();
    Graph g = load_graph(oracle_in, cfg.mode);
    ExactPosterior post = exact_posterior(g, cfg, oracle_max_edges);
    std::vector<double> first_edge(g.edge_count(), 0.0);
    for (std::size_t i = 0; i < post.orders.size(); ++i) first_edge[post.orders[i][0]] += post.posterior[i];
    json out;
    out["meta"] = meta_json("oracle", 0, &g, cfg_echo);
    out["order_count"] = post.orders.size();
    out["log_marginal"] = post.log_marginal;
    out["orders"] = post.orders;
    out["log_prob"] = post.log_prob;
    out["posterior"] = post.posterior;
    out["first_edge_marginal"] = first_edge;
    OutSink sink(oracle_out);
    sink.stream() << out.dump(2) << "\n";
    return 0;
  }

  return 0;
}

}  // namespace

int dispatch(const std::vector<std::string>& args) {
  try {
    return run_app(args);
  } catch (const std::exception& e) {
    std::cerr << "rwnet: " << e.what() << "\n";
    return 1;
  }
}

int dispatch(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return dispatch(args);
}

}  // namespace rwnet
