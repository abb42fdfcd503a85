// Copyright 2026 The redsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// redsim command-line front end.
//
// Exit status: 0 success, 1 bad arguments, 2 file I/O failure,
// 3 no result (for example, curves that never cross).

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "redsim/redsim.hpp"

namespace {

using redsim::ArgumentError;
using redsim::format_number;

constexpr int kExitOk = 0;
constexpr int kExitArgument = 1;
constexpr int kExitIo = 2;
constexpr int kExitNoResult = 3;

struct GridSpec {
  double start = 0.0;
  double stop = 1.0;
  int points = 101;
};

unsigned threads_from_env() {
  const char* raw = std::getenv("REDSIM_THREADS");
  if (raw == nullptr || *raw == '\0') return 0;
  const std::string text(raw);
  if (text.find_first_not_of("0123456789") != std::string::npos || text.size() > 6)
    throw ArgumentError("REDSIM_THREADS must be a nonnegative integer, got '" + text + "'");
  return static_cast<unsigned>(std::stoul(text));
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-")
    std::cout << content << std::flush;
  else
    redsim::write_file_atomic(path, content);
}

void add_grid_options(CLI::App* cmd, GridSpec& grid) {
  cmd->add_option("--start", grid.start, "first loss probability")->capture_default_str();
  cmd->add_option("--stop", grid.stop, "last loss probability")->capture_default_str();
  cmd->add_option("--points", grid.points, "number of grid points")->capture_default_str();
}

const std::map<std::string, redsim::BenchmarkMode> kModes{{"robust", redsim::BenchmarkMode::robust},
                                                          {"strict", redsim::BenchmarkMode::strict}};
const std::map<std::string, redsim::ResourceKind> kResources{{"w", redsim::ResourceKind::w},
                                                             {"ghz", redsim::ResourceKind::ghz},
                                                             {"twocentered", redsim::ResourceKind::two_centered}};

// --- curve ----------------------------------------------------------------

struct CurveArgs {
  redsim::ResourceKind resource = redsim::ResourceKind::w;
  int n = 4;
  int rounds = 1;
  GridSpec grid;
  redsim::BenchmarkMode mode = redsim::BenchmarkMode::robust;
  std::string output;
};

int run_curve(const CurveArgs& a, unsigned threads) {
  const auto grid = redsim::uniform_grid(a.grid.start, a.grid.stop, a.grid.points);
  redsim::detail::require_resource(a.resource, a.n, a.rounds);
  std::function<double(double)> f;
  if (a.resource == redsim::ResourceKind::w) {
    auto bound = std::make_shared<const redsim::WLowerBound>(a.n, a.rounds, 1e-6, threads);
    for (int i = 0; i <= a.n - 2; ++i) {
      const auto& o = bound->optima()[i];
      std::cerr << "i=" << i << "\tkappa*=" << format_number(o.kappa_star) << "\tE=" << format_number(o.value)
                << '\n';
    }
    f = [bound](double eps) { return (*bound)(eps); };
  } else {
    f = redsim::resource_function(a.resource, a.n, a.rounds, a.mode);
  }
  const auto curve = redsim::build_curve(f, a.resource, a.n, a.rounds, grid, a.mode);
  emit(a.output, redsim::curve_tsv(curve));
  return kExitOk;
}

// --- threshold ------------------------------------------------------------

struct ThresholdArgs {
  redsim::ResourceKind resource = redsim::ResourceKind::w;
  redsim::ResourceKind against = redsim::ResourceKind::ghz;
  int n = 4;
  int rounds = 1;
  GridSpec grid;
  redsim::BenchmarkMode mode = redsim::BenchmarkMode::robust;
  bool json = false;
};

int run_threshold(const ThresholdArgs& a, unsigned threads) {
  const auto grid = redsim::uniform_grid(a.grid.start, a.grid.stop, a.grid.points);
  const auto fa = redsim::resource_function(a.resource, a.n, a.rounds, a.mode, threads);
  const auto fb = redsim::resource_function(a.against, a.n, a.rounds, a.mode, threads);
  const auto found = redsim::threshold(fa, fb, grid);
  if (a.json) {
    nlohmann::ordered_json j{{"resource", redsim::to_string(a.resource)},
                             {"against", redsim::to_string(a.against)},
                             {"n", a.n},
                             {"rounds", a.rounds},
                             {"mode", redsim::to_string(a.mode)},
                             {"resolution", redsim::kThresholdResolution}};
    if (found) {
      j["epsilon0"] = found->epsilon;
      j["value_resource"] = found->value_a;
      j["value_against"] = found->value_b;
    } else {
      j["epsilon0"] = nullptr;
    }
    std::cout << j.dump(2) << '\n';
  } else if (found) {
    std::cout << "epsilon0\t" << format_number(found->epsilon) << '\n'
              << redsim::to_string(a.resource) << '\t' << format_number(found->value_a) << '\n'
              << redsim::to_string(a.against) << '\t' << format_number(found->value_b) << '\n';
  }
  if (!found) {
    std::cerr << "no threshold: " << redsim::to_string(a.resource) << " never rises above "
              << redsim::to_string(a.against) << " on the grid\n";
    return kExitNoResult;
  }
  return kExitOk;
}

// --- markov ---------------------------------------------------------------

struct MarkovArgs {
  int n = 3;
  double kappa = 0.5;
  std::optional<int> steps;
  std::string output;
};

int run_markov(const MarkovArgs& a) {
  if (a.steps) redsim::detail::require(*a.steps >= 0, "--steps must be non-negative");
  const auto t = redsim::build_transition_matrix(a.n, a.kappa);
  std::string out = redsim::transition_matrix_tsv(t);
  if (a.steps) {
    const auto start = redsim::w_label(a.n);
    const auto dist = redsim::r_step_distribution(t, start, *a.steps);
    out += start + "^" + std::to_string(*a.steps);
    for (Eigen::Index k = 0; k < dist.size(); ++k) out += '\t' + format_number(dist(k));
    out += '\n';
  }
  emit(a.output, out);
  return kExitOk;
}

// --- mc -------------------------------------------------------------------

struct McArgs {
  redsim::McConfig cfg;
  std::optional<double> kappa;
  std::string output;
};

int run_mc(McArgs a, unsigned threads) {
  a.cfg.kappa = a.kappa;
  const auto est = redsim::mc_estimate(a.cfg, threads);
  const double expected = redsim::mc_deterministic_value(a.cfg);
  const bool pass = redsim::mc_agrees(est, expected);
  std::string out = "n\trounds\tepsilon\tkappa\tsamples\tseed\tmean\tstandard_error\tdeterministic\tpass\n";
  out += std::to_string(a.cfg.n) + '\t' + std::to_string(a.cfg.rounds) + '\t' + format_number(a.cfg.eps) + '\t' +
         (a.kappa ? format_number(*a.kappa) : std::string("opt")) + '\t' + std::to_string(est.samples) + '\t' +
         std::to_string(a.cfg.seed) + '\t' + format_number(est.mean) + '\t' +
         (est.degenerate ? std::string("nan") : format_number(est.standard_error)) + '\t' +
         format_number(expected) + '\t' + (pass ? "pass" : "fail") + '\n';
  emit(a.output, out);
  return kExitOk;
}

// --- advantage ------------------------------------------------------------

struct AdvantageArgs {
  int from = 4;
  int to = 10;
  int rounds = 1;
  redsim::ResourceKind against = redsim::ResourceKind::ghz;
  redsim::BenchmarkMode mode = redsim::BenchmarkMode::robust;
  bool json = false;
};

int run_advantage(const AdvantageArgs& a, unsigned threads) {
  redsim::detail::require(a.from >= 4 && a.to <= redsim::kMaxQubits && a.from <= a.to,
                          "sizes must satisfy 4 <= from <= to <= 12");
  std::vector<int> sizes;
  for (int n = a.from; n <= a.to; ++n) sizes.push_back(n);
  const auto report = redsim::advantage_table(sizes, a.rounds, a.against, a.mode, threads);
  if (a.json) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : report.rows) {
      nlohmann::ordered_json row{{"n", r.n}};
      row["threshold"] = r.threshold ? nlohmann::ordered_json(*r.threshold) : nlohmann::ordered_json(nullptr);
      row["ghz_derivative"] = r.ghz_derivative;
      row["w_derivative"] = r.w_derivative;
      row["ratio"] = r.ratio;
      row["ratio_fd"] = r.ratio_fd;
      rows.push_back(row);
    }
    nlohmann::ordered_json j{{"rounds", a.rounds}, {"against", redsim::to_string(a.against)}, {"rows", rows}};
    j["violations"] = report.violations;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "n\tthreshold\tghz_derivative\tw_derivative\tratio\tratio_fd\n";
    for (const auto& r : report.rows)
      std::cout << r.n << '\t' << (r.threshold ? format_number(*r.threshold) : std::string("none")) << '\t'
                << format_number(r.ghz_derivative) << '\t' << format_number(r.w_derivative) << '\t'
                << format_number(r.ratio) << '\t' << format_number(r.ratio_fd) << '\n';
  }
  for (const auto& v : report.violations) std::cerr << "violation: " << v << '\n';
  return kExitOk;
}

// --- graph ----------------------------------------------------------------

struct GraphArgs {
  std::string kind;
  int n = 0;
  std::string input;
  std::string output;
};

int run_graph(const GraphArgs& a) {
  if (!a.input.empty()) {
    std::ifstream in(a.input, std::ios::binary);
    if (!in) throw redsim::IoError("cannot read '" + a.input + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const auto g = redsim::parse_edge_list(buffer.str());
    std::string out = "vertices\t" + std::to_string(g.vertex_count()) + "\nedges\t" +
                      std::to_string(g.edges().size()) + "\nconnected\t" + (g.connected() ? "yes" : "no") + '\n';
    for (int v = 0; v < g.vertex_count(); ++v) out += "degree " + std::to_string(v) + '\t' +
                                                      std::to_string(g.neighbors(v).size()) + '\n';
    emit(a.output, out);
    return kExitOk;
  }
  redsim::detail::require(!a.kind.empty(), "graph needs --kind or --input");
  const auto g = a.kind == "twocentered" ? redsim::two_centered_graph(a.n).graph
                 : a.kind == "star"        ? redsim::Graph::star(a.n)
                                           : redsim::Graph::complete(a.n);
  emit(a.output, redsim::to_edge_list(g));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"redsim: bipartite entanglement from W and GHZ-like resources in lossy networks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "redsim 1.0.0");

  CurveArgs curve;
  auto* c = app.add_subcommand("curve", "figure of merit versus loss probability, as two-column TSV");
  c->add_option("--resource", curve.resource, "w | ghz | twocentered")
      ->required()
      ->transform(CLI::CheckedTransformer(kResources, CLI::ignore_case));
  c->add_option("--n", curve.n, "network size")->required();
  c->add_option("--rounds", curve.rounds, "SP-LOCC rounds (W only)")->capture_default_str();
  add_grid_options(c, curve.grid);
  c->add_option("--mode", curve.mode, "two-centered benchmark: robust | strict")
      ->transform(CLI::CheckedTransformer(kModes, CLI::ignore_case));
  c->add_option("-o,--output", curve.output, "output file (default stdout)");

  ThresholdArgs thr;
  auto* t = app.add_subcommand("threshold", "first loss probability where one resource overtakes another");
  t->add_option("--resource", thr.resource, "challenger: w | ghz | twocentered")
      ->transform(CLI::CheckedTransformer(kResources, CLI::ignore_case));
  t->add_option("--against", thr.against, "reference: w | ghz | twocentered")
      ->transform(CLI::CheckedTransformer(kResources, CLI::ignore_case));
  t->add_option("--n", thr.n, "network size")->required();
  t->add_option("--rounds", thr.rounds, "SP-LOCC rounds for W")->capture_default_str();
  add_grid_options(t, thr.grid);
  t->add_option("--mode", thr.mode, "two-centered benchmark: robust | strict")
      ->transform(CLI::CheckedTransformer(kModes, CLI::ignore_case));
  t->add_flag("--json", thr.json, "JSON report");

  MarkovArgs markov;
  auto* m = app.add_subcommand("markov", "lossless W-chain transition matrix as TSV");
  m->add_option("--n", markov.n, "network size")->required();
  m->add_option("--kappa", markov.kappa, "measurement strength")->required();
  m->add_option("--steps", markov.steps, "append the r-step distribution from W_N");
  m->add_option("-o,--output", markov.output, "output file (default stdout)");

  McArgs mc;
  auto* s = app.add_subcommand("mc", "Monte Carlo check of the W lower bound");
  s->add_option("--n", mc.cfg.n, "network size")->required();
  s->add_option("--rounds", mc.cfg.rounds, "SP-LOCC rounds")->capture_default_str();
  s->add_option("--epsilon", mc.cfg.eps, "loss probability")->capture_default_str();
  s->add_option("--kappa", mc.kappa, "fixed kappa (default: optimum per loss count)");
  s->add_option("--samples", mc.cfg.samples, "sample count")->capture_default_str();
  s->add_option("--seed", mc.cfg.seed, "RNG seed")->capture_default_str();
  s->add_option("-o,--output", mc.output, "output file (default stdout)");

  AdvantageArgs adv;
  auto* a = app.add_subcommand("advantage", "thresholds and small-loss slope ratios over network sizes");
  a->add_option("--from", adv.from, "smallest N")->capture_default_str();
  a->add_option("--to", adv.to, "largest N")->capture_default_str();
  a->add_option("--rounds", adv.rounds, "SP-LOCC rounds for W")->capture_default_str();
  a->add_option("--against", adv.against, "reference: ghz | twocentered")
      ->transform(CLI::CheckedTransformer(kResources, CLI::ignore_case));
  a->add_option("--mode", adv.mode, "two-centered benchmark: robust | strict")
      ->transform(CLI::CheckedTransformer(kModes, CLI::ignore_case));
  a->add_flag("--json", adv.json, "JSON report");

  GraphArgs graph;
  auto* g = app.add_subcommand("graph", "print or inspect edge lists");
  g->add_option("--kind", graph.kind, "twocentered | star | complete")
      ->check(CLI::IsMember({"twocentered", "star", "complete"}));
  g->add_option("--n", graph.n, "vertex count");
  g->add_option("--input", graph.input, "edge-list file to inspect");
  g->add_option("-o,--output", graph.output, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitArgument;
  }

  try {
    const unsigned threads = threads_from_env();
    if (c->parsed()) return run_curve(curve, threads);
    if (t->parsed()) return run_threshold(thr, threads);
    if (m->parsed()) return run_markov(markov);
    if (s->parsed()) return run_mc(mc, threads);
    if (a->parsed()) return run_advantage(adv, threads);
    if (g->parsed()) return run_graph(graph);
  } catch (const redsim::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitArgument;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitArgument;
}
