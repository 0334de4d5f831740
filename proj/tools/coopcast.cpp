// coopcast: experiment harness and utilities for energy-accumulation
// broadcast simulations. Exit codes: 0 success, 1 usage error, 2 delivery
// checker failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "coopcast/algos.hpp"
#include "coopcast/analysis.hpp"
#include "coopcast/broadcast.hpp"
#include "coopcast/convert.hpp"
#include "coopcast/experiment.hpp"
#include "coopcast/json_io.hpp"
#include "coopcast/net.hpp"

using nlohmann::json;
using namespace coopcast;

namespace {

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

struct GenOptions {
  std::string placement = "uniform-disk";
  int n = 50;
  int m = 10;
  double d = 1.0;
  double radius = 1.0;
  double sigma = 0.5;
  int clusters = 5;
  std::uint64_t seed = 0;
  double alpha = 2.0;
  std::string source = "0";
  std::string out;
};

SourceRule parse_source(const std::string& s) {
  if (s == "random") return SourceRule::RandomUniform();
  return SourceRule::Fixed(static_cast<NodeId>(std::stoul(s)));
}

int cmd_gen(const GenOptions& opt) {
  PlacementSpec spec;
  spec.seed = opt.seed;
  if (opt.placement == "grid")
    spec.kind = GridPlacement{opt.m, opt.d};
  else if (opt.placement == "uniform-disk")
    spec.kind = UniformDiskPlacement{opt.n, opt.radius};
  else if (opt.placement == "gaussian")
    spec.kind = GaussianPlacement{opt.n, opt.sigma};
  else if (opt.placement == "clustered")
    spec.kind = ClusteredPlacement{opt.n, opt.clusters, opt.sigma};
  else
    throw CLI::ValidationError("unknown placement: " + opt.placement);

  const Network net =
      sample_placement(spec, opt.alpha, parse_source(opt.source));
  const std::string text = network_to_json(net).dump(2) + "\n";
  if (opt.out.empty())
    std::cout << text;
  else
    save_text(opt.out, text);
  return 0;
}

struct AlgoOptions {
  std::string name;
  std::string network;
  int L = 1;
  bool borders = false;
  std::string out;
};

int cmd_algo(const AlgoOptions& opt) {
  const Network net = network_from_json(load_json(opt.network));
  Schedule sched;
  if (opt.name == "greedy-filling") {
    sched = greedy_filling(net);
  } else if (opt.name == "bip") {
    sched = bip(net);
  } else if (opt.name == "mst") {
    sched = mst_broadcast(net);
  } else if (opt.name == "single") {
    sched = single_transmission(net);
  } else if (opt.name == "grid-all" || opt.name == "grid-rows") {
    const auto grid = detect_grid(net);
    if (!grid) throw std::runtime_error("network is not a grid");
    sched = opt.name == "grid-all"
                ? grid_all_nodes(*grid)
                : grid_coop_rows(*grid, {opt.L, opt.borders});
  } else {
    throw CLI::ValidationError("unknown algorithm: " + opt.name);
  }

  const std::string text = schedule_to_json(sched).dump() + "\n";
  if (opt.out.empty())
    std::cout << text;
  else
    save_text(opt.out, text);
  std::cout << "total_power " << fmt(total_power(sched)) << "\n";
  return 0;
}

struct ConvertOptions {
  std::string network;
  std::string schedule;
  std::string out_schedule;
  std::string out_trace;
  bool verify = true;
};

int cmd_convert(const ConvertOptions& opt) {
  const Network net = network_from_json(load_json(opt.network));
  const Schedule coop = schedule_from_json(load_json(opt.schedule));
  const ConversionResult result = convert(net, coop, opt.verify);
  const std::string sched_text =
      schedule_to_json(result.schedule).dump() + "\n";
  if (opt.out_schedule.empty())
    std::cout << sched_text;
  else
    save_text(opt.out_schedule, sched_text);
  if (!opt.out_trace.empty())
    save_text(opt.out_trace, trace_to_json(net, result.trace).dump(2) + "\n");
  std::cout << "total_power " << fmt(total_power(result.schedule)) << "\n";
  return 0;
}

struct AnalyzeOptions {
  std::vector<double> zeta;         // n alpha
  std::vector<double> beta;         // alpha gamma
  std::vector<double> grid_bounds;  // m d alpha
  std::vector<int> l_condition;     // m L
};

int cmd_analyze(const AnalyzeOptions& opt) {
  if (!opt.zeta.empty())
    std::cout << fmt(zeta_alpha(int(opt.zeta[0]), opt.zeta[1])) << "\n";
  if (!opt.beta.empty()) {
    const auto b = beta_constants(opt.beta[0], opt.beta[1]);
    std::cout << fmt(b.beta) << "\n" << fmt(b.beta1) << "\n" << fmt(b.beta2)
              << "\n";
  }
  if (!opt.grid_bounds.empty()) {
    const int m = int(opt.grid_bounds[0]);
    const double d = opt.grid_bounds[1], a = opt.grid_bounds[2];
    std::cout << fmt(grid_coop_lower_bound(m, d, a)) << "\n"
              << fmt(grid_noncoop_lower_bound(m * m, d)) << "\n";
  }
  if (!opt.l_condition.empty()) {
    std::cout << fmt(grid_L_condition_value(opt.l_condition[0],
                                            opt.l_condition[1]))
              << "\n"
              << (grid_L_condition(opt.l_condition[0], opt.l_condition[1]) ? 1
                                                                           : 0)
              << "\n";
  }
  return 0;
}

struct ExperimentOptions {
  std::string kind;
  std::string config;
  std::string out;
  int jobs = 0;
  bool no_verify = false;
};

int cmd_experiment(const ExperimentOptions& opt) {
  json j = load_json(opt.config);
  j["experiment"] = opt.kind;  // subcommand wins over the config field
  ExperimentConfig cfg = config_from_json(j);
  if (opt.jobs > 0) cfg.jobs = opt.jobs;
  if (opt.no_verify) cfg.verify = false;
  if (!opt.out.empty()) cfg.output = opt.out;

  const auto records = run_experiment(cfg);
  if (cfg.output.empty()) {
    write_csv(records, std::cout);
  } else {
    std::ostringstream buf;
    write_csv(records, buf);
    save_text(cfg.output, buf.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"energy-accumulation broadcast simulator"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* cgen = app.add_subcommand("gen", "generate a network JSON file");
  cgen->add_option("--placement", gen.placement,
                   "grid|uniform-disk|gaussian|clustered");
  cgen->add_option("--n", gen.n, "node count (non-grid placements)");
  cgen->add_option("--m", gen.m, "grid side length");
  cgen->add_option("--d", gen.d, "grid spacing");
  cgen->add_option("--radius", gen.radius, "uniform disk radius");
  cgen->add_option("--sigma", gen.sigma, "gaussian spread");
  cgen->add_option("--clusters", gen.clusters, "cluster count");
  cgen->add_option("--seed", gen.seed, "RNG seed");
  cgen->add_option("--alpha", gen.alpha, "path loss exponent");
  cgen->add_option("--source", gen.source, "source node id or 'random'");
  cgen->add_option("--out", gen.out, "output file (default stdout)");

  AlgoOptions algo;
  auto* calgo = app.add_subcommand("algo", "run a broadcast constructor");
  calgo->add_option("--name", algo.name,
                    "greedy-filling|bip|mst|grid-all|grid-rows|single")
      ->required();
  calgo->add_option("--network", algo.network, "network JSON file")->required();
  calgo->add_option("--L", algo.L, "transmitting-row spacing (grid-rows)");
  calgo->add_flag("--borders", algo.borders,
                  "top and bottom rows transmit (grid-rows)");
  calgo->add_option("--out", algo.out, "schedule output file");

  ConvertOptions conv;
  auto* cconv = app.add_subcommand(
      "convert", "convert a cooperative schedule to non-cooperative");
  cconv->add_option("--network", conv.network)->required();
  cconv->add_option("--schedule", conv.schedule, "cooperative schedule JSON")
      ->required();
  cconv->add_option("--out-schedule", conv.out_schedule);
  cconv->add_option("--out-trace", conv.out_trace);
  cconv->add_flag("--no-verify{false},--verify{true}", conv.verify,
                  "check delivery of input and output (default on)");

  AnalyzeOptions ana;
  auto* cana = app.add_subcommand("analyze", "closed-form quantities");
  cana->add_option("--zeta", ana.zeta, "n alpha")->expected(2);
  cana->add_option("--beta", ana.beta, "alpha gamma")->expected(2);
  cana->add_option("--grid-bounds", ana.grid_bounds, "m d alpha")->expected(3);
  cana->add_option("--l-condition", ana.l_condition, "m L")->expected(2);

  ExperimentOptions exp;
  auto* cexp = app.add_subcommand("experiment", "run an experiment to CSV");
  cexp->require_subcommand(1);
  for (const char* kind : {"gain", "conversion-ratio", "grid"}) {
    auto* sub = cexp->add_subcommand(kind);
    sub->add_option("--config", exp.config, "experiment config JSON")
        ->required();
    sub->add_option("--out", exp.out, "CSV output file (default stdout)");
    sub->add_option("--jobs", exp.jobs, "worker threads");
    sub->add_flag("--no-verify", exp.no_verify);
    sub->callback([&exp, kind] { exp.kind = kind; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (cgen->parsed()) return cmd_gen(gen);
    if (calgo->parsed()) return cmd_algo(algo);
    if (cconv->parsed()) return cmd_convert(conv);
    if (cana->parsed()) return cmd_analyze(ana);
    if (cexp->parsed()) return cmd_experiment(exp);
  } catch (const CheckFailure& e) {
    std::cerr << "checker failure: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    // convert's full-delivery assertion lands here
    std::cerr << "checker failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
