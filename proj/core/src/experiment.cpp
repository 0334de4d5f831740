#include "coopcast/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <ostream>
#include <thread>

#include "coopcast/algos.hpp"
#include "coopcast/broadcast.hpp"
#include "coopcast/convert.hpp"
#include "coopcast/rng.hpp"

namespace coopcast {

std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t n,
                          double alpha, std::uint64_t run) {
  std::uint64_t h = mix64(base_seed);
  h = mix64(h ^ n);
  h = mix64(h ^ std::bit_cast<std::uint64_t>(alpha));
  h = mix64(h ^ run);
  return h;
}

namespace {

const char* placement_name(const PlacementSpec& spec) {
  if (std::holds_alternative<GridPlacement>(spec.kind)) return "grid";
  if (std::holds_alternative<UniformDiskPlacement>(spec.kind))
    return "uniform_disk";
  if (std::holds_alternative<GaussianPlacement>(spec.kind)) return "gaussian";
  return "clustered";
}

PlacementSpec with_count(PlacementSpec spec, int count, std::uint64_t seed) {
  std::visit(
      [&](auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, GridPlacement>)
          k.m = count;
        else
          k.n = count;
      },
      spec.kind);
  spec.seed = seed;
  return spec;
}

SourceRule source_rule_of(const ExperimentConfig& cfg) {
  return cfg.fixed_source ? SourceRule::Fixed(*cfg.fixed_source)
                          : SourceRule::RandomUniform();
}

// Runs tasks 0..count-1 on cfg.jobs threads; results land at their task
// index, so output order never depends on scheduling.
template <typename Task>
std::vector<GainRecord> run_indexed(int jobs, std::size_t count, Task task) {
  std::vector<GainRecord> records(count);
  const int workers =
      std::max(1, std::min<int>(jobs, static_cast<int>(count)));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) records[i] = task(i);
    return records;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          records[i] = task(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next.store(count);
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return records;
}

[[noreturn]] void fail_check(const char* what, std::uint64_t seed) {
  throw CheckFailure(std::string(what) +
                     " (reproduce with seed=" + std::to_string(seed) + ")");
}

}  // namespace

std::vector<GainRecord> run_gain_experiment(const ExperimentConfig& cfg) {
  struct Point {
    int n;
    double alpha;
    std::uint64_t run;
  };
  std::vector<Point> points;
  for (int n : cfg.n_values)
    for (double alpha : cfg.alphas)
      for (int run = 0; run < cfg.runs_per_point; ++run)
        points.push_back({n, alpha, static_cast<std::uint64_t>(run)});

  return run_indexed(cfg.jobs, points.size(), [&](std::size_t i) {
    const Point& pt = points[i];
    const std::uint64_t seed =
        derive_seed(cfg.base_seed, pt.n, pt.alpha, pt.run);
    const Network net = sample_placement(with_count(cfg.placement, pt.n, seed),
                                         pt.alpha, source_rule_of(cfg));

    const Schedule coop = greedy_filling(net);
    if (cfg.verify && !check_cooperative(net, coop).all_delivered)
      fail_check("greedy_filling failed cooperative delivery", seed);

    const Schedule sb = bip(net);
    const Schedule sm = mst_broadcast(net);
    if (cfg.verify) {
      if (!check_noncooperative(net, sb).all_delivered)
        fail_check("bip failed non-cooperative delivery", seed);
      if (!check_noncooperative(net, sm).all_delivered)
        fail_check("mst failed non-cooperative delivery", seed);
    }
    const double pb = total_power(sb);
    const double pm = total_power(sm);
    const double p_noncoop = std::min(pb, pm);
    const double p_coop = total_power(coop);
    return GainRecord{"gain",
                      pt.n,
                      pt.alpha,
                      placement_name(cfg.placement),
                      seed,
                      p_noncoop,
                      p_coop,
                      gain(p_noncoop, p_coop),
                      {{"baseline", pb <= pm ? "bip" : "mst"}}};
  });
}

std::vector<GainRecord> run_conversion_ratio_experiment(
    const ExperimentConfig& cfg) {
  for (double a : cfg.alphas)
    if (a != 2.0)
      throw std::invalid_argument(
          "conversion-ratio experiment requires alpha = 2");
  struct Point {
    int n;
    std::uint64_t run;
  };
  std::vector<Point> points;
  for (int n : cfg.n_values)
    for (int run = 0; run < cfg.runs_per_point; ++run)
      points.push_back({n, static_cast<std::uint64_t>(run)});

  return run_indexed(cfg.jobs, points.size(), [&](std::size_t i) {
    const Point& pt = points[i];
    const std::uint64_t seed = derive_seed(cfg.base_seed, pt.n, 2.0, pt.run);
    const Network net = sample_placement(with_count(cfg.placement, pt.n, seed),
                                         2.0, source_rule_of(cfg));
    const Schedule coop = greedy_filling(net);
    ConversionResult converted = [&] {
      try {
        return convert(net, coop, cfg.verify);
      } catch (const std::exception& e) {
        fail_check(e.what(), seed);
      }
    }();
    if (cfg.verify &&
        !check_noncooperative(net, converted.schedule).all_delivered)
      fail_check("converted schedule failed non-cooperative delivery", seed);

    const double p_coop = total_power(coop);
    const double p_conv = total_power(converted.schedule);
    const double ratio = p_conv / p_coop;
    return GainRecord{"conversion-ratio",
                      pt.n,
                      2.0,
                      placement_name(cfg.placement),
                      seed,
                      p_conv,
                      p_coop,
                      ratio,
                      {{"ratio", ratio},
                       {"ceiling", 127.0 * std::log(double(pt.n))}}};
  });
}

std::vector<GainRecord> run_grid_experiment(const ExperimentConfig& cfg) {
  for (double a : cfg.alphas)
    if (a != 2.0)
      throw std::invalid_argument("grid experiment requires alpha = 2");
  if (!std::holds_alternative<GridPlacement>(cfg.placement.kind))
    throw std::invalid_argument("grid experiment requires a grid placement");
  const double d = std::get<GridPlacement>(cfg.placement.kind).d;

  struct Point {
    int m;
    std::uint64_t run;
  };
  std::vector<Point> points;
  for (int m : cfg.n_values)
    for (int run = 0; run < cfg.runs_per_point; ++run)
      points.push_back({m, static_cast<std::uint64_t>(run)});

  return run_indexed(cfg.jobs, points.size(), [&](std::size_t i) {
    const Point& pt = points[i];
    const int n = pt.m * pt.m;
    const std::uint64_t seed = derive_seed(cfg.base_seed, n, 2.0, pt.run);
    NodeId source;
    if (cfg.fixed_source) {
      source = *cfg.fixed_source;
    } else {
      SeededRng rng(seed);
      source = static_cast<NodeId>(rng.uniform_index(n));
    }
    const GridNetwork grid = build_grid(pt.m, d, source, 2.0);

    const Schedule noncoop = grid_all_nodes(grid);
    if (cfg.verify && !check_noncooperative(grid.net, noncoop).all_delivered)
      fail_check("grid all-nodes schedule failed delivery", seed);
    const int L = max_feasible_L(grid, /*include_border_rows=*/true);
    const Schedule coop = grid_coop_rows(grid, {L, true});
    if (cfg.verify && !check_cooperative(grid.net, coop).all_delivered)
      fail_check("grid row schedule failed cooperative delivery", seed);

    const double p_noncoop = total_power(noncoop);
    const double p_coop = total_power(coop);
    return GainRecord{"grid",
                      n,
                      2.0,
                      "grid",
                      seed,
                      p_noncoop,
                      p_coop,
                      gain(p_noncoop, p_coop),
                      {{"L", L}, {"m", pt.m}, {"source", source}}};
  });
}

std::vector<GainRecord> run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case ExperimentKind::Gain:
      return run_gain_experiment(cfg);
    case ExperimentKind::ConversionRatio:
      return run_conversion_ratio_experiment(cfg);
    case ExperimentKind::GridGain:
      return run_grid_experiment(cfg);
  }
  throw std::logic_error("run_experiment: unknown kind");
}

namespace {

std::string fmt12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

void write_csv(const std::vector<GainRecord>& records, std::ostream& out) {
  out << "experiment,n,alpha,placement,seed,p_noncoop,p_coop,gain,extra_json\n";
  for (const auto& r : records) {
    out << r.experiment << ',' << r.n << ',' << fmt12(r.alpha) << ','
        << r.placement << ',' << r.seed << ',' << fmt12(r.p_noncoop) << ','
        << fmt12(r.p_coop) << ',' << fmt12(r.gain_value) << ','
        << csv_quote(r.extra.dump()) << '\n';
  }
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  const std::string kind = j.at("experiment").get<std::string>();
  if (kind == "gain") {
    cfg.kind = ExperimentKind::Gain;
    cfg.runs_per_point = 50;
  } else if (kind == "conversion-ratio") {
    cfg.kind = ExperimentKind::ConversionRatio;
    cfg.runs_per_point = 1000;
  } else if (kind == "grid") {
    cfg.kind = ExperimentKind::GridGain;
    cfg.runs_per_point = 100;
  } else {
    throw std::invalid_argument("unknown experiment kind: " + kind);
  }

  const auto& p = j.at("placement");
  const std::string pk = p.at("kind").get<std::string>();
  if (pk == "grid")
    cfg.placement.kind = GridPlacement{2, p.value("d", 1.0)};
  else if (pk == "uniform_disk")
    cfg.placement.kind = UniformDiskPlacement{2, p.value("radius", 1.0)};
  else if (pk == "gaussian")
    cfg.placement.kind = GaussianPlacement{2, p.value("sigma", 0.5)};
  else if (pk == "clustered")
    cfg.placement.kind =
        ClusteredPlacement{2, p.value("clusters", 5), p.value("sigma", 0.5)};
  else
    throw std::invalid_argument("unknown placement kind: " + pk);

  cfg.n_values = j.at("n_values").get<std::vector<int>>();
  if (cfg.n_values.empty() ||
      !std::is_sorted(cfg.n_values.begin(), cfg.n_values.end(),
                      std::less_equal<int>()))
    throw std::invalid_argument("n_values must be strictly increasing");
  if (j.contains("alphas")) cfg.alphas = j.at("alphas").get<std::vector<double>>();
  cfg.runs_per_point = j.value("runs_per_point", cfg.runs_per_point);
  if (cfg.runs_per_point < 1)
    throw std::invalid_argument("runs_per_point must be >= 1");
  cfg.base_seed = j.value("base_seed", std::uint64_t{0});
  cfg.output = j.value("output", std::string{});
  cfg.verify = j.value("verify", true);
  cfg.jobs = j.value("jobs", 1);
  if (j.contains("source")) {
    if (j.at("source").is_string()) {
      if (j.at("source").get<std::string>() != "random")
        throw std::invalid_argument("source must be an id or \"random\"");
      cfg.fixed_source = std::nullopt;
    } else {
      cfg.fixed_source = j.at("source").get<NodeId>();
    }
  }
  return cfg;
}

}  // namespace coopcast
