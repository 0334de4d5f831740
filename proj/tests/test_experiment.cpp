#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <sstream>

#include "coopcast/experiment.hpp"

using namespace coopcast;
using nlohmann::json;

namespace {

std::string csv_of(const ExperimentConfig& cfg) {
  std::ostringstream out;
  write_csv(run_experiment(cfg), out);
  return out.str();
}

}  // namespace

TEST_CASE("derive_seed is stable and sensitive to every coordinate") {
  CHECK(derive_seed(1, 50, 2.0, 0) == derive_seed(1, 50, 2.0, 0));
  CHECK(derive_seed(1, 50, 2.0, 0) != derive_seed(1, 50, 2.0, 1));
  CHECK(derive_seed(1, 50, 2.0, 0) != derive_seed(1, 51, 2.0, 0));
  CHECK(derive_seed(1, 50, 2.0, 0) != derive_seed(1, 50, 2.5, 0));
  CHECK(derive_seed(1, 50, 2.0, 0) != derive_seed(2, 50, 2.0, 0));
}

TEST_CASE("config_from_json kinds, defaults, and validation") {
  json j{{"experiment", "gain"},
         {"placement", {{"kind", "uniform_disk"}, {"radius", 2.0}}},
         {"n_values", {10, 20}}};
  ExperimentConfig cfg = config_from_json(j);
  CHECK(cfg.kind == ExperimentKind::Gain);
  CHECK(cfg.runs_per_point == 50);
  CHECK(std::get<UniformDiskPlacement>(cfg.placement.kind).radius == 2.0);
  CHECK(cfg.alphas == std::vector<double>{2.0});
  CHECK(cfg.verify);
  REQUIRE(cfg.fixed_source.has_value());
  CHECK(*cfg.fixed_source == 0);

  j["experiment"] = "conversion-ratio";
  CHECK(config_from_json(j).runs_per_point == 1000);
  j["experiment"] = "grid";
  j["placement"] = {{"kind", "grid"}, {"d", 1.0}};
  CHECK(config_from_json(j).runs_per_point == 100);

  j["source"] = "random";
  CHECK_FALSE(config_from_json(j).fixed_source.has_value());
  j["source"] = 3;
  CHECK(*config_from_json(j).fixed_source == 3);

  j["n_values"] = {20, 10};
  CHECK_THROWS_AS(config_from_json(j), std::invalid_argument);
  j["n_values"] = {10, 10};
  CHECK_THROWS_AS(config_from_json(j), std::invalid_argument);
  j["n_values"] = {10, 20};
  j["experiment"] = "nope";
  CHECK_THROWS_AS(config_from_json(j), std::invalid_argument);
}

TEST_CASE("gain experiment: deterministic rows in (n, alpha, run) order") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::Gain;
  cfg.placement.kind = UniformDiskPlacement{2, 1.0};
  cfg.n_values = {10, 20};
  cfg.alphas = {2.0, 3.0};
  cfg.runs_per_point = 2;
  cfg.base_seed = 1;
  cfg.jobs = 2;

  const auto records = run_gain_experiment(cfg);
  REQUIRE(records.size() == 8);
  CHECK(records[0].n == 10);
  CHECK(records[0].alpha == 2.0);
  CHECK(records[1].alpha == 2.0);
  CHECK(records[2].alpha == 3.0);
  CHECK(records[4].n == 20);
  for (const auto& r : records) {
    CHECK(r.experiment == "gain");
    CHECK(r.placement == "uniform_disk");
    CHECK(r.p_coop > 0.0);
    CHECK(r.p_noncoop > 0.0);
    CHECK(r.gain_value == doctest::Approx(r.p_noncoop / r.p_coop));
    const std::string baseline = r.extra.at("baseline").get<std::string>();
    CHECK((baseline == "bip" || baseline == "mst"));
    CHECK(r.seed == derive_seed(1, r.n, r.alpha,
                                (&r - records.data()) % 2));
  }

  // byte-identical CSV on a re-run, and independent of the job count
  const std::string once = csv_of(cfg);
  CHECK(once == csv_of(cfg));
  cfg.jobs = 5;
  CHECK(once == csv_of(cfg));
  CHECK(once.find("\r\n") == std::string::npos);
  CHECK(once.rfind("experiment,n,alpha,placement,seed,p_noncoop,p_coop,"
                   "gain,extra_json\n",
                   0) == 0);
}

TEST_CASE("conversion-ratio experiment records ratio and ceiling") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::ConversionRatio;
  cfg.placement.kind = UniformDiskPlacement{2, 1.0};
  cfg.n_values = {30};
  cfg.runs_per_point = 3;
  cfg.base_seed = 9;
  const auto records = run_conversion_ratio_experiment(cfg);
  REQUIRE(records.size() == 3);
  for (const auto& r : records) {
    const double ratio = r.extra.at("ratio").get<double>();
    CHECK(ratio == doctest::Approx(r.p_noncoop / r.p_coop));
    CHECK(ratio <= r.extra.at("ceiling").get<double>());
    CHECK(r.extra.at("ceiling").get<double>() ==
          doctest::Approx(127.0 * std::log(30.0)));
  }

  cfg.alphas = {3.0};
  CHECK_THROWS_AS(run_conversion_ratio_experiment(cfg),
                  std::invalid_argument);
}

TEST_CASE("grid experiment records L and source") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::GridGain;
  cfg.placement.kind = GridPlacement{2, 1.0};
  cfg.n_values = {5};
  cfg.runs_per_point = 3;
  cfg.base_seed = 4;
  cfg.fixed_source = std::nullopt;  // random per run
  const auto records = run_grid_experiment(cfg);
  REQUIRE(records.size() == 3);
  for (const auto& r : records) {
    CHECK(r.n == 25);
    CHECK(r.placement == "grid");
    CHECK(r.p_noncoop == doctest::Approx(25.0));  // n d^2
    CHECK(r.extra.at("m").get<int>() == 5);
    CHECK(r.extra.at("L").get<int>() >= 1);
    CHECK(r.extra.at("source").get<NodeId>() < 25);
  }

  cfg.placement.kind = UniformDiskPlacement{2, 1.0};
  CHECK_THROWS_AS(run_grid_experiment(cfg), std::invalid_argument);
}

TEST_CASE("write_csv formatting and quoting") {
  GainRecord r{"gain", 5, 2.5, "uniform_disk", 42, 1.0 / 3.0, 0.25,
               (1.0 / 3.0) / 0.25, json{{"note", "say \"hi\""}}};
  std::ostringstream out;
  write_csv({r}, out);
  const std::string text = out.str();
  CHECK(text.find("gain,5,2.5,uniform_disk,42,0.333333333333,0.25,") !=
        std::string::npos);
  // JSON escapes the inner quote as \" and CSV quoting doubles the "
  CHECK(text.find("say \\\"\"hi\\\"\"") != std::string::npos);
}
