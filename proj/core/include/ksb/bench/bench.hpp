#pragma once

// Monte-Carlo benchmark harness: scenario grid x horizon grid x policies x
// trials, with DLP-normalized revenue and switch counts written as CSV.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ksb/env/environment.hpp"
#include "ksb/env/instance.hpp"
#include "ksb/policy/spec.hpp"

namespace ksb::bench {

struct Scenario {
  env::DemandKind model = env::DemandKind::Linear;
  env::InventoryLevel inventory = env::InventoryLevel::Small;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct ExperimentConfig {
  std::vector<Scenario> instances;
  std::vector<std::int64_t> T_grid;
  std::vector<policy::PolicySpec> policies;
  std::size_t trials = 100;
  std::uint64_t master_seed = 1;
  std::size_t parallel = 0;  // worker cap; 0 = hardware concurrency
  std::string output = "results.csv";
  env::StockoutRule stockout = env::StockoutRule::Void;

  /// Throws InvalidArgument unless trials >= 1, every list is non-empty and
  /// T_grid is strictly ascending and positive.
  void validate() const;
};

/// T = 1000, 2000, ..., 10000.
std::vector<std::int64_t> default_T_grid();

/// Reads a config document. Missing fields keep their defaults (T_grid falls
/// back to default_T_grid()); unknown fields are rejected.
ExperimentConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig load_config(const std::string& path);

struct ResultRow {
  std::string model;
  std::string inventory;
  std::int64_t T = 0;
  std::string policy;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double revenue = 0.0;
  double dlp_upper = 0.0;
  double normalized = 0.0;
  std::size_t switches = 0;
  std::int64_t stop_time = 0;
  std::string error;  // empty unless the trial failed
};

inline constexpr const char* kCsvHeader =
    "model,inventory,T,policy,trial,seed,revenue,dlp_upper,normalized,switches,stop_time,error";

/// J^DLP on the true means.
double dlp_upper(const env::Instance& inst);

/// Rows in canonical order: scenario, then T, then policy, then trial.
/// Trials run on up to cfg.parallel threads; the output does not depend on
/// the schedule. A failing trial yields a row with its error message.
std::vector<ResultRow> run_benchmark(const ExperimentConfig& cfg,
                                     const std::function<void(std::size_t)>& progress = {});

/// The standard scenario instance for (scenario, T).
env::BnrmInstance scenario_instance(const Scenario& sc, std::int64_t T);

/// Re-runs one row from its own fields.
ResultRow replay_row(const ResultRow& row, env::StockoutRule rule = env::StockoutRule::Void);

std::string format_row(const ResultRow& row);
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_csv(const std::string& path, const std::vector<ResultRow>& rows);

/// Parses a CSV written by write_csv. Throws InvalidArgument on a bad header
/// or malformed line.
std::vector<ResultRow> read_csv(std::istream& in);
std::vector<ResultRow> read_csv(const std::string& path);

struct CellSummary {
  std::string model;
  std::string inventory;
  std::int64_t T = 0;
  std::string policy;
  std::size_t trials = 0;  // rows without an error
  std::size_t errors = 0;
  double mean_normalized = 0.0;
  double stderr_normalized = 0.0;
  double median_normalized = 0.0;
  double mean_switches = 0.0;
  double stderr_switches = 0.0;
  double median_switches = 0.0;
  double mean_revenue = 0.0;
};

/// Per-cell aggregates in first-appearance order. stderr = sample sd / sqrt(n).
std::vector<CellSummary> summarize(const std::vector<ResultRow>& rows);

inline constexpr const char* kSummaryHeader =
    "model,inventory,T,policy,trials,errors,mean_normalized,stderr_normalized,median_normalized,"
    "mean_switches,stderr_switches,median_switches,mean_revenue";

void write_summary(std::ostream& out, const std::vector<CellSummary>& cells);

}  // namespace ksb::bench
