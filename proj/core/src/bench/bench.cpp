#include "ksb/bench/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <thread>

#include <fmt/format.h>

#include "ksb/error.hpp"
#include "ksb/lp/packing.hpp"
#include "ksb/policy/runner.hpp"

namespace ksb::bench {

std::vector<std::int64_t> default_T_grid() {
  std::vector<std::int64_t> grid;
  for (std::int64_t T = 1000; T <= 10000; T += 1000) grid.push_back(T);
  return grid;
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
  if (instances.empty()) throw InvalidArgument("config lists no instances");
  if (policies.empty()) throw InvalidArgument("config lists no policies");
  if (T_grid.empty()) throw InvalidArgument("T_grid is empty");
  for (std::size_t i = 0; i < T_grid.size(); ++i) {
    if (T_grid[i] < 1) throw InvalidArgument("T_grid entries must be positive");
    if (i > 0 && T_grid[i] <= T_grid[i - 1])
      throw InvalidArgument("T_grid must be strictly ascending");
  }
  for (const auto& p : policies) p.validate();
}

ExperimentConfig config_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InvalidArgument("config must be a JSON object");
  static const std::vector<std::string> known = {"instances", "T_grid",  "policies",
                                                 "trials",    "master_seed", "parallel",
                                                 "output",    "stockout_period"};
  for (const auto& [key, _] : doc.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw InvalidArgument(fmt::format("unknown config field '{}'", key));

  ExperimentConfig cfg;
  cfg.T_grid = default_T_grid();
  try {
    if (doc.contains("instances"))
      for (const auto& entry : doc.at("instances")) {
        Scenario sc;
        sc.model = env::demand_kind_from_string(entry.at("model").get<std::string>());
        if (sc.model == env::DemandKind::BernoulliTable)
          throw InvalidArgument("benchmark scenarios need a parametric demand model");
        sc.inventory = env::inventory_level_from_string(entry.at("inventory").get<std::string>());
        cfg.instances.push_back(sc);
      }
    if (doc.contains("T_grid")) cfg.T_grid = doc.at("T_grid").get<std::vector<std::int64_t>>();
    if (doc.contains("policies"))
      for (const auto& entry : doc.at("policies")) cfg.policies.push_back(policy::spec_from_json(entry));
    if (doc.contains("trials")) {
      const auto t = doc.at("trials").get<std::int64_t>();
      if (t < 1) throw InvalidArgument("trials must be >= 1");
      cfg.trials = static_cast<std::size_t>(t);
    }
    cfg.master_seed = doc.value("master_seed", cfg.master_seed);
    cfg.parallel = doc.value("parallel", cfg.parallel);
    cfg.output = doc.value("output", cfg.output);
    if (doc.contains("stockout_period"))
      cfg.stockout = env::stockout_rule_from_string(doc.at("stockout_period").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(fmt::format("malformed config: {}", e.what()));
  }
  cfg.validate();
  return cfg;
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json doc;
  auto& inst = doc["instances"] = nlohmann::json::array();
  for (const auto& sc : cfg.instances)
    inst.push_back({{"model", env::to_string(sc.model)}, {"inventory", env::to_string(sc.inventory)}});
  doc["T_grid"] = cfg.T_grid;
  auto& pol = doc["policies"] = nlohmann::json::array();
  for (const auto& p : cfg.policies) pol.push_back(policy::spec_to_json(p));
  doc["trials"] = cfg.trials;
  doc["master_seed"] = cfg.master_seed;
  doc["parallel"] = cfg.parallel;
  doc["output"] = cfg.output;
  doc["stockout_period"] = env::to_string(cfg.stockout);
  return doc;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument(fmt::format("cannot open config '{}'", path));
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(fmt::format("config '{}' is not valid JSON: {}", path, e.what()));
  }
  return config_from_json(doc);
}

double dlp_upper(const env::Instance& inst) {
  const auto reward = env::expected_reward(inst);
  const auto cost = env::expected_cost(inst);
  lp::Budget budget{static_cast<double>(env::horizon(inst)), env::inventory(inst)};
  return lp::solve_packing(lp::build_dlp_g(reward, cost, budget)).value;
}

env::BnrmInstance scenario_instance(const Scenario& sc, std::int64_t T) {
  return env::standard_instance(sc.model, sc.inventory, T);
}

namespace {

std::string sanitize(std::string text) {
  for (char& c : text)
    if (c == ',' || c == '\n' || c == '\r') c = c == ',' ? ';' : ' ';
  return text;
}

void play(ResultRow& row, const policy::PolicySpec& spec, const env::Instance& inst,
          env::StockoutRule rule) {
  try {
    const auto rec = policy::run_policy(spec, inst, env::Seed{row.seed, row.trial}, rule);
    row.revenue = rec.revenue;
    row.switches = rec.switches;
    row.stop_time = rec.stop_time;
    row.normalized = row.dlp_upper > 0.0 ? row.revenue / row.dlp_upper : 0.0;
    if (rec.guard_trips > 0)
      row.error = fmt::format("budget guard tripped {} times", rec.guard_trips);
  } catch (const std::exception& e) {
    row.revenue = 0.0;
    row.switches = 0;
    row.stop_time = 0;
    row.normalized = 0.0;
    row.error = sanitize(e.what());
  }
}

struct Cell {
  Scenario scenario;
  std::int64_t T;
  std::size_t policy;
  env::Instance instance;
  double upper;
  std::string upper_error;
};

}  // namespace

std::vector<ResultRow> run_benchmark(const ExperimentConfig& cfg,
                                     const std::function<void(std::size_t)>& progress) {
  cfg.validate();
  std::vector<Cell> cells;
  for (const auto& sc : cfg.instances)
    for (const auto T : cfg.T_grid) {
      env::Instance inst = scenario_instance(sc, T);
      double upper = 0.0;
      std::string err;
      try {
        upper = dlp_upper(inst);
        if (!(upper > 0.0)) err = "DLP upper bound is not positive";
      } catch (const std::exception& e) {
        err = sanitize(e.what());
      }
      for (std::size_t p = 0; p < cfg.policies.size(); ++p)
        cells.push_back(Cell{sc, T, p, inst, upper, err});
    }

  std::vector<std::string> labels;
  for (const auto& p : cfg.policies) labels.push_back(policy::label(p));

  const std::size_t total = cells.size() * cfg.trials;
  std::vector<ResultRow> rows(total);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};

  auto worker = [&] {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= total) return;
      const auto& cell = cells[idx / cfg.trials];
      ResultRow& row = rows[idx];
      row.model = env::to_string(cell.scenario.model);
      row.inventory = env::to_string(cell.scenario.inventory);
      row.T = cell.T;
      row.policy = labels[cell.policy];
      row.trial = idx % cfg.trials;
      row.seed = cfg.master_seed;
      row.dlp_upper = cell.upper;
      if (!cell.upper_error.empty())
        row.error = cell.upper_error;
      else
        play(row, cfg.policies[cell.policy], cell.instance, cfg.stockout);
      const std::size_t n = done.fetch_add(1) + 1;
      if (progress) progress(n);
    }
  };

  std::size_t workers = cfg.parallel ? cfg.parallel : std::thread::hardware_concurrency();
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(1, total));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return rows;
}

ResultRow replay_row(const ResultRow& row, env::StockoutRule rule) {
  ResultRow out = row;
  out.error.clear();
  Scenario sc{env::demand_kind_from_string(row.model),
              env::inventory_level_from_string(row.inventory)};
  const env::Instance inst = scenario_instance(sc, row.T);
  out.dlp_upper = dlp_upper(inst);
  play(out, policy::parse_label(row.policy), inst, rule);
  return out;
}

std::string format_row(const ResultRow& r) {
  return fmt::format("{},{},{},{},{},{},{:.6f},{:.6f},{:.8f},{},{},{}", r.model, r.inventory, r.T,
                     r.policy, r.trial, r.seed, r.revenue, r.dlp_upper, r.normalized, r.switches,
                     r.stop_time, r.error);
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) out << format_row(r) << '\n';
}

void write_csv(const std::string& path, const std::vector<ResultRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument(fmt::format("cannot write '{}'", path));
  write_csv(out, rows);
  if (!out) throw Error(fmt::format("failed while writing '{}'", path));
}

namespace {

template <class T>
T parse_number(std::string_view text, std::size_t line) {
  T v{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end)
    throw InvalidArgument(fmt::format("line {}: bad number '{}'", line, text));
  return v;
}

}  // namespace

std::vector<ResultRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw InvalidArgument(fmt::format("unexpected CSV header '{}'", line));

  std::vector<ResultRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string_view> f;
    std::string_view rest(line);
    for (int i = 0; i < 11; ++i) {
      const auto comma = rest.find(',');
      if (comma == std::string_view::npos)
        throw InvalidArgument(fmt::format("line {}: expected 12 fields", lineno));
      f.push_back(rest.substr(0, comma));
      rest.remove_prefix(comma + 1);
    }
    f.push_back(rest);
    ResultRow r;
    r.model = f[0];
    r.inventory = f[1];
    r.T = parse_number<std::int64_t>(f[2], lineno);
    r.policy = f[3];
    r.trial = parse_number<std::size_t>(f[4], lineno);
    r.seed = parse_number<std::uint64_t>(f[5], lineno);
    r.revenue = parse_number<double>(f[6], lineno);
    r.dlp_upper = parse_number<double>(f[7], lineno);
    r.normalized = parse_number<double>(f[8], lineno);
    r.switches = parse_number<std::size_t>(f[9], lineno);
    r.stop_time = parse_number<std::int64_t>(f[10], lineno);
    r.error = f[11];
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<ResultRow> read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument(fmt::format("cannot open CSV '{}'", path));
  return read_csv(in);
}

namespace {

struct Stats {
  double mean = 0.0, stderr_ = 0.0, median = 0.0;
};

Stats describe(std::vector<double> v) {
  Stats s;
  if (v.empty()) return s;
  const double n = static_cast<double>(v.size());
  double sum = 0.0;
  for (double x : v) sum += x;
  s.mean = sum / n;
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.stderr_ = std::sqrt(ss / (n - 1.0) / n);
  }
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  s.median = v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
  return s;
}

}  // namespace

std::vector<CellSummary> summarize(const std::vector<ResultRow>& rows) {
  struct Acc {
    CellSummary cell;
    std::vector<double> normalized, switches, revenue;
  };
  std::vector<Acc> accs;
  for (const auto& r : rows) {
    auto it = std::find_if(accs.begin(), accs.end(), [&](const Acc& a) {
      return a.cell.model == r.model && a.cell.inventory == r.inventory && a.cell.T == r.T &&
             a.cell.policy == r.policy;
    });
    if (it == accs.end()) {
      Acc a;
      a.cell.model = r.model;
      a.cell.inventory = r.inventory;
      a.cell.T = r.T;
      a.cell.policy = r.policy;
      accs.push_back(std::move(a));
      it = std::prev(accs.end());
    }
    if (!r.error.empty()) {
      ++it->cell.errors;
      continue;
    }
    it->normalized.push_back(r.normalized);
    it->switches.push_back(static_cast<double>(r.switches));
    it->revenue.push_back(r.revenue);
  }

  std::vector<CellSummary> out;
  for (auto& a : accs) {
    a.cell.trials = a.normalized.size();
    const auto n = describe(a.normalized);
    const auto s = describe(a.switches);
    a.cell.mean_normalized = n.mean;
    a.cell.stderr_normalized = n.stderr_;
    a.cell.median_normalized = n.median;
    a.cell.mean_switches = s.mean;
    a.cell.stderr_switches = s.stderr_;
    a.cell.median_switches = s.median;
    a.cell.mean_revenue = describe(a.revenue).mean;
    out.push_back(a.cell);
  }
  return out;
}

void write_summary(std::ostream& out, const std::vector<CellSummary>& cells) {
  out << kSummaryHeader << '\n';
  for (const auto& c : cells)
    out << fmt::format("{},{},{},{},{},{},{:.8f},{:.8f},{:.8f},{:.4f},{:.4f},{:.4f},{:.6f}\n",
                       c.model, c.inventory, c.T, c.policy, c.trials, c.errors, c.mean_normalized,
                       c.stderr_normalized, c.median_normalized, c.mean_switches,
                       c.stderr_switches, c.median_switches, c.mean_revenue);
}

}  // namespace ksb::bench
