#include "ksb/env/instance_io.hpp"

#include <fstream>

#include <fmt/format.h>

namespace ksb::env {

using nlohmann::json;

namespace {

const json& field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key))
    throw InvalidArgument(fmt::format("instance document is missing '{}'", key));
  return doc.at(key);
}

Matrix matrix_from(const json& j, const char* what) {
  if (!j.is_array()) throw InvalidArgument(fmt::format("'{}' must be an array of rows", what));
  try {
    return Matrix::from_rows(j.get<std::vector<std::vector<double>>>());
  } catch (const json::exception&) {
    throw InvalidArgument(fmt::format("'{}' must contain numeric rows", what));
  }
}

json matrix_to(const Matrix& m) { return m.to_rows(); }

ScaledBernoulli dist_from(const json& j) {
  ScaledBernoulli d;
  d.mean = field(j, "mean").get<double>();
  d.scale = j.value("scale", 1.0);
  return d;
}

json dist_to(const ScaledBernoulli& d) { return {{"mean", d.mean}, {"scale", d.scale}}; }

}  // namespace

Instance instance_from_json(const json& doc) {
  const std::string kind = doc.value("kind", std::string("bnrm"));
  try {
    if (kind == "bnrm") {
      BnrmInstance inst;
      inst.T = field(doc, "T").get<std::int64_t>();
      inst.B = field(doc, "B").get<std::vector<double>>();
      inst.prices = matrix_from(field(doc, "prices"), "prices");
      inst.consumption = matrix_from(field(doc, "consumption"), "consumption");
      if (inst.consumption.rows() == 0) inst.consumption = Matrix(0, inst.prices.rows());
      const json& demand = field(doc, "demand");
      inst.demand.kind = demand_kind_from_string(field(demand, "model").get<std::string>());
      if (inst.demand.kind == DemandKind::BernoulliTable)
        inst.demand.table = matrix_from(field(demand, "q"), "q");
      inst.validate();
      return inst;
    }
    if (kind == "bwk") {
      BwkInstance inst;
      inst.T = field(doc, "T").get<std::int64_t>();
      inst.B = field(doc, "B").get<std::vector<double>>();
      for (const auto& r : field(doc, "reward")) inst.reward.push_back(dist_from(r));
      for (const auto& row : field(doc, "cost")) {
        auto& out = inst.cost.emplace_back();
        for (const auto& c : row) out.push_back(dist_from(c));
      }
      inst.validate();
      return inst;
    }
  } catch (const json::exception& e) {
    throw InvalidArgument(fmt::format("malformed instance document: {}", e.what()));
  }
  throw InvalidArgument(fmt::format("unknown instance kind '{}'", kind));
}

json instance_to_json(const Instance& inst) {
  if (const auto* nrm = std::get_if<BnrmInstance>(&inst)) {
    json demand = {{"model", to_string(nrm->demand.kind)}};
    if (nrm->demand.kind == DemandKind::BernoulliTable) demand["q"] = matrix_to(nrm->demand.table);
    return {{"kind", "bnrm"},
            {"T", nrm->T},
            {"B", nrm->B},
            {"prices", matrix_to(nrm->prices)},
            {"consumption", matrix_to(nrm->consumption)},
            {"demand", demand}};
  }
  const auto& bw = std::get<BwkInstance>(inst);
  json reward = json::array();
  for (const auto& r : bw.reward) reward.push_back(dist_to(r));
  json cost = json::array();
  for (const auto& row : bw.cost) {
    json out = json::array();
    for (const auto& c : row) out.push_back(dist_to(c));
    cost.push_back(out);
  }
  return {{"kind", "bwk"}, {"T", bw.T}, {"B", bw.B}, {"reward", reward}, {"cost", cost}};
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument(fmt::format("cannot open instance file '{}'", path.string()));
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw InvalidArgument(fmt::format("{}: {}", path.string(), e.what()));
  }
  return instance_from_json(doc);
}

}  // namespace ksb::env
