#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace ksb::policy {

enum class PolicyKind { LS2SLP, TweakedLP, BZ12, FSW18, PD };

std::string to_string(PolicyKind kind);

/// Discount applied to planned block lengths.
struct GammaMode {
  bool formula = false;  // theory value, clamped to [0, 1]
  double value = 1.0;    // used when !formula

  static GammaMode fixed(double v) { return {false, v}; }
  static GammaMode from_formula() { return {true, 1.0}; }

  friend bool operator==(const GammaMode&, const GammaMode&) = default;
};

struct PolicySpec {
  PolicyKind kind = PolicyKind::LS2SLP;
  int s = 8;             // switching budget, LS2SLP only
  GammaMode gamma;       // LS2SLP, BZ12, TweakedLP
  bool update = false;   // re-base LPs on remaining inventory and time
  double theta = 1.0;    // BZ12 exploration scale
  double prior_alpha = 1.0;  // FSW18 Beta prior
  double prior_beta = 1.0;
  std::optional<double> eps;  // PD dual step; default sqrt(log(d+1)/B_min)

  void validate() const;

  friend bool operator==(const PolicySpec&, const PolicySpec&) = default;
};

/// Canonical name used in result files, e.g. "LS(8)", "LS(12)-Update",
/// "BZ12", "FSW18-Update", "PD", "TweakedLP". Non-default hyperparameters
/// follow in brackets: "BZ12[theta=0.5]", "LS(8)[gamma=formula]".
std::string label(const PolicySpec& spec);

/// Inverse of label(). Throws InvalidArgument on unknown names.
PolicySpec parse_label(std::string_view text);

/// {"kind": "LS2SLP", "s": 8, "update": false, "gamma": 1 | "formula",
///  "theta": 1, "prior": {"alpha": 1, "beta": 1}, "eps": 0.05}
/// Only "kind" is required; "LS2SLP_Update" is accepted as a kind and
/// {"label": "LS(8)"} may replace the whole object.
PolicySpec spec_from_json(const nlohmann::json& doc);
nlohmann::json spec_to_json(const PolicySpec& spec);

}  // namespace ksb::policy
