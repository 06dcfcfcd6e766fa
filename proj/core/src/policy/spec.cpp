#include "ksb/policy/spec.hpp"

#include <charconv>
#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "ksb/error.hpp"

namespace ksb::policy {

std::string to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::LS2SLP: return "LS2SLP";
    case PolicyKind::TweakedLP: return "TweakedLP";
    case PolicyKind::BZ12: return "BZ12";
    case PolicyKind::FSW18: return "FSW18";
    case PolicyKind::PD: return "PD";
  }
  return "unknown";
}

void PolicySpec::validate() const {
  if (s < 0) throw InvalidArgument("switching budget s must be >= 0");
  if (!gamma.formula && !(gamma.value >= 0.0 && gamma.value <= 1.0))
    throw InvalidArgument("gamma must lie in [0, 1]");
  if (!(theta > 0.0) || !std::isfinite(theta)) throw InvalidArgument("theta must be > 0");
  if (!(prior_alpha > 0.0) || !(prior_beta > 0.0))
    throw InvalidArgument("Beta prior parameters must be > 0");
  if (eps && !(*eps > 0.0)) throw InvalidArgument("eps must be > 0");
  if (update && (kind == PolicyKind::TweakedLP || kind == PolicyKind::PD))
    throw InvalidArgument(to_string(kind) + " has no inventory-updating variant");
}

namespace {

double parse_double(std::string_view text, std::string_view what) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end)
    throw InvalidArgument(fmt::format("bad number '{}' for {}", text, what));
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == sep) {
      out.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

std::string label(const PolicySpec& spec) {
  std::string out;
  switch (spec.kind) {
    case PolicyKind::LS2SLP: out = fmt::format("LS({})", spec.s); break;
    default: out = to_string(spec.kind); break;
  }
  if (spec.update) out += "-Update";

  PolicySpec defaults;
  defaults.kind = spec.kind;
  std::vector<std::string> params;
  if (!(spec.gamma == defaults.gamma))
    params.push_back(spec.gamma.formula ? "gamma=formula" : fmt::format("gamma={}", spec.gamma.value));
  if (spec.theta != defaults.theta) params.push_back(fmt::format("theta={}", spec.theta));
  if (spec.prior_alpha != defaults.prior_alpha)
    params.push_back(fmt::format("alpha={}", spec.prior_alpha));
  if (spec.prior_beta != defaults.prior_beta)
    params.push_back(fmt::format("beta={}", spec.prior_beta));
  if (spec.eps) params.push_back(fmt::format("eps={}", *spec.eps));
  if (!params.empty()) out += fmt::format("[{}]", fmt::join(params, ";"));
  return out;
}

PolicySpec parse_label(std::string_view text) {
  PolicySpec spec;
  std::string_view params;
  if (const auto open = text.find('['); open != std::string_view::npos) {
    if (text.back() != ']') throw InvalidArgument(fmt::format("bad policy label '{}'", text));
    params = text.substr(open + 1, text.size() - open - 2);
    text = text.substr(0, open);
  }
  constexpr std::string_view kUpdate = "-Update";
  if (text.size() > kUpdate.size() && text.substr(text.size() - kUpdate.size()) == kUpdate) {
    spec.update = true;
    text.remove_suffix(kUpdate.size());
  }

  if (text.size() > 4 && text.substr(0, 3) == "LS(" && text.back() == ')') {
    spec.kind = PolicyKind::LS2SLP;
    const auto inner = text.substr(3, text.size() - 4);
    int s = 0;
    auto [ptr, ec] = std::from_chars(inner.data(), inner.data() + inner.size(), s);
    if (ec != std::errc() || ptr != inner.data() + inner.size())
      throw InvalidArgument(fmt::format("bad switching budget in '{}'", text));
    spec.s = s;
  } else if (text == "TweakedLP") {
    spec.kind = PolicyKind::TweakedLP;
  } else if (text == "BZ12") {
    spec.kind = PolicyKind::BZ12;
  } else if (text == "FSW18") {
    spec.kind = PolicyKind::FSW18;
  } else if (text == "PD") {
    spec.kind = PolicyKind::PD;
  } else {
    throw InvalidArgument(fmt::format("unknown policy '{}'", text));
  }

  if (!params.empty()) {
    for (auto kv : split(params, ';')) {
      const auto eq = kv.find('=');
      if (eq == std::string_view::npos)
        throw InvalidArgument(fmt::format("bad policy parameter '{}'", kv));
      const auto key = kv.substr(0, eq);
      const auto val = kv.substr(eq + 1);
      if (key == "gamma")
        spec.gamma = val == "formula" ? GammaMode::from_formula()
                                      : GammaMode::fixed(parse_double(val, key));
      else if (key == "theta")
        spec.theta = parse_double(val, key);
      else if (key == "alpha")
        spec.prior_alpha = parse_double(val, key);
      else if (key == "beta")
        spec.prior_beta = parse_double(val, key);
      else if (key == "eps")
        spec.eps = parse_double(val, key);
      else
        throw InvalidArgument(fmt::format("unknown policy parameter '{}'", key));
    }
  }
  spec.validate();
  return spec;
}

PolicySpec spec_from_json(const nlohmann::json& doc) {
  if (doc.is_string()) return parse_label(doc.get<std::string>());
  if (!doc.is_object()) throw InvalidArgument("policy entry must be an object or a label string");
  if (doc.contains("label")) return parse_label(doc.at("label").get<std::string>());
  if (!doc.contains("kind")) throw InvalidArgument("policy entry is missing 'kind'");

  PolicySpec spec;
  try {
    const auto kind = doc.at("kind").get<std::string>();
    if (kind == "LS2SLP" || kind == "LS") {
      spec.kind = PolicyKind::LS2SLP;
    } else if (kind == "LS2SLP_Update") {
      spec.kind = PolicyKind::LS2SLP;
      spec.update = true;
    } else if (kind == "TweakedLP") {
      spec.kind = PolicyKind::TweakedLP;
    } else if (kind == "BZ12") {
      spec.kind = PolicyKind::BZ12;
    } else if (kind == "FSW18") {
      spec.kind = PolicyKind::FSW18;
    } else if (kind == "PD") {
      spec.kind = PolicyKind::PD;
    } else {
      throw InvalidArgument(fmt::format("unknown policy kind '{}'", kind));
    }
    spec.s = doc.value("s", spec.s);
    spec.update = doc.value("update", spec.update);
    if (doc.contains("gamma")) {
      const auto& g = doc.at("gamma");
      if (g.is_string()) {
        if (g.get<std::string>() != "formula")
          throw InvalidArgument("gamma must be a number or \"formula\"");
        spec.gamma = GammaMode::from_formula();
      } else {
        spec.gamma = GammaMode::fixed(g.get<double>());
      }
    }
    spec.theta = doc.value("theta", spec.theta);
    if (doc.contains("prior")) {
      spec.prior_alpha = doc.at("prior").value("alpha", spec.prior_alpha);
      spec.prior_beta = doc.at("prior").value("beta", spec.prior_beta);
    }
    if (doc.contains("eps")) spec.eps = doc.at("eps").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(fmt::format("malformed policy entry: {}", e.what()));
  }
  spec.validate();
  return spec;
}

nlohmann::json spec_to_json(const PolicySpec& spec) {
  nlohmann::json doc = {{"kind", to_string(spec.kind)}, {"update", spec.update}};
  if (spec.kind == PolicyKind::LS2SLP) doc["s"] = spec.s;
  if (spec.gamma.formula)
    doc["gamma"] = "formula";
  else
    doc["gamma"] = spec.gamma.value;
  if (spec.kind == PolicyKind::BZ12) doc["theta"] = spec.theta;
  if (spec.kind == PolicyKind::FSW18)
    doc["prior"] = {{"alpha", spec.prior_alpha}, {"beta", spec.prior_beta}};
  if (spec.eps) doc["eps"] = *spec.eps;
  return doc;
}

}  // namespace ksb::policy
