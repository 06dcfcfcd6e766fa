#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "ksb/env/instance.hpp"

namespace ksb::env {

/// Instance documents.
///
///   {"kind": "bnrm", "T": 1000, "B": [300, 500, 700],
///    "prices": [[...K...], ...n rows...],
///    "consumption": [[...n...], ...d rows...],
///    "demand": {"model": "linear"}}
///
/// "demand" may instead be {"model": "bernoulli_table", "q": [[...K...], ...n rows...]}.
///
///   {"kind": "bwk", "T": 1000, "B": [...d...],
///    "reward": [{"mean": 0.5, "scale": 1}, ...K...],
///    "cost": [[{"mean": 0.2, "scale": 1}, ...K...], ...d rows...]}
///
/// "scale" defaults to 1. Parsing validates the result.
Instance instance_from_json(const nlohmann::json& doc);
nlohmann::json instance_to_json(const Instance& inst);

Instance load_instance(const std::filesystem::path& path);

}  // namespace ksb::env
