#pragma once

#include "dirichlet/bohr.hpp"
#include "dirichlet/dseries.hpp"
#include "dirichlet/sampling.hpp"

#include <json.hpp>

#include <string>

namespace dirichlet::json_io {

// {"N": int, "coeffs": [[n, re, im], ...]} sparse, n ascending.
nlohmann::json series_to_json(const dseries::DirichletCoeffs& f);
dseries::DirichletCoeffs series_from_json(const nlohmann::json& j);

// {"c0": 0, "coeffs": [[n, re, im], ...], "tol": 1e-6}
nlohmann::json symbol_to_json(const bohr::Symbol& sym);
bohr::Symbol symbol_from_json(const nlohmann::json& j);

// {"epsilon": ..., "mean": ..., "stderr": ..., "n": ..., "seed": ...}
nlohmann::json estimate_to_json(const sampling::MeasureEstimate& est,
                                double epsilon);

// FNV-1a over the canonical (sorted-key, compact) serialization.
std::string config_hash(const nlohmann::json& config);

} // namespace dirichlet::json_io
