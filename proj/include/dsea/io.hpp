#pragma once

#include <string>
#include <utility>

#include "dsea/ensemble.hpp"
#include "dsea/fluct.hpp"

namespace dsea {

/// FNV-1a hash of a string, used to stamp outputs with the resolved
/// configuration they came from.
std::uint64_t fnv1a(const std::string& data);

/// Write text to path atomically (temp file + rename).
void atomic_write(const std::string& path, const std::string& content);

std::string to_json(const FluctuationResult& result);
std::string to_json(const EquilibriumReport& report);
std::string to_json(const MeasurementReport& report);

/// CSV with a commented header line; one row per (trajectory, slice).
std::string trajectories_csv(const EnsembleResult& result);
/// CSV sweep row block: b, cutoff, n0, stddev columns.
std::string fluct_csv(const std::vector<FluctuationResult>& rows,
                      const std::vector<std::pair<double, double>>& b_cutoff);

/// State and operator checkpoints: JSON header followed by a base64
/// payload of the raw doubles / sparse triplets.
std::string serialize_state(const QuantumState& state);
QuantumState deserialize_state(const std::string& text);
std::string serialize_operator(const OperatorMatrix& op);
OperatorMatrix deserialize_operator(const std::string& text);

} // namespace dsea
