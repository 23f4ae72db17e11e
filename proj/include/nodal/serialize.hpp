#pragma once

#include "json.hpp"

#include "nodal/barrier.hpp"
#include "nodal/census.hpp"
#include "nodal/simulate.hpp"
#include "nodal/symmetrize.hpp"

// JSON forms of every artifact. Each top-level document carries "schema": 1
// and a "kind" tag; from_json rejects other schema versions.
namespace nodal {

inline constexpr int kSchemaVersion = 1;

struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void to_json(nlohmann::json& j, const LogMagnitude& v);
void from_json(const nlohmann::json& j, LogMagnitude& v);
void to_json(nlohmann::json& j, const Interval& v);
void from_json(const nlohmann::json& j, Interval& v);
void to_json(nlohmann::json& j, const HypothesisCheck& v);
void from_json(const nlohmann::json& j, HypothesisCheck& v);
void to_json(nlohmann::json& j, const HypothesisChecklist& v);
void from_json(const nlohmann::json& j, HypothesisChecklist& v);
void to_json(nlohmann::json& j, const BarrierConfig& v);
void from_json(const nlohmann::json& j, BarrierConfig& v);
void to_json(nlohmann::json& j, const OrderContribution& v);
void from_json(const nlohmann::json& j, OrderContribution& v);
void to_json(nlohmann::json& j, const SAccumulation& v);
void from_json(const nlohmann::json& j, SAccumulation& v);
void to_json(nlohmann::json& j, const GridSpec& v);
void from_json(const nlohmann::json& j, GridSpec& v);

// Top-level documents.
nlohmann::json to_document(const BarrierCertificate& c);
nlohmann::json to_document(const SymmetrizationCertificate& c);
nlohmann::json to_document(const EnsembleStats& s);
nlohmann::json to_document(const NodalCensus& c, const WaveSample& sample);

BarrierCertificate barrier_from_document(const nlohmann::json& j);
SymmetrizationCertificate symmetrization_from_document(const nlohmann::json& j);
EnsembleStats ensemble_from_document(const nlohmann::json& j);

/// "barrier", "symmetrization", "ensemble" or "census"; checks the schema.
std::string document_kind(const nlohmann::json& j);

}  // namespace nodal
