#pragma once

#include <json.hpp>

#include "blockfade/analysis.hpp"
#include "blockfade/dof.hpp"
#include "blockfade/identify.hpp"
#include "blockfade/jacobian.hpp"
#include "blockfade/model.hpp"
#include "blockfade/pilots.hpp"

namespace blockfade {

using json = nlohmann::json;

// complex entries as [re, im]; matrices as arrays of rows
json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);

// {"exact": "p/q", "decimal": p/q as double}
json rational_to_json(const Rational& q);

void to_json(json& j, const Dims& d);
void from_json(const json& j, Dims& d);
void to_json(json& j, const ColoringMatrix& z);
void from_json(const json& j, ColoringMatrix& z);
void to_json(json& j, const PilotAssignment& pa);
void from_json(const json& j, PilotAssignment& pa);
void to_json(json& j, const PropertyReport& rep);
void to_json(json& j, const DofReport& rep);
void to_json(json& j, const ProbeStats& st);
void to_json(json& j, const TrialSummary& st);
void to_json(json& j, const LogDetEstimate& est);
void to_json(json& j, const EntropyChainReport& rep);

}  // namespace blockfade
