#pragma once

#include <string>

#include "json.hpp"

#include "csframe/toolkit.hpp"

namespace csframe {

using Json = nlohmann::json;

// JSON encodings. Complex numbers are [re, im] pairs; AlgebraElement blocks
// are row-major per block; the descriptor is carried by the enclosing
// document. Doubles round-trip exactly (shortest-representation printing),
// so save → load → save is byte-stable.
Json encode(const AlgebraDescriptor& desc);
Json encode(const AlgebraElement& a);
Json encode(const ModuleElement& f);
Json encode(const AdjointableOperator& T);
Json encode(const MeasureSpace& space);
Json encode(const FrameMap& F);
Json encode(const FrameBounds& b);
Json encode(const PerturbationConstants& c);
Json encode(const Scenario& sc);
Json encode(const TheoremReport& report);
Json encode(const CampaignReport& campaign);

AlgebraDescriptor decode_descriptor(const Json& j);
AlgebraElement decode_algebra_element(const Json& j, const AlgebraDescriptor& desc);
ModuleElement decode_module_element(const Json& j, const AlgebraDescriptor& desc);
AdjointableOperator decode_operator(const Json& j, const AlgebraDescriptor& desc);
MeasureSpace decode_measure_space(const Json& j);
FrameMap decode_frame(const Json& j, const AlgebraDescriptor& desc);
PerturbationConstants decode_constants(const Json& j);
Scenario decode_scenario(const Json& j);

// Deterministic dump (sorted keys, fixed indentation, trailing newline).
std::string dump_json(const Json& j);
void save_json(const std::string& path, const Json& j);
Json load_json_file(const std::string& path);

}  // namespace csframe
