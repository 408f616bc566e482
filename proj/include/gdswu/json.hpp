#pragma once

#include <json.hpp>

#include "gdswu/fault_harness.hpp"
#include "gdswu/gamma_weights.hpp"
#include "gdswu/reference_oracle.hpp"

namespace gdswu {

// Keys are emitted in insertion order so reports are byte-stable.
using Json = nlohmann::ordered_json;

Json to_json(const WeightVector& weights);
Json to_json(const oracle::ComparisonReport& report);
Json to_json(const faults::FaultSpec& spec);
Json to_json(const faults::AttenuationReport& report);
Json to_json(const faults::SweepReport& sweep);

}  // namespace gdswu
