#pragma once

// JSON projections of the library's result types. Field names are frozen;
// see docs/report_schema.json.

#include "json.hpp"
#include "tcsm/hamiltonian.hpp"
#include "tcsm/model.hpp"
#include "tcsm/spectral.hpp"

namespace tcsm {

using json = nlohmann::ordered_json;

json to_json(const ModelParams& p);
json to_json(const ResidualReport& r);
json to_json(const UnitConversion& u);
json to_json(const SpectrumReport& s);
json to_json(const ParityResult& p);
json to_json(const BoostResult& b);

std::string rational_string(const Rational& q);

}  // namespace tcsm
