#pragma once

#include <string>

#include <json.hpp>

#include "dsurf/cancel.hpp"
#include "dsurf/expmap.hpp"
#include "dsurf/isomorph.hpp"
#include "dsurf/surface.hpp"

namespace dsurf::io {

using json = nlohmann::json;

json to_json(const SurfaceSpec& spec);
SurfaceSpec surface_from_json(const json& j);

/// {"coeffs": {"<i>": "<expr in X,Z,aux>"}, "aux": [...]}
json to_json(const SurfaceElement& e);
SurfaceElement element_from_json(const SurfaceSpec& spec, const json& j);

/// {"surface": ..., "x": ..., "z": ..., "y": ...}; images are expressions in X, Y, Z, U.
json to_json(const ExpMap& m);
ExpMap expmap_from_json(const json& j);

json to_json(const IsoCertificate& c);
IsoCertificate certificate_from_json(const json& j);

/// Both surfaces plus every component; elements are expressions in X, Y, Z, v.
json to_json(const StableIsoCertificate& c);
StableIsoCertificate stable_from_json(const json& j);

json to_json(const VerificationReport& r);
json to_json(const Obstruction& o);
json to_json(const IsoDecision& d);
json to_json(const Fingerprint& f);
json to_json(const FiberReport& f);
json to_json(const SmoothnessReport& s);
json to_json(const HypothesisReport& h);
json to_json(const FamilyReport& f);

/// Reads and parses a JSON file; throws Parse on malformed content.
json read_file(const std::string& path);

}  // namespace dsurf::io
