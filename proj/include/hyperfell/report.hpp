#pragma once

#include <json.hpp>

#include "hyperfell/hyperspace.hpp"
#include "hyperfell/order.hpp"
#include "hyperfell/props.hpp"
#include "hyperfell/repro.hpp"

namespace hyperfell {

using json = nlohmann::ordered_json;

json to_json(const Point& p);
json to_json(const Window& w);
json to_json(const DivergenceReport& r);
json to_json(const CompactnessReport& r);
json to_json(const TestTrace& t);
json to_json(const PathSummary& p);
json to_json(const ProbeVerdict& v);
json to_json(const HausdorffProbeVerdict& v);
json to_json(const PredicateReport& r);
json to_json(const Classification& c);
json to_json(const InverseResult& r);
json to_json(const MeetResult& r);
json to_json(const SubClaim& c);
json to_json(const ReproReport& r);

// Report envelope shared by every CLI emission; the schema ships at
// docs/report-schema.json.
json make_envelope(const std::string& kind, const std::string& scene, json result,
                   const std::vector<std::string>& notes, bool with_timestamp);

std::string render_text(const json& envelope);

}  // namespace hyperfell
