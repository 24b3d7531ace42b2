#include "hyperfell/report.hpp"

#include <chrono>
#include <ctime>

#include "hyperfell/util.hpp"

namespace hyperfell {

namespace {

json points_json(const std::vector<Point>& pts) {
    json arr = json::array();
    for (const auto& p : pts) arr.push_back(p.str());
    return arr;
}

const char* divergence_verdict_name(DivergenceVerdict v) {
    switch (v) {
        case DivergenceVerdict::Bounded: return "BOUNDED";
        case DivergenceVerdict::Divergent: return "DIVERGENT";
        case DivergenceVerdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

const char* compactness_status_name(CompactnessStatus s) {
    switch (s) {
        case CompactnessStatus::CompactAtResolution: return "COMPACT_AT_RESOLUTION";
        case CompactnessStatus::Unbounded: return "UNBOUNDED";
        case CompactnessStatus::ClosureEscape: return "CLOSURE_ESCAPE";
    }
    return "?";
}

const char* inverse_status_name(InverseStatus s) {
    switch (s) {
        case InverseStatus::ContinuousWitness: return "CONTINUOUS_WITNESS";
        case InverseStatus::NotContinuous: return "NOT_CONTINUOUS";
        case InverseStatus::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

}  // namespace

json to_json(const Point& p) {
    json arr = json::array();
    for (int i = 0; i < p.dim(); ++i) arr.push_back(p[i]);
    return arr;
}

json to_json(const Window& w) {
    json j;
    json lo = json::array(), hi = json::array();
    for (int i = 0; i < w.box.dim(); ++i) {
        lo.push_back(w.box.lo[i]);
        hi.push_back(w.box.hi[i]);
    }
    j["lo"] = lo;
    j["hi"] = hi;
    j["resolution"] = w.resolution;
    j["max_pitch"] = w.max_pitch();
    return j;
}

json to_json(const DivergenceReport& r) {
    json j;
    j["verdict"] = divergence_verdict_name(r.verdict);
    j["values"] = r.values;
    j["pitches"] = r.pitches;
    j["radii"] = r.radii;
    j["growth_slope"] = r.growth_slope;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

json to_json(const CompactnessReport& r) {
    json j;
    j["status"] = compactness_status_name(r.status);
    if (r.witness) j["witness"] = to_json(*r.witness);
    if (!r.note.empty()) j["note"] = r.note;
    j["cloud_sizes"] = r.cloud_sizes;
    return j;
}

json to_json(const TestTrace& t) {
    json j;
    j["tag"] = t.tag;
    j["kind"] = t.kind;
    j["retained"] = t.retained;
    if (!t.retained) j["drop_reason"] = t.drop_reason;
    json per = json::array();
    for (int v : t.per_index) per.push_back(v != 0);
    j["per_index"] = per;
    return j;
}

json to_json(const PathSummary& p) {
    json j;
    j["desc"] = p.desc;
    j["x0"] = to_json(p.x0);
    j["alpha0"] = p.alpha0;
    j["m_max"] = p.m_max;
    return j;
}

json to_json(const ProbeVerdict& v) {
    json j;
    j["probe"] = v.probe;
    j["status"] = probe_status_name(v.status);
    j["path"] = to_json(v.path);
    json tests = json::array();
    for (const auto& t : v.traces) tests.push_back(to_json(t));
    j["tests"] = tests;
    if (v.witness) {
        json w;
        w["test_tag"] = v.witness->test_tag;
        w["kind"] = v.witness->kind;
        w["index"] = v.witness->index;
        if (v.witness->sample) w["sample"] = to_json(*v.witness->sample);
        w["revalidated"] = v.witness->revalidated;
        j["witness"] = w;
    }
    if (!v.notes.empty()) j["notes"] = v.notes;
    return j;
}

json to_json(const HausdorffProbeVerdict& v) {
    json j;
    j["probe"] = "hausdorff";
    j["status"] = probe_status_name(v.status);
    j["path"] = to_json(v.path);
    json per = json::array();
    for (const auto& r : v.per_index) per.push_back(to_json(r));
    j["per_index"] = per;
    if (!v.notes.empty()) j["notes"] = v.notes;
    return j;
}

json to_json(const PredicateReport& r) {
    json j;
    j["predicate"] = r.predicate;
    j["scene"] = r.scene;
    j["status"] = predicate_status_name(r.status);
    j["cases_tested"] = r.cases_tested;
    if (!r.witness.empty()) {
        j["witness"] = points_json(r.witness);
        j["witness_revalidated"] = r.witness_revalidated;
    }
    if (!r.note.empty()) j["note"] = r.note;
    j["resolution"] = r.resolution;
    j["pitch"] = r.pitch;
    return j;
}

json to_json(const Classification& c) {
    json j;
    j["status"] = classify_status_name(c.status);
    j["singular_holds"] = c.singular_holds;
    if (c.singular_holds) j["singular_o1_radius"] = c.singular_o1_radius;
    if (c.dominating_pair) {
        j["dominating_pair"] =
            json::array({to_json(c.dominating_pair->first), to_json(c.dominating_pair->second)});
    }
    j["upper_compact_bounded_holds"] = c.ucb_holds;
    if (c.box_a) j["box_a"] = to_json(*c.box_a);
    if (c.box_b) j["box_b"] = to_json(*c.box_b);
    j["e1_nonempty"] = c.e1_nonempty;
    if (c.e1_certificate) j["e1_certificate"] = to_json(*c.e1_certificate);
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

json to_json(const InverseResult& r) {
    json j;
    j["status"] = inverse_status_name(r.status);
    json cands = json::array();
    for (const auto& c : r.candidates) {
        json jc;
        jc["tag"] = c.tag;
        jc["valid"] = c.valid;
        if (!c.valid) jc["invalid_reason"] = c.invalid_reason;
        if (c.escape) jc["escape"] = to_json(*c.escape);
        cands.push_back(jc);
    }
    j["candidates"] = cands;
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

json to_json(const MeetResult& r) {
    json j;
    switch (r.status) {
        case MeetStatus::Found: j["status"] = "FOUND"; break;
        case MeetStatus::NoMeet: j["status"] = "NO_MEET"; break;
        case MeetStatus::WindowInconclusive: j["status"] = "INCONCLUSIVE"; break;
    }
    if (r.status == MeetStatus::Found) {
        j["point"] = to_json(r.point);
        j["not_semilattice_at_resolution"] = r.not_semilattice_at_resolution;
        if (r.frontier_spread > 0) j["frontier_spread"] = r.frontier_spread;
    }
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

json to_json(const SubClaim& c) {
    json j;
    j["id"] = c.id;
    j["description"] = c.description;
    j["expected"] = c.expected;
    j["observed"] = c.observed;
    j["matched"] = c.matched;
    if (!c.details.is_null()) j["details"] = c.details;
    if (!c.notes.empty()) j["notes"] = c.notes;
    return j;
}

json to_json(const ReproReport& r) {
    json j;
    j["example"] = r.example;
    j["all_matched"] = r.all_matched();
    json claims = json::array();
    for (const auto& c : r.claims) claims.push_back(to_json(c));
    j["claims"] = claims;
    if (!r.notes.empty()) j["notes"] = r.notes;
    if (!r.plot_files.empty()) j["plot_files"] = r.plot_files;
    return j;
}

json make_envelope(const std::string& kind, const std::string& scene, json result,
                   const std::vector<std::string>& notes, bool with_timestamp) {
    json j;
    j["schema"] = "hyperfell-report/1";
    j["kind"] = kind;
    j["scene"] = scene;
    j["result"] = std::move(result);
    if (!notes.empty()) j["notes"] = notes;
    if (with_timestamp) {
        auto now = std::chrono::system_clock::now();
        std::time_t t = std::chrono::system_clock::to_time_t(now);
        char buf[32];
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
        j["timestamp"] = buf;
    }
    return j;
}

namespace {

void render_value(const json& v, const std::string& indent, std::string& out) {
    if (v.is_object()) {
        out += "\n";
        for (auto it = v.begin(); it != v.end(); ++it) {
            out += indent + "  " + it.key() + ": ";
            render_value(it.value(), indent + "  ", out);
        }
    } else if (v.is_array()) {
        if (v.empty()) {
            out += "[]\n";
            return;
        }
        bool scalars = true;
        for (const auto& e : v)
            if (e.is_object() || e.is_array()) scalars = false;
        if (scalars) {
            out += v.dump();
            out += "\n";
        } else {
            out += "\n";
            for (const auto& e : v) {
                out += indent + "  -";
                render_value(e, indent + "  ", out);
            }
        }
    } else {
        out += v.dump();
        out += "\n";
    }
}

}  // namespace

std::string render_text(const json& envelope) {
    std::string out;
    out += "report: " + envelope.value("kind", std::string("?"));
    if (envelope.contains("scene")) out += " (scene " + envelope["scene"].get<std::string>() + ")";
    out += "\n";
    if (envelope.contains("result")) {
        out += "result:";
        render_value(envelope["result"], "", out);
    }
    if (envelope.contains("notes")) {
        out += "notes:";
        render_value(envelope["notes"], "", out);
    }
    return out;
}

}  // namespace hyperfell
