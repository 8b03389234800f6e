// Copyright (c) 2026 The ququart authors.
// SPDX-License-Identifier: Apache-2.0

#include "ququart/serialize.hpp"

#include <sstream>

namespace ququart {

using nlohmann::json;

json to_json(const StateVector& v) {
    json amps = json::array();
    for (const auto& a : v.amps) amps.push_back(json::array({a.real(), a.imag()}));
    return json{{"dims", v.dims}, {"amps", amps}};
}

json to_json(const TranscriptEvent& e) {
    return json{{"step", e.step}, {"kind", e.kind}, {"party", e.party}, {"payload", e.payload}};
}

json to_json(const ProtocolTranscript& t) {
    json steps = json::array();
    for (const auto& e : t.steps) steps.push_back(to_json(e));
    return json{{"protocol", protocol_name(t.protocol)},
                {"seed", t.seed},
                {"steps", steps},
                {"outcome", t.outcome.str()},
                {"fidelity", t.fidelity}};
}

json to_json(const SwapTableEntry& e) {
    return json{{"outcome", e.outcome_23.str()},
                {"result", e.result_14.str()},
                {"phase", e.phase},
                {"coefficient_magnitude", e.coefficient_magnitude}};
}

json to_json(const SwapTableDiff& d) {
    json mismatches = json::array();
    for (const auto& m : d.mismatches)
        mismatches.push_back(json{{"outcome", m.outcome.str()},
                                  {"derived_result", m.derived_result.str()},
                                  {"derived_phase", m.derived_phase},
                                  {"reference_result", m.reference_result.str()},
                                  {"reference_phase", m.reference_phase}});
    json dup = json::array(), missing = json::array();
    for (auto l : d.duplicated_reference_results) dup.push_back(l.str());
    for (auto l : d.missing_reference_results) missing.push_back(l.str());
    return json{{"mismatches", mismatches},
                {"duplicated_reference_results", dup},
                {"missing_reference_results", missing},
                {"reference_is_bijection", d.reference_is_bijection}};
}

json to_json(const Upb& upb) {
    json members = json::array();
    for (const auto& m : upb.members) {
        json factors = json::array();
        for (const auto& f : m.factors) {
            json amps = json::array();
            for (const auto& a : f.amps) amps.push_back(json::array({a.real(), a.imag()}));
            factors.push_back(amps);
        }
        members.push_back(factors);
    }
    return json{{"parties", upb.parties}, {"local_dim", upb.local_dim}, {"members", members}};
}

json to_json(const UpbReport& r) {
    json out{{"orthogonal", r.orthogonal},
             {"max_pairwise_overlap", r.max_pairwise_overlap},
             {"unextendible", r.unextendible},
             {"assignments_checked", r.assignments_checked}};
    if (r.extension_witness) {
        json factors = json::array();
        for (const auto& f : *r.extension_witness) {
            json amps = json::array();
            for (const auto& a : f.amps) amps.push_back(json::array({a.real(), a.imag()}));
            factors.push_back(amps);
        }
        out["extension_witness"] = factors;
    }
    return out;
}

std::string to_jsonl(const std::vector<TranscriptEvent>& events) {
    std::ostringstream os;
    for (const auto& e : events) os << to_json(e).dump() << "\n";
    return os.str();
}

} // namespace ququart
