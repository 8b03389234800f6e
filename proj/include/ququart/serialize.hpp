// Copyright (c) 2026 The ququart authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include <json.hpp>

#include "ququart/protocols.hpp"
#include "ququart/upb.hpp"

namespace ququart {

nlohmann::json to_json(const StateVector& v);
nlohmann::json to_json(const TranscriptEvent& e);
nlohmann::json to_json(const ProtocolTranscript& t);
nlohmann::json to_json(const SwapTableEntry& e);
nlohmann::json to_json(const SwapTableDiff& d);
nlohmann::json to_json(const Upb& upb);
nlohmann::json to_json(const UpbReport& r);

/// One event object per line: {"step":..,"kind":..,"party":..,"payload":..}.
std::string to_jsonl(const std::vector<TranscriptEvent>& events);

} // namespace ququart
