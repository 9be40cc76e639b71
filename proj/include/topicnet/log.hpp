#pragma once

#include <iosfwd>
#include <string_view>

#include <nlohmann/json.hpp>

namespace topicnet {

/// Structured log: one JSON object per line, `{"stage": ..., "event": ..., ...}`.
/// Defaults to std::clog; nullptr silences it.
void set_log_stream(std::ostream* out);
void log_event(std::string_view stage, std::string_view event, nlohmann::json fields = nlohmann::json::object());

}  // namespace topicnet
