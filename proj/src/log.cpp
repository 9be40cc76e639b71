#include "topicnet/log.hpp"

#include <iostream>
#include <mutex>

namespace topicnet {

namespace {
std::ostream* g_log = &std::clog;
std::mutex g_log_mutex;
}  // namespace

void set_log_stream(std::ostream* out) {
    std::lock_guard lock(g_log_mutex);
    g_log = out;
}

void log_event(std::string_view stage, std::string_view event, nlohmann::json fields) {
    std::lock_guard lock(g_log_mutex);
    if (!g_log) return;
    nlohmann::json line = {{"stage", stage}, {"event", event}};
    for (auto& [k, v] : fields.items()) line[k] = v;
    *g_log << line.dump() << '\n';
}

}  // namespace topicnet
