#include "topicnet/config.hpp"

#include <fstream>
#include <istream>

#include "topicnet/error.hpp"
#include "topicnet/text.hpp"

namespace topicnet {

Config Config::parse(std::istream& in, const std::string& source_name) {
    Config cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view body = line;
        bool in_quotes = false;
        for (std::size_t i = 0; i < body.size(); ++i) {
            if (body[i] == '"') in_quotes = !in_quotes;
            if (body[i] == '#' && !in_quotes) {
                body = body.substr(0, i);
                break;
            }
        }
        body = trim(body);
        if (body.empty()) continue;
        if (body.front() == '[') throw ParseError(source_name, line_no, "tables are not supported in a flat config");
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) throw ParseError(source_name, line_no, "expected key = value");
        std::string key(trim(body.substr(0, eq)));
        std::string_view value = trim(body.substr(eq + 1));
        if (key.empty()) throw ParseError(source_name, line_no, "empty key");
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        if (!cfg.values_.emplace(key, std::string(value)).second) {
            throw ParseError(source_name, line_no, "duplicate key '" + key + "'");
        }
    }
    return cfg;
}

Config Config::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open config " + path.string());
    Config cfg = parse(in, path.string());
    cfg.base_dir_ = path.parent_path();
    return cfg;
}

std::optional<std::string> Config::get(const std::string& key) const {
    if (auto it = values_.find(key); it != values_.end()) return it->second;
    return std::nullopt;
}

std::string Config::get_or(const std::string& key, const std::string& fallback) const {
    return get(key).value_or(fallback);
}

}  // namespace topicnet
