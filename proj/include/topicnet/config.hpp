#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

namespace topicnet {

/// Flat `key = value` document (a TOML subset without tables): `#` starts a
/// comment, string values may be double-quoted, keys are unique.
class Config {
public:
    static Config parse(std::istream& in, const std::string& source_name = "<stream>");
    static Config load(const std::filesystem::path& path);

    std::optional<std::string> get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& fallback) const;
    void set(const std::string& key, std::string value) { values_[key] = std::move(value); }
    bool contains(const std::string& key) const { return values_.count(key) != 0; }
    const std::map<std::string, std::string>& values() const noexcept { return values_; }

    /// Directory relative paths are resolved against (the config file's).
    const std::filesystem::path& base_dir() const noexcept { return base_dir_; }

private:
    std::map<std::string, std::string> values_;
    std::filesystem::path base_dir_;
};

}  // namespace topicnet
