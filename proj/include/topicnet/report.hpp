#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace topicnet {

inline constexpr std::string_view kToolVersion = "topicnet 1.0.0";

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);

/// Writes `content` to `dir / relative` through a temporary file and a rename.
/// On failure the temporary is removed and DataError is thrown.
void write_artifact(const std::filesystem::path& dir, const std::filesystem::path& relative,
                    std::string_view content);

struct ArtifactEntry {
    std::string path;  // relative to the bundle directory, '/' separated
    std::string sha256;
    std::string kind;

    friend bool operator==(const ArtifactEntry&, const ArtifactEntry&) = default;
};

struct Manifest {
    std::vector<ArtifactEntry> artifacts;
    nlohmann::json inputs = nlohmann::json::object();
    std::uint64_t seed = 0;
    std::string version{kToolVersion};

    nlohmann::json to_json() const;
    static Manifest from_json(const nlohmann::json& j);
};

inline constexpr std::string_view kManifestName = "manifest.json";

/// Artifact kind derived from a file name (`network-edges`, `measures`, ...).
std::string artifact_kind(const std::filesystem::path& relative);

/// Rescans `dir`, hashing every file except the manifest, merges `inputs` into
/// any existing manifest inputs and rewrites the manifest. The result depends
/// only on the directory contents and the merged inputs.
Manifest update_manifest(const std::filesystem::path& dir, const nlohmann::json& inputs, std::uint64_t seed);

Manifest read_manifest(const std::filesystem::path& dir);

struct VerifyResult {
    std::vector<std::string> mismatched;
    std::vector<std::string> missing;
    std::vector<std::string> unlisted;

    bool ok() const noexcept { return mismatched.empty() && missing.empty() && unlisted.empty(); }
};

/// Re-hashes every artifact listed in the manifest.
VerifyResult verify_bundle(const std::filesystem::path& dir);

/// Path as recorded in a manifest: relative to `bundle` when it lives inside
/// it, otherwise as given.
std::string provenance_path(const std::filesystem::path& path, const std::filesystem::path& bundle);

}  // namespace topicnet
