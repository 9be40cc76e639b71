#include "topicnet/report.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <iterator>
#include <sstream>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "topicnet/error.hpp"

namespace topicnet {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class Sha256 {
public:
    Sha256() : ctx_(EVP_MD_CTX_new()) {
        if (!ctx_ || EVP_DigestInit_ex(ctx_, EVP_sha256(), nullptr) != 1) throw std::runtime_error("sha256 init failed");
    }
    ~Sha256() { EVP_MD_CTX_free(ctx_); }
    Sha256(const Sha256&) = delete;
    Sha256& operator=(const Sha256&) = delete;

    void update(const void* data, std::size_t size) { EVP_DigestUpdate(ctx_, data, size); }

    std::string hex() {
        std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
        unsigned int len = 0;
        EVP_DigestFinal_ex(ctx_, digest.data(), &len);
        std::string out;
        for (unsigned int i = 0; i < len; ++i) out += fmt::format("{:02x}", digest[i]);
        return out;
    }

private:
    EVP_MD_CTX* ctx_;
};

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

std::string sha256_hex(std::string_view data) {
    Sha256 h;
    h.update(data.data(), data.size());
    return h.hex();
}

std::string sha256_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read " + path.string());
    Sha256 h;
    std::array<char, 1 << 16> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        h.update(buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    return h.hex();
}

void write_artifact(const fs::path& dir, const fs::path& relative, std::string_view content) {
    const fs::path target = dir / relative;
    const fs::path tmp = target.string() + ".tmp";
    try {
        fs::create_directories(target.parent_path());
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) throw DataError("cannot write " + tmp.string());
            out.write(content.data(), static_cast<std::streamsize>(content.size()));
            out.flush();
            if (!out) throw DataError("short write to " + tmp.string());
        }
        fs::rename(tmp, target);
    } catch (const fs::filesystem_error& e) {
        std::error_code ec;
        fs::remove(tmp, ec);
        throw DataError(std::string("cannot write artifact: ") + e.what());
    } catch (...) {
        std::error_code ec;
        fs::remove(tmp, ec);
        throw;
    }
}

json Manifest::to_json() const {
    json arts = json::array();
    for (const auto& a : artifacts) arts.push_back({{"path", a.path}, {"sha256", a.sha256}, {"kind", a.kind}});
    return {{"artifacts", arts}, {"inputs", inputs}, {"seed", seed}, {"version", version}};
}

Manifest Manifest::from_json(const json& j) {
    Manifest m;
    for (const auto& a : j.at("artifacts")) {
        m.artifacts.push_back({a.at("path").get<std::string>(), a.at("sha256").get<std::string>(),
                               a.at("kind").get<std::string>()});
    }
    m.inputs = j.value("inputs", json::object());
    m.seed = j.value("seed", std::uint64_t{0});
    m.version = j.value("version", std::string(kToolVersion));
    return m;
}

std::string artifact_kind(const fs::path& relative) {
    const std::string name = relative.filename().string();
    static const std::array<std::pair<std::string_view, std::string_view>, 16> suffixes{{
        {".edges.csv", "network-edges"},
        {".nodes.csv", "network-nodes"},
        {".graphml", "network-graphml"},
        {".bags.jsonl", "topic-bags"},
        {".measures.json", "measures"},
        {".node_ranking.csv", "node-ranking"},
        {".rollup.csv", "rollup"},
        {".rollup_ranking.csv", "rollup-ranking"},
        {".regression.json", "regression"},
        {".points.csv", "regression-points"},
        {".bins.csv", "regression-bins"},
        {".hist.csv", "histogram"},
        {".overlay.csv", "overlay"},
        {".fit.json", "fit"},
        {"_report.json", "stage-report"},
        {".json", "json"},
    }};
    for (const auto& [suffix, kind] : suffixes) {
        if (ends_with(name, suffix)) return std::string(kind);
    }
    return relative.extension().string().empty() ? "file" : relative.extension().string().substr(1);
}

Manifest update_manifest(const fs::path& dir, const json& inputs, std::uint64_t seed) {
    Manifest m;
    if (fs::exists(dir / kManifestName)) m.inputs = read_manifest(dir).inputs;
    for (const auto& [key, value] : inputs.items()) m.inputs[key] = value;
    m.seed = seed;
    std::vector<std::string> paths;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::string rel = fs::relative(entry.path(), dir).generic_string();
        if (rel == kManifestName || ends_with(rel, ".tmp")) continue;
        paths.push_back(std::move(rel));
    }
    std::sort(paths.begin(), paths.end());
    for (const auto& rel : paths) m.artifacts.push_back({rel, sha256_file(dir / rel), artifact_kind(rel)});
    write_artifact(dir, std::string(kManifestName), m.to_json().dump(2) + "\n");
    return m;
}

Manifest read_manifest(const fs::path& dir) {
    std::ifstream in(dir / kManifestName);
    if (!in) throw DataError("no manifest in " + dir.string());
    try {
        return Manifest::from_json(json::parse(in));
    } catch (const json::exception& e) {
        throw DataError(std::string("malformed manifest: ") + e.what());
    }
}

VerifyResult verify_bundle(const fs::path& dir) {
    const Manifest m = read_manifest(dir);
    VerifyResult r;
    std::vector<std::string> listed;
    for (const auto& a : m.artifacts) {
        listed.push_back(a.path);
        const fs::path p = dir / a.path;
        if (!fs::exists(p)) {
            r.missing.push_back(a.path);
        } else if (sha256_file(p) != a.sha256) {
            r.mismatched.push_back(a.path);
        }
    }
    std::sort(listed.begin(), listed.end());
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::string rel = fs::relative(entry.path(), dir).generic_string();
        if (rel == kManifestName) continue;
        if (!std::binary_search(listed.begin(), listed.end(), rel)) r.unlisted.push_back(rel);
    }
    std::sort(r.unlisted.begin(), r.unlisted.end());
    return r;
}

std::string provenance_path(const fs::path& path, const fs::path& bundle) {
    std::error_code ec;
    const fs::path abs_path = fs::weakly_canonical(path, ec);
    const fs::path abs_bundle = fs::weakly_canonical(bundle, ec);
    if (!ec) {
        const fs::path rel = abs_path.lexically_relative(abs_bundle);
        if (!rel.empty() && *rel.begin() != "..") return rel.generic_string();
    }
    return path.generic_string();
}

}  // namespace topicnet
