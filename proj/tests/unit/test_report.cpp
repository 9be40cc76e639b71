#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "topicnet/config.hpp"
#include "topicnet/error.hpp"
#include "topicnet/report.hpp"
#include "topicnet/text.hpp"

using namespace topicnet;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("topicnet_test_report_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("sha256 known answers") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("artifact kinds") {
    CHECK(artifact_kind("networks/I.edges.csv") == "network-edges");
    CHECK(artifact_kind("fits/I.link_strength.fit.json") == "fit");
    CHECK(artifact_kind("build_report.json") == "stage-report");
    CHECK(artifact_kind("notes.txt") == "txt");
}

TEST_CASE("manifest lists every artifact and detects tampering") {
    const fs::path dir = fresh_dir("tamper");
    write_artifact(dir, "a/one.edges.csv", "source,target,weight\n");
    write_artifact(dir, "two.json", "{}\n");
    const Manifest m = update_manifest(dir, {{"corpus", "c.jsonl"}}, 42);
    REQUIRE(m.artifacts.size() == 2);
    CHECK(m.artifacts[0].path == "a/one.edges.csv");
    CHECK(m.artifacts[0].sha256 == sha256_hex("source,target,weight\n"));
    CHECK(m.seed == 42);
    CHECK(verify_bundle(dir).ok());

    std::ofstream(dir / "two.json", std::ios::app) << "x";
    const auto r = verify_bundle(dir);
    CHECK(r.mismatched == std::vector<std::string>{"two.json"});

    fs::remove(dir / "a/one.edges.csv");
    std::ofstream(dir / "extra.csv") << "1\n";
    const auto r2 = verify_bundle(dir);
    CHECK(r2.missing == std::vector<std::string>{"a/one.edges.csv"});
    CHECK(r2.unlisted == std::vector<std::string>{"extra.csv"});
    fs::remove_all(dir);
}

TEST_CASE("manifest inputs merge across stages and round-trip") {
    const fs::path dir = fresh_dir("merge");
    write_artifact(dir, "x.csv", "1\n");
    update_manifest(dir, {{"corpus", "c.jsonl"}}, 1);
    const Manifest m = update_manifest(dir, {{"taxonomy", "t.tsv"}}, 7);
    CHECK(m.inputs["corpus"] == "c.jsonl");
    CHECK(m.inputs["taxonomy"] == "t.tsv");
    const Manifest back = read_manifest(dir);
    CHECK(back.artifacts == m.artifacts);
    CHECK(back.inputs == m.inputs);
    CHECK(back.seed == 7);
    CHECK(back.version == kToolVersion);
    fs::remove_all(dir);
}

TEST_CASE("provenance paths are bundle-relative when inside the bundle") {
    const fs::path dir = fresh_dir("prov");
    CHECK(provenance_path(dir / "bags" / "I.bags.jsonl", dir) == "bags/I.bags.jsonl");
    CHECK(provenance_path("/elsewhere/file.tsv", dir) == "/elsewhere/file.tsv");
    fs::remove_all(dir);
}

TEST_CASE("verify without a manifest is a data error") {
    const fs::path dir = fresh_dir("empty");
    CHECK_THROWS_AS(verify_bundle(dir), DataError);
    fs::remove_all(dir);
}

TEST_CASE("number formatting") {
    CHECK(format_exact(0.1) == "0.10000000000000001");
    CHECK(std::stod(format_exact(2.0 / 3.0)) == 2.0 / 3.0);
    CHECK(format_2dp(7.6249) == "7.62");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(split_csv("x,\"a,\"\"b\"\"\",z") == std::vector<std::string>{"x", "a,\"b\"", "z"});
}

TEST_CASE("flat config") {
    std::istringstream in(
        "# comment\n"
        "year = 1999\n"
        "corpus = \"data/corpus.jsonl\"\n"
        "seed=7  # trailing\n");
    const Config c = Config::parse(in);
    CHECK(c.get("year") == "1999");
    CHECK(c.get("corpus") == "data/corpus.jsonl");
    CHECK(c.get("seed") == "7");
    CHECK(c.get_or("missing", "d") == "d");
    std::istringstream dup("a = 1\na = 2\n");
    CHECK_THROWS_AS(Config::parse(dup), ParseError);
    std::istringstream table("[section]\n");
    CHECK_THROWS_AS(Config::parse(table), ParseError);
}
