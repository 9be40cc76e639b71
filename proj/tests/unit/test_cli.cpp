#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "topicnet/cli.hpp"
#include "topicnet/log.hpp"
#include "topicnet/report.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kFixture = fs::path(TOPICNET_SOURCE_DIR) / "data" / "fixture";

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args) {
    topicnet::set_log_stream(nullptr);
    args.insert(args.begin(), "topicnet");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = topicnet::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("topicnet_test_cli_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

std::string fixture(const char* name) { return (kFixture / name).string(); }

}  // namespace

TEST_CASE("usage errors exit 1") {
    CHECK(cli({}).code == 1);
    const auto bags = fresh_dir("usage") / "b.jsonl";
    fs::create_directories(bags.parent_path());
    std::ofstream(bags) << "";
    const auto r = cli({"build", "--bags", bags.string(), "--out", fresh_dir("usage_out").string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("--taxonomy") != std::string::npos);
    CHECK(cli({"metrics", "--network", "x", "--out", "y", "--betweenness-norm", "bogus"}).code == 1);
}

TEST_CASE("the executable reports the same exit codes") {
    const std::string exe = TOPICNET_CLI;
    CHECK(std::system((exe + " --version > /dev/null").c_str()) == 0);
    const int status = std::system((exe + " build --out /tmp/x 2> /dev/null").c_str());
    CHECK(WEXITSTATUS(status) == 1);
}

TEST_CASE("missing input data exits 2") {
    const auto r = cli({"metrics", "--network", (fresh_dir("nonet") / "none").string(), "--out",
                        fresh_dir("nonet_out").string()});
    CHECK(r.code == 2);
}

TEST_CASE("subcommands compose to the pipeline bundle") {
    const fs::path a = fresh_dir("pipeline");
    const fs::path b = fresh_dir("stages");
    REQUIRE(cli({"pipeline", "--config", fixture("example.toml"), "--out", a.string()}).code == 0);

    const std::vector<std::string> common{"--out", b.string(), "--seed", "42", "--workers", "1"};
    auto with = [&](std::vector<std::string> args) {
        args.insert(args.end(), common.begin(), common.end());
        return cli(args).code;
    };
    REQUIRE(with({"ingest", "--corpus", fixture("corpus.jsonl"), "--journals", fixture("journals.csv"), "--taxonomy",
                  fixture("taxonomy.tsv"), "--year", "1999", "--ni-month", "6"}) == 0);
    REQUIRE(with({"build", "--bags", (b / "bags/I.bags.jsonl").string(), (b / "bags/NI.bags.jsonl").string(),
                  (b / "bags/NI-June.bags.jsonl").string(), "--taxonomy", fixture("taxonomy.tsv"), "--year", "1999",
                  "--viz-threshold", "0.08"}) == 0);
    for (const char* label : {"I", "NI", "NI-June"}) {
        const std::string net = (b / "networks" / label).string();
        REQUIRE(with({"metrics", "--network", net, "--taxonomy", fixture("taxonomy.tsv")}) == 0);
        REQUIRE(with({"rollup", "--network", net, "--taxonomy", fixture("taxonomy.tsv")}) == 0);
        REQUIRE(with({"fit", "--network", net}) == 0);
    }
    REQUIRE(with({"diff", "--network", (b / "networks/I").string(), "--network-b", (b / "networks/NI-June").string(),
                  "--taxonomy", fixture("taxonomy.tsv")}) == 0);

    const auto ma = topicnet::read_manifest(a);
    const auto mb = topicnet::read_manifest(b);
    CHECK(ma.artifacts == mb.artifacts);
    CHECK(slurp(a / "manifest.json") == slurp(b / "manifest.json"));
    CHECK(cli({"verify", "--out", a.string()}).out == "OK\n");
    fs::remove_all(b);
}

TEST_CASE("verify flags a tampered artifact") {
    const fs::path a = fresh_dir("pipeline");
    if (!fs::exists(a / "manifest.json")) {
        REQUIRE(cli({"pipeline", "--config", fixture("example.toml"), "--out", a.string()}).code == 0);
    }
    std::ofstream(a / "metrics" / "I.measures.json", std::ios::app) << " ";
    const auto r = cli({"verify", "--out", a.string()});
    CHECK(r.code == 2);
    CHECK(r.out.find("MISMATCH metrics/I.measures.json") != std::string::npos);
    fs::remove_all(a);
}

TEST_CASE("diff on mismatched node sets exits 2") {
    const fs::path dir = fresh_dir("mismatch");
    fs::create_directories(dir);
    std::ofstream(dir / "a.nodes.csv") << "code,label,c_ii\nC01.100,a,1\nC04.588,b,1\n";
    std::ofstream(dir / "a.edges.csv") << "source,target,weight\nC01.100,C04.588,0.5\n";
    std::ofstream(dir / "b.nodes.csv") << "code,label,c_ii\nC01.100,a,1\nC05.100,b,1\n";
    std::ofstream(dir / "b.edges.csv") << "source,target,weight\nC01.100,C05.100,0.5\n";
    const auto r = cli({"diff", "--network", (dir / "a").string(), "--network-b", (dir / "b").string(), "--out",
                        (dir / "out").string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("C04.588") != std::string::npos);
    fs::remove_all(dir);
}
