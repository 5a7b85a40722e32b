#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "txdiag/cli.hpp"
#include "txdiag/io.hpp"

namespace fs = std::filesystem;
using txdiag::cli::run;

namespace {

const std::string kExample = std::string(TXDIAG_TEST_DATA) + "/example.json";
const std::string kFunctions = std::string(TXDIAG_TEST_DATA) + "/functions.csv";

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("txdiag_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("usage errors exit 2") {
    CHECK(cli({}).code == txdiag::cli::kExitUsage);
    CHECK(cli({"frobnicate"}).code == txdiag::cli::kExitUsage);
    CHECK(cli({"analyze"}).code == txdiag::cli::kExitUsage);
    CHECK(cli({"analyze", "/nonexistent/graph.json"}).code == txdiag::cli::kExitUsage);
    CHECK(cli({"--format", "xml", "analyze", kExample}).code == txdiag::cli::kExitUsage);
    CHECK(cli({"--help"}).code == txdiag::cli::kExitOk);
}

TEST_CASE("analyze") {
    const auto r = cli({"analyze", kExample});
    CHECK(r.code == 0);
    CHECK(r.out.find("D  = 6/7") != std::string::npos);
    CHECK(r.out.find("E  = 2/3") != std::string::npos);
    CHECK(r.out.find("Q  = 4/7") != std::string::npos);
    CHECK(r.out.find("{B3,B9} {B8,B12} + 10 singletons") != std::string::npos);

    const auto three = cli({"analyze", kExample, "--monitors", "S3,S6,S9"});
    CHECK(three.out.find("E  = 2/9") != std::string::npos);
    CHECK(three.out.find("all 14 singletons") != std::string::npos);

    const auto j = cli({"--format", "json", "analyze", kExample});
    CHECK(j.code == 0);
    CHECK(j.out.find("\"d_structural\"") != std::string::npos);
}

TEST_CASE("invalid graph is a domain error") {
    const auto dir = scratch("invalid");
    txdiag::io::write_file(dir / "g.json",
                           R"({"nodes": ["A", "B"], "arcs": [{"id": "X", "from": "A", "to": "B"},
                               {"id": "Y", "from": "B", "to": "A"}], "monitors": []})");
    const auto r = cli({"analyze", (dir / "g.json").string()});
    CHECK(r.code == txdiag::cli::kExitDomain);
    CHECK(r.err.find("InvalidGraph") != std::string::npos);
    txdiag::io::write_file(dir / "bad.json", "{ not json");
    CHECK(cli({"analyze", (dir / "bad.json").string()}).code == txdiag::cli::kExitUsage);
    fs::remove_all(dir);
}

TEST_CASE("matrix, simulate and diagnose flow") {
    const auto dir = scratch("flow");
    const auto csv = (dir / "m.csv").string();
    const auto resp = (dir / "r.resp").string();
    CHECK(cli({"-o", csv, "matrix", kExample}).code == 0);
    CHECK(txdiag::io::read_file(csv).rfind("row,monitor,B1", 0) == 0);

    const auto sim = cli({"-o", resp, "simulate", kExample, "--fault", "B4"});
    CHECK(sim.code == 0);
    CHECK(txdiag::io::read_file(resp) == "T1,S9,0\nT2,S9,1\nT3,S9,0\nT4,S9,0\nT5,S9,0\nT6,S9,0\n");

    const auto d = cli({"diagnose", csv, resp});
    CHECK(d.code == 0);
    CHECK(d.out.find("B4") != std::string::npos);
    const auto dj = cli({"--format", "json", "diagnose", csv, resp});
    CHECK(dj.out.find("\"kind\": \"Candidates\"") != std::string::npos);

    txdiag::io::write_file(resp, "T1,S9,1\nT2,S9,1\nT3,S9,1\nT4,S9,1\nT5,S9,1\nT6,S9,1\n");
    const auto deficient = cli({"diagnose", csv, resp, "--k-max", "1"});
    CHECK(deficient.code == txdiag::cli::kExitDomain);
    CHECK(deficient.out.find("TestDeficient") != std::string::npos);

    txdiag::io::write_file(resp, "T1,S9,1\n");
    CHECK(cli({"diagnose", csv, resp}).code == txdiag::cli::kExitUsage);
    fs::remove_all(dir);
}

TEST_CASE("synthesis commands") {
    const auto st = cli({"synth-tests", kExample});
    CHECK(st.code == 0);
    CHECK(st.out.find("\"tests\"") != std::string::npos);

    const auto sm = cli({"synth-monitors", kExample});
    CHECK(sm.code == 0);
    CHECK(sm.out.find("{S3,S6}") != std::string::npos);

    const auto logic = cli({"synth-logic", kFunctions});
    CHECK(logic.code == 0);
    CHECK(logic.out.find("F7 = (T1,A)=1 & (T3,A)=1 & (T5,A)=1 & (T7,A)=1\n") != std::string::npos);
    CHECK(cli({"synth-logic", kExample}).code == txdiag::cli::kExitDomain);
    CHECK(cli({"synth-logic", kExample, "--mode", "minterm"}).code == 0);

    CHECK(cli({"rules", kExample}).code == 0);
    CHECK(cli({"rules", kExample, "--monitors", "S3"}).code == txdiag::cli::kExitDomain);
}

TEST_CASE("outputs are byte deterministic") {
    const std::vector<std::vector<std::string>> commands{
        {"--format", "json", "analyze", kExample},
        {"campaign", kExample, "-k", "2", "--seed", "7"},
        {"synth-tests", kExample},
        {"--format", "json", "synth-logic", kFunctions},
        {"paths", kExample},
    };
    for (const auto& c : commands) {
        const auto a = cli(c);
        const auto b = cli(c);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        CHECK_FALSE(a.out.empty());
    }
}
