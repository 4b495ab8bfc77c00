#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "pointlab/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "pointlab");
    std::ostringstream out, err;
    const int code = pointlab::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string shipped(const std::string& name) { return std::string(POINTLAB_CONFIG_DIR) + "/" + name + ".json"; }

// Scratch directory for generated configs, removed at the end of each case.
struct Scratch {
    fs::path dir;
    Scratch() {
        dir = fs::temp_directory_path() / ("pointlab_cli_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string write(const std::string& name, const std::string& text) const {
        const fs::path p = dir / name;
        std::ofstream(p) << text;
        return p.string();
    }
    std::string write(const std::string& name, const json& j) const { return write(name, j.dump()); }
};

json rows_of(const Result& r) {
    REQUIRE(r.code == 0);
    return json::parse(r.out).at("rows");
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("shipped configs run in both formats") {
    for (const char* cmd : {"resolvent", "smatrix", "scatter", "memory", "verify"}) {
        for (const char* fmt : {"json", "csv"}) {
            const Result r = run({cmd, "--config", shipped(cmd), "--format", fmt, "--seed", "3"});
            INFO(cmd << " " << fmt << ": " << r.err);
            CHECK(r.code == 0);
            CHECK_FALSE(r.out.empty());
        }
    }
}

TEST_CASE("identical config and seed give byte-identical output") {
    for (const char* cmd : {"resolvent", "smatrix", "scatter", "memory", "verify"}) {
        for (const char* fmt : {"json", "csv"}) {
            const Result a = run({cmd, "--config", shipped(cmd), "--format", fmt, "--seed", "17"});
            const Result b = run({cmd, "--config", shipped(cmd), "--format", fmt, "--seed", "17"});
            CHECK(a.out == b.out);
        }
    }
    // The noisy readout depends on the seed.
    const Result a = run({"memory", "--config", shipped("memory"), "--seed", "1"});
    const Result b = run({"memory", "--config", shipped("memory"), "--seed", "2"});
    CHECK(a.out != b.out);
}

TEST_CASE("resolvent rows") {
    Scratch tmp;
    const Result r = run({"resolvent", "--config",
                          tmp.write("r.json", json{{"schema", 1}, {"couplings", {1, 0, 0}}, {"grid", {{"values", {1.0}}}}})});
    const json rows = rows_of(r);
    REQUIRE(rows.size() == 1);
    for (const char* f : {"f1", "f2", "f3", "f4"}) CHECK(std::fabs(rows[0][f].get<double>() - 1.0 / 3.0) < 1e-15);
    CHECK(rows[0]["pole"] == 0);

    const Result p = run({"resolvent", "--config",
                          tmp.write("p.json", json{{"schema", 1}, {"couplings", {2, 0, 2}}, {"grid", {1.0, 2.0}}})});
    const json prow = rows_of(p);
    CHECK(prow[0]["pole"] == 1);
    CHECK(prow[0]["f1"].is_null());
    CHECK(prow[1]["pole"] == 0);

    const Result csv = run({"resolvent", "--config", tmp.write("c.json", json{{"schema", 1}, {"couplings", {2, 0, 2}},
                                                                              {"grid", {1.0}}}),
                            "--format", "csv"});
    CHECK(csv.out.find("nan") != std::string::npos);
}

TEST_CASE("smatrix rows") {
    Scratch tmp;
    const json rows = rows_of(run({"smatrix", "--config",
                                   tmp.write("s.json", json{{"schema", 1}, {"couplings", {2, 0, 0}}, {"grid", {1.0}}})}));
    CHECK(rows[0]["s_pp_re"].get<double>() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(rows[0]["s_pp_im"].get<double>() == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(rows[0]["s_pm_re"].get<double>() == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(rows[0]["unitarity_residual"].get<double>() <= 1e-12);

    const json free = rows_of(run({"smatrix", "--config",
                                   tmp.write("f.json", json{{"schema", 1}, {"couplings", {0, 0, 0}},
                                                            {"grid", {{"start", 0.1}, {"stop", 5.0}, {"count", 7}}}})}));
    for (const auto& row : free) {
        CHECK(row["s_pp_re"] == 1.0);
        CHECK(row["s_pm_re"] == 0.0);
        CHECK(row["s_mm_re"] == 1.0);
    }

    const json sweep = rows_of(run({"smatrix", "--config",
                                    tmp.write("w.json", json{{"schema", 1}, {"couplings", {1.5, 0, 0}},
                                                             {"grid", {{"start", 1e-3}, {"stop", 100.0}, {"count", 100},
                                                                       {"spacing", "log"}}}})}));
    REQUIRE(sweep.size() == 100);
    for (std::size_t i = 1; i < sweep.size(); ++i) {
        CHECK(sweep[i]["even_phase_arg"].get<double>() > sweep[i - 1]["even_phase_arg"].get<double>());
    }
    CHECK(sweep.front()["even_phase_arg"].get<double>() < -std::numbers::pi + 0.01);
    CHECK(sweep.back()["even_phase_arg"].get<double>() > -0.02);
}

TEST_CASE("scatter rows conserve flux") {
    const json rows = rows_of(run({"scatter", "--config", shipped("scatter")}));
    for (const auto& row : rows) {
        CHECK(row["singular"] == 0);
        CHECK(row["flux_residual"].get<double>() <= 1e-10);
    }
}

TEST_CASE("memory script log") {
    const json rows = rows_of(run({"memory", "--config", shipped("memory"), "--seed", "5"}));
    int finals = 0;
    for (const auto& row : rows) {
        if (row["action"] == "final") {
            ++finals;
            CHECK(row["error"].get<double>() <= 1e-9);
        }
        if (row["action"] == "reconstruct") CHECK(row["error"].get<double>() <= 1e-3);
        if (row["op"] == "write" || row["op"] == "reset") CHECK(row["error"].get<double>() <= 1e-9);
    }
    CHECK(finals == 2);
}

TEST_CASE("verify exit codes") {
    CHECK(run({"verify", "--config", shipped("verify")}).code == 0);
    CHECK(run({"verify"}).code == 0);
    const Result bad = run({"verify", "--config", shipped("verify_corrupted")});
    CHECK(bad.code == 1);
    CHECK_FALSE(bad.out.empty());
    Scratch tmp;
    CHECK(run({"verify", "--config", tmp.write("e.json", json{{"schema", 1}, {"suites", json::array()}})}).code == 2);
    CHECK(run({"verify", "--config", tmp.write("u.json", json{{"schema", 1}, {"suites", {"nope"}}})}).code == 2);
}

TEST_CASE("config errors exit 2") {
    Scratch tmp;
    auto code = [&](const char* cmd, const json& cfg) { return run({cmd, "--config", tmp.write("x.json", cfg)}).code; };
    CHECK(code("resolvent", {{"schema", 1}, {"couplings", {1, 0, 0}}, {"grid", {{"values", json::array()}}}}) == 2);
    CHECK(code("resolvent", {{"schema", 2}, {"couplings", {1, 0, 0}}, {"grid", {1.0}}}) == 2);
    CHECK(code("resolvent", {{"couplings", {1, 0, 0}}, {"grid", {1.0}}}) == 2);
    CHECK(code("resolvent", {{"schema", 1}, {"couplings", {1, 0, 0}}, {"grid", {-1.0}}}) == 2);
    CHECK(code("resolvent", {{"schema", 1}, {"couplings", {1, 0}}, {"grid", {1.0}}}) == 2);
    CHECK(code("resolvent", {{"schema", 1}, {"command", "smatrix"}, {"couplings", {1, 0, 0}}, {"grid", {1.0}}}) == 2);
    CHECK(code("smatrix", {{"schema", 1}, {"couplings", {1, 0, 0}}, {"grid", {{"start", 1}, {"stop", 2}}}}) == 2);
    CHECK(code("scatter", {{"schema", 1}, {"sites", {{{"position", 0}, {"c1", {{1, 1}, {0, 1}}}}}}, {"grid", {1.0}},
                           {"incident", {{"mode", "even"}, {"amplitudes", {1, 0}}}}}) == 2);  // not hermitian
    CHECK(code("scatter", {{"schema", 1}, {"sites", json::array()}, {"grid", {1.0}},
                           {"incident", {{"mode", "sideways"}}}}) == 2);
    CHECK(code("memory", {{"schema", 1}, {"couplings", {{"g1", 0}, {"g3", 1}}}, {"script", json::array()}}) == 2);
    CHECK(code("memory", {{"schema", 1}, {"couplings", {{"g1", 1}, {"g3", 1}}}, {"script", {{{"op", "fly"}}}}}) == 2);
    CHECK(code("memory", {{"schema", 1}, {"couplings", {{"g1", 1}, {"g3", 1}}},
                          {"script", {{{"op", "write"}, {"target", {1, 1}}}}}}) == 2);
    CHECK(code("memory", {{"schema", 1}, {"couplings", {{"g1", 1}, {"g3", 1}}},
                          {"script", {{{"op", "admissibility"}, {"alpha", 1}, {"beta", 1}, {"k", 1}}}}}) == 2);

    CHECK(run({"resolvent", "--config", tmp.write("bad.json", std::string("{not json"))}).code == 2);
    CHECK(run({"resolvent", "--config", (tmp.dir / "missing.json").string()}).code == 2);
    CHECK(run({"resolvent"}).code == 2);
    CHECK(run({"resolvent", "--config", shipped("resolvent"), "--format", "xml"}).code == 2);
    CHECK(run({"resolvent", "--config", shipped("resolvent"), "--bogus"}).code == 2);
    CHECK(run({}).code == 2);
}

TEST_CASE("help and output file") {
    const Result h = run({"--help"});
    CHECK(h.code == 0);
    CHECK(h.out.find("resolvent") != std::string::npos);
    Scratch tmp;
    const std::string path = (tmp.dir / "out.csv").string();
    const Result r = run({"smatrix", "--config", shipped("smatrix"), "--format", "csv", "--out", path});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream text;
    text << in.rdbuf();
    CHECK(text.str() == run({"smatrix", "--config", shipped("smatrix"), "--format", "csv"}).out);
}

}  // TEST_SUITE
