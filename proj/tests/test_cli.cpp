#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fading_cli/cli.hpp"
#include "fading_cli/presets.hpp"
#include "fading_cli/table.hpp"

using namespace fading_cli;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path temp_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("fading_cli_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

const std::vector<std::string> kKmu = {"--model", "kmu-gamma", "--kappa", "1", "--mu", "2", "--b", "1.4", "--omega", "1.2"};

std::vector<std::string> cat(std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

}  // namespace

TEST_CASE("grid parsing") {
    const XGrid g = parse_grid("0:4:81");
    CHECK(g.count == 81);
    CHECK(g.at(80) == 4.0);
    CHECK(g.at(1) == 0.05);
    CHECK_THROWS_WITH(parse_grid("1:1:1"), doctest::Contains("count must be >= 2"));
    CHECK_THROWS(parse_grid("0:4"));
    CHECK_THROWS(parse_grid("a:b:c"));
    CHECK_THROWS(parse_grid("4:0:10"));
}

TEST_CASE("format_double round-trips") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, 0.0015405504704765205})
        CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("presets carry the captioned parameters") {
    const auto f1 = find_preset("fig1");
    REQUIRE(f1);
    CHECK(f1->model == Model::kmu_gamma);
    CHECK((f1->b == 1.4 && f1->omega == 1.2 && f1->mu == 2.0 && f1->swept == "kappa"));
    const auto f2 = find_preset("fig2");
    REQUIRE(f2);
    CHECK((f2->b == 1.4 && f2->omega == 1.2 && f2->kappa == 1.0 && f2->swept == "mu"));
    const auto f3 = find_preset("fig3");
    REQUIRE(f3);
    CHECK(f3->model == Model::kmu_extreme_gamma);
    CHECK((f3->b == 1.2 && f3->omega == 0.8 && f3->swept == "m"));
    CHECK_FALSE(find_preset("fig9"));
    CHECK(parse_model(model_name(Model::kmu_extreme_gamma)) == Model::kmu_extreme_gamma);
}

TEST_CASE("pdf command: schema and consistency") {
    const Result r = call(cat({"pdf"}, cat(kKmu, {"--x", "0:4:81"})));
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.find('\r') == std::string::npos);
    CHECK(r.out.rfind("x,pdf_numeric,pdf_series,abs_diff\n", 0) == 0);
    std::istringstream in(r.out);
    const Table t = read_csv(in);
    REQUIRE(t.rows.size() == 81);
    for (const Row& row : t.rows) {
        CHECK(row.abs_diff == std::fabs(row.pdf_numeric - row.pdf_series));
        CHECK(row.pdf_numeric >= 0.0);
    }
    // At least 12 significant digits in decimal notation.
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    std::getline(lines, line);
    std::getline(lines, line);
    CHECK(line.substr(0, line.find(',')) == "0.050000000000000003");
}

TEST_CASE("pdf command: parameter errors") {
    Result r = call({"pdf", "--model", "kmu-gamma", "--kappa", "1", "--mu", "-1", "--b", "1.4", "--omega", "1.2"});
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("mu must be positive") != std::string::npos);
    r = call(cat({"pdf"}, cat(kKmu, {"--x", "1:1:1"})));
    CHECK(r.code == kExitUsage);
    r = call(cat({"pdf"}, cat(kKmu, {"--m", "1"})));
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("--m") != std::string::npos);
    r = call({"pdf", "--model", "nope"});
    CHECK(r.code == kExitUsage);
    r = call(cat({"pdf"}, cat(kKmu, {"--compounding", "ms"})));
    CHECK(r.code == kExitUsage);
    r = call({"frobnicate"});
    CHECK(r.code == kExitUsage);
    r = call(cat({"pdf"}, cat(kKmu, {"--output", "/nonexistent-dir/x.csv"})));
    CHECK(r.code != kExitOk);
}

TEST_CASE("help and version exit cleanly") {
    CHECK(call({"--help"}).code == kExitOk);
    const Result v = call({"--version"});
    CHECK(v.code == kExitOk);
    CHECK(v.out.find(version()) != std::string::npos);
}

TEST_CASE("quadrature tolerance environment override") {
    ::setenv("COMPOSITE_FADING_QUAD_TOL", "bogus", 1);
    CHECK(call(cat({"pdf"}, cat(kKmu, {"--x", "0.5:1:2"}))).code == kExitUsage);
    ::setenv("COMPOSITE_FADING_QUAD_TOL", "1e-8", 1);
    const Result r = call(cat({"pdf"}, cat(kKmu, {"--x", "0.5:1:2", "--format", "json"})));
    ::unsetenv("COMPOSITE_FADING_QUAD_TOL");
    REQUIRE(r.code == kExitOk);
    CHECK(json::parse(r.out)["pdf_numeric"][0].get<double>() == doctest::Approx(0.5976047057539768).epsilon(1e-7));
}

TEST_CASE("sweep: preset files and manifest") {
    const fs::path dir = temp_dir("sweep");
    const Result r = call({"sweep", "--preset", "fig1", "--kappa-values", "0.5,1,2,4", "--x", "0:4:41", "--out-dir",
                           dir.string()});
    REQUIRE(r.code == kExitOk);
    const json m = json::parse(slurp(dir / "fig1_manifest.json"));
    CHECK(m["preset"] == "fig1");
    CHECK(m["swept_param"] == "kappa");
    CHECK(m["fixed_params"]["b"] == 1.4);
    CHECK(m["fixed_params"]["omega"] == 1.2);
    CHECK(m["fixed_params"]["mu"] == 2.0);
    REQUIRE(m["files"].size() == 4);
    for (const json& f : m["files"]) {
        CHECK(fs::exists(dir / f["file"].get<std::string>()));
        CHECK(f["params"]["mu"] == 2.0);
    }
    CHECK(call({"sweep", "--preset", "fig1", "--b", "2", "--out-dir", dir.string()}).code == kExitUsage);
    CHECK(call({"sweep", "--preset", "fig1", "--out-dir", "/proc/forbidden/x"}).code != kExitOk);
    fs::remove_all(dir);
}

TEST_CASE("sweep: manifest re-runs bit-identically") {
    const fs::path a = temp_dir("rerun_a");
    REQUIRE(call({"sweep", "--preset", "fig3", "--m-values", "0.5,1.5", "--x", "0:3:31", "--out-dir", a.string()}).code ==
            kExitOk);
    const json m = json::parse(slurp(a / "fig3_manifest.json"));
    std::vector<std::string> cmd = m["command"].get<std::vector<std::string>>();
    const fs::path b = temp_dir("rerun_b");
    for (std::size_t i = 0; i + 1 < cmd.size(); ++i)
        if (cmd[i] == "--out-dir") cmd[i + 1] = b.string();
    REQUIRE(call(cmd).code == kExitOk);
    for (const json& f : m["files"]) {
        const std::string name = f["file"];
        CHECK(slurp(a / name) == slurp(b / name));
    }
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("sweep: csv and json carry identical values") {
    const fs::path c = temp_dir("fmt_csv");
    const fs::path j = temp_dir("fmt_json");
    const std::vector<std::string> base = {"sweep", "--preset", "fig2", "--mu-values", "1,3.5", "--x", "0:4:21"};
    REQUIRE(call(cat(base, {"--out-dir", c.string()})).code == kExitOk);
    REQUIRE(call(cat(base, {"--out-dir", j.string(), "--format", "json"})).code == kExitOk);
    for (const char* stem : {"fig2_mu_1", "fig2_mu_3.5"}) {
        std::ifstream in(c / (std::string(stem) + ".csv"));
        const Table t = read_csv(in);
        const json d = json::parse(slurp(j / (std::string(stem) + ".json")));
        REQUIRE(d["x"].size() == t.rows.size());
        for (std::size_t i = 0; i < t.rows.size(); ++i) {
            CHECK(d["x"][i].get<double>() == t.rows[i].x);
            CHECK(d["pdf_numeric"][i].get<double>() == t.rows[i].pdf_numeric);
            CHECK(d["pdf_series"][i].get<double>() == t.rows[i].pdf_series);
            CHECK(d["abs_diff"][i].get<double>() == t.rows[i].abs_diff);
        }
        // Re-serializing the parsed CSV reproduces the file byte for byte.
        std::ostringstream again;
        write_csv(again, t);
        CHECK(again.str() == slurp(c / (std::string(stem) + ".csv")));
    }
    fs::remove_all(c);
    fs::remove_all(j);
}

TEST_CASE("sample command") {
    const std::vector<std::string> args = {"sample", "--model", "kmu-extreme-gamma", "--m", "1", "--b", "1.2",
                                           "--omega", "0.8", "--count", "1000", "--seed", "7"};
    const Result a = call(args);
    const Result b = call(args);
    REQUIRE(a.code == kExitOk);
    CHECK(a.out == b.out);
    CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 1000);

    std::vector<std::string> big = args;
    big[10] = "200000";
    const Result z = call(big);
    std::istringstream in(z.out);
    int zeros = 0;
    int n = 0;
    for (double v; in >> v; ++n) zeros += v == 0.0;
    const double p = std::exp(-2.0);
    CHECK(n == 200000);
    CHECK(std::fabs(zeros / static_cast<double>(n) - p) <= 3.0 * std::sqrt(p * (1.0 - p) / n));

    std::vector<std::string> bad = args;
    bad[10] = "0";
    CHECK(call(bad).code == kExitUsage);
}

TEST_CASE("sample file feeds the goodness-of-fit path") {
    const fs::path dir = temp_dir("gof");
    const std::string file = (dir / "s.txt").string();
    const std::vector<std::string> model = {"--model", "kmu-extreme-gamma", "--m", "1", "--b", "1.2", "--omega", "0.8"};
    REQUIRE(call(cat(cat({"sample"}, model), {"--count", "200000", "--seed", "3", "--output", file})).code == kExitOk);
    const std::string report = (dir / "r.json").string();
    call(cat(cat({"validate", "--criterion", "8", "--gof-samples", file}, model), {"--report", report}));
    const json r = json::parse(slurp(report));
    bool found = false;
    for (const json& c : r["checks"])
        if (c["id"] == "gof.samples_file") {
            found = true;
            CHECK(c["pass"] == true);
        }
    CHECK(found);
    fs::remove_all(dir);
}

TEST_CASE("validate: report structure and exit status") {
    const fs::path dir = temp_dir("validate");
    const std::string report = (dir / "quick.json").string();
    const Result r = call({"validate", "--quick", "--report", report});
    const json j = json::parse(slurp(report));
    CHECK(j["summary"]["total"].get<int>() >= 30);
    CHECK(j["checks"].size() == j["summary"]["total"].get<std::size_t>());
    const bool any_failed = !j["summary"]["failing_ids"].empty();
    CHECK(r.code == (any_failed ? kExitValidation : kExitOk));
    for (const json& id : j["summary"]["failing_ids"])
        CHECK(r.err.find("FAILED " + id.get<std::string>()) != std::string::npos);
    CHECK_FALSE(j["discrepancies"].empty());
    for (const json& d : j["discrepancies"]) {
        CHECK(d.contains("printed_S"));
        CHECK(d.contains("measured_S"));
        CHECK(d.contains("S_gap"));
    }

    const Result ok = call({"validate", "--criterion", "8"});
    CHECK(ok.code == kExitOk);
    const Result fault = call({"validate", "--criterion", "1", "--quick", "--inject-fault"});
    CHECK(fault.code == kExitValidation);
    CHECK(fault.err.find("FAILED c1.") != std::string::npos);
    CHECK(call({"validate", "--criterion", "9"}).code == kExitUsage);
    fs::remove_all(dir);
}

TEST_CASE("selfcheck is the quick validation") {
    const Result s = call({"selfcheck", "--criterion", "8"});
    CHECK(s.code == kExitOk);
    const json j = json::parse(s.out);
    CHECK(j["level"] == "quick");
}
