// Contract tests for the installed CLI: exit codes, output files,
// determinism. Each test drives the real binary through std::system.
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

const char* kScalarJson = R"({
  "plant": {"A": [[0.9]], "Q": [[1.0]]},
  "sensors": [
    {"type": "custom", "C": [[1.0]], "R": [[1.0]]},
    {"type": "custom", "C": [[1.0]], "R": [[1.0]]}
  ],
  "graph": {"edges": [[1,2],[2,1]]},
  "design": {"policy": "distributed"},
  "run": {"l": 2, "horizon": 15, "trials": 8, "seed": 4242,
          "x0": [0.0], "P0": [[10.0]]}
})";

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / "comdf_cli_tests";
        fs::create_directories(path);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string write_scenario(const TempDir& dir, const std::string& name,
                           const std::string& body) {
    std::string path = dir.file(name);
    std::ofstream(path) << body;
    return path;
}

int run_cli(const std::string& args, const std::string& stdout_path = "/dev/null") {
    std::string command = std::string(COMDF_CLI_PATH) + " " + args + " > " + stdout_path +
                          " 2>" + stdout_path + ".err";
    int status = std::system(command.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ostringstream out;
    out << std::ifstream(path).rdbuf();
    return out.str();
}

}  // namespace

TEST_CASE("design: feasible scenario exits 0 and reports the numbers") {
    TempDir dir;
    std::string scenario = write_scenario(dir, "scalar.json", kScalarJson);
    std::string stdout_path = dir.file("design.out");
    CHECK(run_cli("design " + scenario, stdout_path) == 0);
    std::string text = slurp(stdout_path);
    CHECK(text.find("feasible: true") != std::string::npos);
    CHECK(text.find("rho_G") != std::string::npos);

    // --json prints the machine-readable report; --out writes it to a file.
    std::string report_path = dir.file("design.json");
    CHECK(run_cli("design " + scenario + " --json --out " + report_path) == 0);
    std::string report = slurp(report_path);
    CHECK(report.find("\"feasible\": true") != std::string::npos);
    CHECK(report.find("\"norm_G\"") != std::string::npos);
}

TEST_CASE("design: non-strongly-connected graph exits 1 naming the condition") {
    TempDir dir;
    std::string broken = kScalarJson;
    broken.replace(broken.find("[[1,2],[2,1]]"), 13, "[[1,2]]");
    std::string scenario = write_scenario(dir, "oneway.json", broken);
    std::string stdout_path = dir.file("oneway.out");
    CHECK(run_cli("design " + scenario, stdout_path) == 1);
    std::string all = slurp(stdout_path) + slurp(stdout_path + ".err");
    CHECK(all.find("strongly connected") != std::string::npos);
}

TEST_CASE("design: malformed JSON exits 2") {
    TempDir dir;
    std::string scenario = write_scenario(dir, "broken.json", "{ this is not json");
    CHECK(run_cli("design " + scenario) == 2);
    CHECK(run_cli("design " + dir.file("missing.json")) == 2);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_cli("design") == 2);          // missing scenario argument
    CHECK(run_cli("frobnicate x.json") == 2);
}

TEST_CASE("gap: single-depth sweep produces exactly one data row") {
    TempDir dir;
    std::string scenario = write_scenario(dir, "scalar.json", kScalarJson);
    std::string csv_path = dir.file("gap.csv");
    CHECK(run_cli("gap " + scenario + " --l-min 3 --l-max 3 --out " + csv_path) == 0);
    std::string csv = slurp(csv_path);
    CHECK(csv.rfind("l,gap,", 0) == 0);
    int rows = 0;
    for (char c : csv)
        if (c == '\n') ++rows;
    CHECK(rows == 3);  // header + one data row + footer
    CHECK(csv.find("\n3,") != std::string::npos);
}

TEST_CASE("simulate: identical configs produce byte-identical CSV") {
    TempDir dir;
    std::string scenario = write_scenario(dir, "scalar.json", kScalarJson);
    std::string a = dir.file("mse_a.csv"), b = dir.file("mse_b.csv");
    CHECK(run_cli("simulate " + scenario + " --out " + a) == 0);
    CHECK(run_cli("simulate " + scenario + " --out " + b) == 0);
    std::string csv_a = slurp(a), csv_b = slurp(b);
    CHECK(!csv_a.empty());
    CHECK(csv_a == csv_b);
    CHECK(csv_a.rfind("k,sensor_id,mse\n", 0) == 0);

    // A seed override changes the bytes.
    std::string c = dir.file("mse_c.csv");
    CHECK(run_cli("simulate " + scenario + " --seed 1 --out " + c) == 0);
    CHECK(slurp(c) != csv_a);
}

TEST_CASE("simulate --json prints the summary") {
    TempDir dir;
    std::string scenario = write_scenario(dir, "scalar.json", kScalarJson);
    std::string out = dir.file("mse.csv");
    std::string stdout_path = dir.file("summary.out");
    CHECK(run_cli("simulate " + scenario + " --json --out " + out, stdout_path) == 0);
    CHECK(slurp(stdout_path).find("\"steady_mse\"") != std::string::npos);
}

TEST_CASE("the shipped tracking scenario is valid and feasible") {
    TempDir dir;
    std::string stdout_path = dir.file("shipped.out");
    CHECK(run_cli(std::string("design ") + COMDF_EXAMPLE_SCENARIO + " --json",
                  stdout_path) == 0);
    std::string report = slurp(stdout_path);
    CHECK(report.find("\"feasible\": true") != std::string::npos);
    CHECK(report.find("\"strongly_connected\": true") != std::string::npos);
    CHECK(report.find("\"observable\": true") != std::string::npos);
}
