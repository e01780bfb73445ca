// Command-line front end for the COMDF shared library.
//
// Subcommands:
//   design   <scenario.json>                  consensus-design report
//   gap      <scenario.json> --l-min --l-max  stationary-gap sweep CSV
//   simulate <scenario.json>                  Monte Carlo MSE CSV
//
// Exit codes: 0 success, 1 infeasible design or failed precondition,
// 2 bad input (parse/usage/IO).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "comdf/comdf.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitBadInput = 2;

int exit_code_for(comdf_status status) {
    switch (status) {
        case COMDF_OK:
            return kExitOk;
        case COMDF_ERR_INFEASIBLE:
        case COMDF_ERR_NUMERIC:
            return kExitInfeasible;
        default:
            return kExitBadInput;
    }
}

void report_failure(comdf_status status) {
    std::cerr << "error (" << comdf_status_name(status) << "): " << comdf_last_error() << "\n";
}

/// Owned string coming back from the C API.
struct ApiString {
    char* text = nullptr;
    ~ApiString() { comdf_string_free(text); }
    std::string str() const { return text ? text : ""; }
};

struct ScenarioHandle {
    comdf_scenario* handle = nullptr;
    ~ScenarioHandle() { comdf_scenario_free(handle); }
};

bool write_output(const std::string& payload, const std::string& path) {
    if (path.empty()) {
        std::cout << payload;
        return true;
    }
    std::ofstream out(path, std::ios::binary);
    out << payload;
    if (!out) {
        std::cerr << "error: cannot write '" << path << "'\n";
        return false;
    }
    return true;
}

int load_scenario(const std::string& path, const std::optional<std::uint64_t>& seed,
                  ScenarioHandle& scenario) {
    comdf_status status = comdf_scenario_load_file(path.c_str(), &scenario.handle);
    if (status != COMDF_OK) {
        report_failure(status);
        return exit_code_for(status);
    }
    if (seed) comdf_scenario_set_seed(scenario.handle, *seed);
    return kExitOk;
}

void print_design_text(const std::string& report_json) {
    auto doc = nlohmann::json::parse(report_json);
    auto show = [&](const char* key) {
        std::cout << "  " << key << ": " << doc[key].dump() << "\n";
    };
    std::cout << "consensus design report\n";
    show("feasible");
    show("strongly_connected");
    show("observable");
    if (doc.contains("infeasibility")) show("infeasibility");
    show("rho_G");
    show("norm_G");
    show("l0");
    if (doc.contains("l0_note")) show("l0_note");
    show("norm_A_minus_KCA");
    show("norm_K");
    show("norm_CA");
    std::cout << "  mu: " << doc["mu"].dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"consensus-on-measurement distributed filter experiments"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_path;
    std::optional<std::uint64_t> seed_override;
    bool as_json = false;
    long l_min = 1, l_max = 40;

    auto add_common = [&](CLI::App* cmd, bool with_range) {
        cmd->add_option("scenario", scenario_path, "scenario JSON file")->required();
        cmd->add_option("--out", out_path, "write the main output to this path");
        cmd->add_option("--seed", seed_override, "override the scenario seed");
        cmd->add_flag("--json", as_json, "print machine-readable JSON to stdout");
        if (with_range) {
            cmd->add_option("--l-min", l_min, "first fusion depth")->capture_default_str();
            cmd->add_option("--l-max", l_max, "last fusion depth")->capture_default_str();
        }
    };

    CLI::App* design = app.add_subcommand("design", "check and report the consensus design");
    add_common(design, false);
    CLI::App* gap = app.add_subcommand("gap", "sweep the stationary gap over fusion depths");
    add_common(gap, true);
    CLI::App* simulate = app.add_subcommand("simulate", "run the seeded Monte Carlo study");
    add_common(simulate, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitBadInput;
    }

    ScenarioHandle scenario;
    if (int code = load_scenario(scenario_path, seed_override, scenario); code != kExitOk)
        return code;

    if (design->parsed()) {
        ApiString report;
        comdf_status status = comdf_design_report(scenario.handle, &report.text);
        if (status != COMDF_OK && status != COMDF_ERR_INFEASIBLE) {
            report_failure(status);
            return exit_code_for(status);
        }
        if (as_json)
            std::cout << report.str();
        else
            print_design_text(report.str());
        if (!out_path.empty() && !write_output(report.str(), out_path)) return kExitBadInput;
        if (status == COMDF_ERR_INFEASIBLE) {
            report_failure(status);
            return kExitInfeasible;
        }
        return kExitOk;
    }

    if (gap->parsed()) {
        ApiString csv;
        comdf_status status = comdf_gap_sweep(scenario.handle, l_min, l_max, &csv.text);
        if (status != COMDF_OK) {
            report_failure(status);
            return exit_code_for(status);
        }
        if (!write_output(csv.str(), out_path)) return kExitBadInput;
        if (as_json && !out_path.empty()) {
            // The footer line carries the fitted constants.
            std::string payload = csv.str();
            auto pos = payload.rfind("# ");
            if (pos != std::string::npos) std::cout << payload.substr(pos + 2);
        }
        return kExitOk;
    }

    // simulate
    ApiString csv, summary;
    comdf_status status = comdf_simulate(scenario.handle, &csv.text, &summary.text);
    if (status != COMDF_OK) {
        report_failure(status);
        return exit_code_for(status);
    }
    if (!write_output(csv.str(), out_path)) return kExitBadInput;
    if (as_json && !out_path.empty()) std::cout << summary.str();
    if (!as_json && !out_path.empty()) std::cerr << summary.str();
    return kExitOk;
}
