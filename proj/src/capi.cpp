#include "comdf/comdf.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "comdf/errors.hpp"
#include "comdf/experiments.hpp"
#include "comdf/scenario.hpp"

struct comdf_scenario {
    comdf::ScenarioConfig config;
};

namespace {

thread_local std::string g_last_error;

comdf_status map_code(comdf::ErrorCode code) {
    switch (code) {
        case comdf::ErrorCode::InvalidArgument: return COMDF_ERR_INVALID_ARGUMENT;
        case comdf::ErrorCode::Parse: return COMDF_ERR_PARSE;
        case comdf::ErrorCode::Infeasible: return COMDF_ERR_INFEASIBLE;
        case comdf::ErrorCode::Numeric: return COMDF_ERR_NUMERIC;
        case comdf::ErrorCode::Io: return COMDF_ERR_IO;
    }
    return COMDF_ERR_INVALID_ARGUMENT;
}

char* copy_string(const std::string& text) {
    char* out = new char[text.size() + 1];
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

/// Runs `body`, translating exceptions into status codes + last-error text.
template <typename Body>
comdf_status guarded(Body&& body) {
    try {
        g_last_error.clear();
        return body();
    } catch (const comdf::Error& e) {
        g_last_error = e.what();
        return map_code(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return COMDF_ERR_NUMERIC;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return COMDF_ERR_INVALID_ARGUMENT;
    }
}

comdf_status require_handle(const comdf_scenario* scenario) {
    if (!scenario) {
        g_last_error = "null scenario handle";
        return COMDF_ERR_INVALID_ARGUMENT;
    }
    return COMDF_OK;
}

}  // namespace

extern "C" {

const char* comdf_version(void) { return "1.0.0"; }

const char* comdf_status_name(comdf_status status) {
    switch (status) {
        case COMDF_OK: return "COMDF_OK";
        case COMDF_ERR_INVALID_ARGUMENT: return "COMDF_ERR_INVALID_ARGUMENT";
        case COMDF_ERR_PARSE: return "COMDF_ERR_PARSE";
        case COMDF_ERR_INFEASIBLE: return "COMDF_ERR_INFEASIBLE";
        case COMDF_ERR_NUMERIC: return "COMDF_ERR_NUMERIC";
        case COMDF_ERR_IO: return "COMDF_ERR_IO";
    }
    return "COMDF_ERR_UNKNOWN";
}

const char* comdf_last_error(void) { return g_last_error.c_str(); }

comdf_status comdf_scenario_load_json(const char* text, comdf_scenario** out) {
    if (!text || !out) {
        g_last_error = "null argument";
        return COMDF_ERR_INVALID_ARGUMENT;
    }
    *out = nullptr;
    return guarded([&] {
        auto* handle = new comdf_scenario{comdf::parse_scenario_json(text)};
        *out = handle;
        return COMDF_OK;
    });
}

comdf_status comdf_scenario_load_file(const char* path, comdf_scenario** out) {
    if (!path || !out) {
        g_last_error = "null argument";
        return COMDF_ERR_INVALID_ARGUMENT;
    }
    *out = nullptr;
    return guarded([&] {
        auto* handle = new comdf_scenario{comdf::load_scenario_file(path)};
        *out = handle;
        return COMDF_OK;
    });
}

void comdf_scenario_free(comdf_scenario* scenario) { delete scenario; }

comdf_status comdf_scenario_set_seed(comdf_scenario* scenario, uint64_t seed) {
    if (comdf_status bad = require_handle(scenario); bad != COMDF_OK) return bad;
    scenario->config.seed = seed;
    return COMDF_OK;
}

comdf_status comdf_scenario_to_json(const comdf_scenario* scenario, char** out_json) {
    if (comdf_status bad = require_handle(scenario); bad != COMDF_OK) return bad;
    if (!out_json) {
        g_last_error = "null output argument";
        return COMDF_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        *out_json = copy_string(comdf::scenario_to_json(scenario->config));
        return COMDF_OK;
    });
}

comdf_status comdf_design_report(const comdf_scenario* scenario, char** out_json) {
    if (comdf_status bad = require_handle(scenario); bad != COMDF_OK) return bad;
    if (!out_json) {
        g_last_error = "null output argument";
        return COMDF_ERR_INVALID_ARGUMENT;
    }
    *out_json = nullptr;
    return guarded([&] {
        comdf::DesignReport report = comdf::run_design(scenario->config);
        *out_json = copy_string(comdf::design_report_json(report));
        if (!report.feasible) {
            g_last_error = report.infeasibility;
            return COMDF_ERR_INFEASIBLE;
        }
        return COMDF_OK;
    });
}

comdf_status comdf_gap_sweep(const comdf_scenario* scenario, long l_min, long l_max,
                             char** out_csv) {
    if (comdf_status bad = require_handle(scenario); bad != COMDF_OK) return bad;
    if (!out_csv) {
        g_last_error = "null output argument";
        return COMDF_ERR_INVALID_ARGUMENT;
    }
    *out_csv = nullptr;
    return guarded([&] {
        comdf::GapReport report = comdf::run_gap(scenario->config, l_min, l_max);
        *out_csv = copy_string(comdf::gap_report_csv(report));
        return COMDF_OK;
    });
}

comdf_status comdf_simulate(const comdf_scenario* scenario, char** out_csv,
                            char** out_summary_json) {
    if (comdf_status bad = require_handle(scenario); bad != COMDF_OK) return bad;
    if (out_csv) *out_csv = nullptr;
    if (out_summary_json) *out_summary_json = nullptr;
    return guarded([&] {
        comdf::SimulationResult result = comdf::run_simulation(scenario->config);
        if (out_csv) *out_csv = copy_string(comdf::mse_csv(result.series));
        if (out_summary_json)
            *out_summary_json = copy_string(comdf::simulation_summary_json(result));
        return COMDF_OK;
    });
}

void comdf_string_free(char* text) { delete[] text; }

}  // extern "C"
