#pragma once

#include <optional>
#include <string>
#include <vector>

#include "comdf/analysis.hpp"
#include "comdf/sim.hpp"

namespace comdf {

/// Design verdicts and the derived fusion parameters for one scenario.
/// Computed best-effort: fields stay empty past the first violated
/// precondition, which `infeasibility` names.
struct DesignReport {
    bool strongly_connected = false;
    bool observable = false;
    bool feasible = false;           // strongly connected, observable, rho(G) < 1
    std::string infeasibility;       // empty when feasible

    std::optional<Matrix> mu;
    std::optional<double> rho_G, norm_G;
    std::optional<double> norm_A_minus_KCA, norm_K, norm_CA;
    std::optional<double> l0;
    std::string l0_note;             // why l0 is absent, when it is
};

DesignReport run_design(const ScenarioConfig& cfg);
std::string design_report_json(const DesignReport& report);

/// Stationary-gap sweep over fusion depths l_min..l_max.
GapReport run_gap(const ScenarioConfig& cfg, long l_min, long l_max);

/// CSV with columns l,gap,bound_radius,bound_norm,rho_G,norm_G,status and a
/// trailing '#'-prefixed JSON footer carrying the fitted constants and the
/// log-decay slope. Unstable depths are flagged and carry no numbers.
std::string gap_report_csv(const GapReport& report);

/// Monte Carlo study outputs plus the matching stationary predictions.
struct SimulationResult {
    MseSeries series;
    long steady_window = 0;                   // trailing steps averaged
    std::vector<double> steady_mse;           // per sensor
    double steady_mse_central = 0.0;
    // Stationary traces, absent if the depth-l loop is unstable.
    std::optional<std::vector<double>> analytic_traces;
    std::optional<double> analytic_trace_central;
    std::string analytic_note;
    long fusion_steps = 0;
    long trials = 0;
    std::uint64_t seed = 0;
};

SimulationResult run_simulation(const ScenarioConfig& cfg);

/// CSV with columns k,sensor_id,mse; sensor_id 0 is the centralized filter.
std::string mse_csv(const MseSeries& series);

std::string simulation_summary_json(const SimulationResult& result);

/// Shortest round-trip-safe decimal rendering used in all CSV output.
std::string format_double(double value);

}  // namespace comdf
