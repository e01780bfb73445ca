#include "comdf/experiments.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "comdf/errors.hpp"

namespace comdf {

namespace {

using json = nlohmann::ordered_json;

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

DesignReport run_design(const ScenarioConfig& cfg) {
    cfg.validate();
    DesignReport report;

    SensorSuite suite(cfg.sensors);
    Augmented aug = augment(suite);

    report.strongly_connected = is_strongly_connected(cfg.graph);
    report.observable = check_observability(aug.C, cfg.plant.A);
    if (!report.strongly_connected) {
        report.infeasibility = "communication graph is not strongly connected";
        return report;
    }

    MuTable mu{Matrix()};
    switch (cfg.policy) {
        case MuPolicy::Distributed:
            mu = design_mu_distributed(cfg.graph, cfg.slack, cfg.shift);
            break;
        case MuPolicy::Unified:
            mu = uniform_mu(cfg.graph.node_count(), design_mu_unified(cfg.graph, suite.dims()));
            break;
        case MuPolicy::Explicit:
            mu = MuTable{*cfg.mu_table};
            break;
    }
    ConsensusDesign design(cfg.graph, suite.dims(), mu, cfg.anchor_own_measurement);
    report.mu = mu.mu;
    report.rho_G = design.rho_G();
    report.norm_G = design.norm_G();

    if (!report.observable) {
        report.infeasibility = "the stacked pair (C, A) is not observable";
        return report;
    }
    if (design.rho_G() >= 1.0) {
        report.infeasibility = "fusion matrix is not contracting (rho(G) >= 1)";
        return report;
    }

    GainDesign gains = design_gain(cfg.plant, aug.C, aug.R);
    report.norm_A_minus_KCA = spectral_norm(cfg.plant.A - gains.K * aug.C * cfg.plant.A);
    report.norm_K = spectral_norm(gains.K);
    report.norm_CA = spectral_norm(aug.C * cfg.plant.A);
    try {
        report.l0 = min_fusion_steps(design, gains.K, aug.C, cfg.plant.A);
    } catch (const Error& e) {
        report.l0_note = e.what();
    }
    report.feasible = true;
    return report;
}

std::string design_report_json(const DesignReport& report) {
    json doc;
    doc["feasible"] = report.feasible;
    doc["strongly_connected"] = report.strongly_connected;
    doc["observable"] = report.observable;
    if (!report.infeasibility.empty()) doc["infeasibility"] = report.infeasibility;
    doc["rho_G"] = report.rho_G ? json(*report.rho_G) : json();
    doc["norm_G"] = report.norm_G ? json(*report.norm_G) : json();
    doc["l0"] = report.l0 ? json(*report.l0) : json();
    if (!report.l0_note.empty()) doc["l0_note"] = report.l0_note;
    doc["norm_A_minus_KCA"] =
        report.norm_A_minus_KCA ? json(*report.norm_A_minus_KCA) : json();
    doc["norm_K"] = report.norm_K ? json(*report.norm_K) : json();
    doc["norm_CA"] = report.norm_CA ? json(*report.norm_CA) : json();
    doc["mu"] = report.mu ? matrix_to_json(*report.mu) : json();
    return doc.dump(2) + "\n";
}

GapReport run_gap(const ScenarioConfig& cfg, long l_min, long l_max) {
    if (l_min < 0 || l_max < l_min)
        fail(ErrorCode::InvalidArgument, "gap sweep: need 0 <= l_min <= l_max");
    Experiment exp = build_experiment(cfg);
    std::vector<long> range;
    for (long l = l_min; l <= l_max; ++l) range.push_back(l);
    return gap_sweep(cfg.plant, SensorSuite(cfg.sensors), exp.gains, exp.design, range);
}

std::string gap_report_csv(const GapReport& report) {
    std::ostringstream out;
    out << "l,gap,bound_radius,bound_norm,rho_G,norm_G,status\n";
    for (const GapPoint& point : report.points) {
        out << point.l << ',';
        if (point.stable) {
            out << format_double(point.gap) << ',' << format_double(point.bound_radius) << ','
                << (report.norm_regime ? format_double(point.bound_norm) : "nan") << ',';
        } else {
            out << "nan,nan,nan,";
        }
        out << format_double(report.rho_G) << ',' << format_double(report.norm_G) << ','
            << (point.stable ? "ok" : "unstable") << '\n';
    }
    json footer;
    footer["M1"] = report.M1;
    footer["M2"] = report.norm_regime ? json(report.M2) : json();
    footer["log_slope"] = report.log_slope;
    footer["rho_G"] = report.rho_G;
    footer["norm_G"] = report.norm_G;
    footer["norm_regime"] = report.norm_regime;
    out << "# " << footer.dump() << '\n';
    return out.str();
}

SimulationResult run_simulation(const ScenarioConfig& cfg) {
    SimulationResult result;
    result.series = run_monte_carlo(cfg);
    result.fusion_steps = cfg.fusion_steps;
    result.trials = cfg.trials;
    result.seed = cfg.seed;

    const int N = result.series.sensor_count;
    result.steady_window = std::max<long>(1, cfg.horizon / 4);
    const long start = cfg.horizon - result.steady_window;
    auto tail_mean = [&](const std::vector<double>& values) {
        double sum = 0.0;
        for (long k = start; k < cfg.horizon; ++k) sum += values[k];
        return sum / static_cast<double>(result.steady_window);
    };
    for (int i = 0; i < N; ++i) result.steady_mse.push_back(tail_mean(result.series.per_sensor[i]));
    result.steady_mse_central = tail_mean(result.series.central);

    // Stationary predictions: tr of the i-th diagonal block of P^(l) per
    // sensor, tr of the centralized block for the fixed-gain filter.
    try {
        Experiment exp = build_experiment(cfg);
        ErrorSystem sys = build_error_system(cfg.plant, exp.suite, exp.gains, exp.design,
                                             cfg.fusion_steps);
        SteadyState steady = steady_state(sys);
        std::vector<double> traces;
        for (int i = 0; i < N; ++i)
            traces.push_back(steady.P_l.block(i * sys.n, i * sys.n, sys.n, sys.n).trace());
        result.analytic_traces = std::move(traces);
        result.analytic_trace_central = steady.P_cc.topLeftCorner(sys.n, sys.n).trace();
    } catch (const Error& e) {
        result.analytic_note = e.what();
    }
    return result;
}

std::string mse_csv(const MseSeries& series) {
    std::ostringstream out;
    out << "k,sensor_id,mse\n";
    for (long k = 0; k < series.horizon; ++k) {
        out << (k + 1) << ",0," << format_double(series.central[k]) << '\n';
        for (int i = 0; i < series.sensor_count; ++i)
            out << (k + 1) << ',' << (i + 1) << ',' << format_double(series.per_sensor[i][k])
                << '\n';
    }
    return out.str();
}

std::string simulation_summary_json(const SimulationResult& result) {
    json doc;
    doc["l"] = result.fusion_steps;
    doc["trials"] = result.trials;
    doc["seed"] = result.seed;
    doc["steady_window"] = result.steady_window;
    doc["steady_mse"] = result.steady_mse;
    doc["steady_mse_central"] = result.steady_mse_central;
    doc["analytic_traces"] =
        result.analytic_traces ? json(*result.analytic_traces) : json();
    doc["analytic_trace_central"] =
        result.analytic_trace_central ? json(*result.analytic_trace_central) : json();
    if (!result.analytic_note.empty()) doc["analytic_note"] = result.analytic_note;
    return doc.dump(2) + "\n";
}

}  // namespace comdf
