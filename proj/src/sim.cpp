#include "comdf/sim.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <string>

#include "comdf/errors.hpp"

namespace comdf {

void ScenarioConfig::validate() const {
    plant.validate();
    if (sensors.empty()) fail(ErrorCode::InvalidArgument, "scenario: no sensors");
    if (graph.node_count() != static_cast<int>(sensors.size()))
        fail(ErrorCode::InvalidArgument,
             "scenario: graph has " + std::to_string(graph.node_count()) + " nodes but " +
                 std::to_string(sensors.size()) + " sensors are declared");
    if (policy == MuPolicy::Explicit && !mu_table)
        fail(ErrorCode::InvalidArgument, "scenario: explicit mu policy needs a mu_table");
    if (fusion_steps < 1) fail(ErrorCode::InvalidArgument, "scenario: fusion steps must be >= 1");
    if (horizon < 1) fail(ErrorCode::InvalidArgument, "scenario: horizon must be >= 1");
    if (trials < 1) fail(ErrorCode::InvalidArgument, "scenario: trials must be >= 1");
    const int n = plant.state_dim();
    if (x0.size() != n)
        fail(ErrorCode::InvalidArgument, "scenario: x0 must have the state dimension");
    if (P0.rows() != n || P0.cols() != n)
        fail(ErrorCode::InvalidArgument, "scenario: P0 must be n x n");
    Eigen::SelfAdjointEigenSolver<Matrix> eig(symmetrize(P0));
    if (eig.eigenvalues().minCoeff() < -1e-12)
        fail(ErrorCode::InvalidArgument, "scenario: P0 is not positive semidefinite");
}

Experiment build_experiment(const ScenarioConfig& cfg) {
    cfg.validate();
    SensorSuite suite(cfg.sensors);
    if (suite.state_dim() != cfg.plant.state_dim())
        fail(ErrorCode::InvalidArgument, "scenario: sensors observe a different state dimension");
    if (!is_strongly_connected(cfg.graph))
        fail(ErrorCode::Infeasible, "scenario: communication graph is not strongly connected");

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
    if (design.rho_G() >= 1.0)
        fail(ErrorCode::Infeasible,
             "scenario: fusion matrix is not contracting (rho(G) = " +
                 std::to_string(design.rho_G()) + " >= 1)");

    Augmented aug = augment(suite);
    GainDesign gains = design_gain(cfg.plant, aug.C, aug.R);
    ComdfFilter filter(cfg.plant, suite, gains, design);
    return {std::move(suite), std::move(aug), std::move(mu), std::move(design),
            std::move(gains), std::move(filter)};
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t trial,
                                 std::uint64_t purpose) {
    std::uint64_t state = seed;
    std::uint64_t a = splitmix64(state);
    state ^= trial;
    std::uint64_t b = splitmix64(state);
    state ^= purpose;
    std::uint64_t c = splitmix64(state);
    return a ^ (b * 0x9E3779B97F4A7C15ull) ^ c;
}

constexpr std::uint64_t kPurposeTrajectory = 0;
constexpr std::uint64_t kPurposeInitialEstimate = 1;

}  // namespace

NoiseStream::NoiseStream(std::uint64_t seed, std::uint64_t trial, std::uint64_t purpose)
    : engine_(derive_stream_seed(seed, trial, purpose)) {}

double NoiseStream::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double NoiseStream::gaussian() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    // Box-Muller; 1 - u keeps the log argument in (0, 1].
    double radius = std::sqrt(-2.0 * std::log(1.0 - uniform()));
    double angle = 2.0 * std::numbers::pi * uniform();
    cached_ = radius * std::sin(angle);
    has_cached_ = true;
    return radius * std::cos(angle);
}

Vector NoiseStream::gaussian_vector(const Vector& mean, const Matrix& sqrt_cov) {
    Vector g(sqrt_cov.cols());
    for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = gaussian();
    return mean + sqrt_cov * g;
}

Trial generate_trial(const ScenarioConfig& cfg, long trial_index) {
    cfg.validate();
    SensorSuite suite(cfg.sensors);
    const int n = cfg.plant.state_dim();
    const int r = suite.total_dim();

    Matrix sqrt_Q = psd_sqrt(cfg.plant.Q);
    std::vector<Matrix> sqrt_R;
    sqrt_R.reserve(suite.count());
    for (int i = 0; i < suite.count(); ++i) sqrt_R.push_back(psd_sqrt(suite.sensor(i).R));

    NoiseStream stream(cfg.seed, static_cast<std::uint64_t>(trial_index), kPurposeTrajectory);
    Trial trial;
    trial.states.reserve(cfg.horizon);
    trial.measurements.reserve(cfg.horizon);

    Vector x = cfg.x0;
    for (long k = 0; k < cfg.horizon; ++k) {
        // Draw order per step: process noise first, then each sensor's noise.
        x = cfg.plant.A * x + stream.gaussian_vector(Vector::Zero(n), sqrt_Q);
        Vector y(r);
        for (int i = 0; i < suite.count(); ++i) {
            Vector noise = stream.gaussian_vector(Vector::Zero(suite.dims()[i]), sqrt_R[i]);
            y.segment(suite.offset(i), suite.dims()[i]) = suite.sensor(i).C * x + noise;
        }
        trial.states.push_back(x);
        trial.measurements.push_back(std::move(y));
    }
    return trial;
}

MseSeries run_monte_carlo(const ScenarioConfig& cfg) {
    Experiment exp = build_experiment(cfg);
    const int N = exp.suite.count();

    MseSeries series;
    series.horizon = cfg.horizon;
    series.sensor_count = N;
    series.central.assign(cfg.horizon, 0.0);
    series.per_sensor.assign(N, std::vector<double>(cfg.horizon, 0.0));

    Matrix sqrt_P0 = psd_sqrt(cfg.P0);

    for (long trial_index = 0; trial_index < cfg.trials; ++trial_index) {
        Trial trial = generate_trial(cfg, trial_index);
        NoiseStream init_stream(cfg.seed, static_cast<std::uint64_t>(trial_index),
                                kPurposeInitialEstimate);

        // Initial estimates: one shared draw by default (all sensors plus the
        // centralized filter start identically, the premise of the transient
        // comparison); independent per-sensor draws behind the flag, in which
        // case the centralized filter draws last.
        FilterBank bank;
        CentralState central;
        if (cfg.independent_initial_estimates) {
            bank.estimates.reserve(N);
            for (int i = 0; i < N; ++i)
                bank.estimates.push_back(init_stream.gaussian_vector(cfg.x0, sqrt_P0));
            central.estimate = init_stream.gaussian_vector(cfg.x0, sqrt_P0);
        } else {
            Vector shared = init_stream.gaussian_vector(cfg.x0, sqrt_P0);
            bank = make_bank(N, shared);
            central.estimate = shared;
        }

        for (long k = 0; k < cfg.horizon; ++k) {
            const Vector& y = trial.measurements[k];
            const Vector& x = trial.states[k];
            bank = exp.filter.step(bank, y, cfg.fusion_steps);
            central = exp.filter.central_step(central, y);
            for (int i = 0; i < N; ++i)
                series.per_sensor[i][k] += (bank.estimates[i] - x).squaredNorm();
            series.central[k] += (central.estimate - x).squaredNorm();
        }
    }

    const double inv_trials = 1.0 / static_cast<double>(cfg.trials);
    for (long k = 0; k < cfg.horizon; ++k) {
        series.central[k] *= inv_trials;
        for (int i = 0; i < N; ++i) series.per_sensor[i][k] *= inv_trials;
    }
    return series;
}

}  // namespace comdf
