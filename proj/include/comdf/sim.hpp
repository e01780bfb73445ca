#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "comdf/filter.hpp"
#include "comdf/graph.hpp"
#include "comdf/model.hpp"

namespace comdf {

/// How the consensus gains are chosen for a scenario.
enum class MuPolicy { Distributed, Unified, Explicit };

/// Complete description of one experiment: plant, sensors, topology, gain
/// policy, and the Monte Carlo run parameters.
struct ScenarioConfig {
    PlantModel plant;
    std::vector<Sensor> sensors;
    DiGraph graph{1};

    MuPolicy policy = MuPolicy::Distributed;
    double slack = 1.0;   // distributed policy
    double shift = 1.0;   // distributed policy
    std::optional<Matrix> mu_table;  // explicit policy
    bool anchor_own_measurement = false;

    long fusion_steps = 1;
    long horizon = 1;
    long trials = 1;
    std::uint64_t seed = 0;
    Vector x0;
    Matrix P0;
    bool independent_initial_estimates = false;

    /// Structural validation (dimensions, PSD P0, graph vs sensor count).
    void validate() const;
};

/// Scenario compiled into runnable pieces. Construction performs the
/// feasibility checks: strong connectivity, collective observability,
/// rho(G) < 1.
struct Experiment {
    SensorSuite suite;
    Augmented aug;
    MuTable mu;
    ConsensusDesign design;
    GainDesign gains;
    ComdfFilter filter;
};

Experiment build_experiment(const ScenarioConfig& cfg);

/// Deterministic noise stream: mt19937_64 seeded from (seed, trial, purpose)
/// through splitmix64, uniforms from the top 53 bits, Gaussians via
/// Box-Muller on consecutive uniform pairs (the second variate of a pair is
/// cached). Identical inputs give identical streams on any platform, since
/// both mt19937_64 and the transform are fully pinned.
class NoiseStream {
public:
    NoiseStream(std::uint64_t seed, std::uint64_t trial, std::uint64_t purpose);

    double uniform();   // [0, 1)
    double gaussian();  // N(0, 1)

    /// mean + sqrt_cov * g with g a vector of independent N(0,1) draws.
    Vector gaussian_vector(const Vector& mean, const Matrix& sqrt_cov);

private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

/// One simulated trajectory: states x_1..x_K and stacked measurements
/// y_1..y_K generated from the scenario's plant and sensors.
struct Trial {
    std::vector<Vector> states;        // K entries, n each
    std::vector<Vector> measurements;  // K entries, r each
};

/// Draws trial `trial_index` of the scenario. The stream is derived from
/// (seed, trial_index) only, so trials are reproducible in any order.
Trial generate_trial(const ScenarioConfig& cfg, long trial_index);

/// Monte Carlo mean squared estimation errors, per sensor and per step,
/// plus the centralized filter run on the same measurement realizations.
struct MseSeries {
    long horizon = 0;
    int sensor_count = 0;
    std::vector<double> central;                  // index k-1
    std::vector<std::vector<double>> per_sensor;  // [i][k-1]
};

MseSeries run_monte_carlo(const ScenarioConfig& cfg);

}  // namespace comdf
