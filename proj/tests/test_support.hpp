#pragma once

#include <random>
#include <utility>
#include <vector>

#include "comdf/scenario.hpp"
#include "comdf/sim.hpp"

namespace comdf::test {

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

inline Matrix random_matrix(std::mt19937_64& rng, int rows, int cols, double lo = -1.0,
                            double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = dist(rng);
    return m;
}

/// Random digraph with ~half the possible edges, rejection-sampled until
/// strongly connected.
inline DiGraph random_strongly_connected(std::mt19937_64& rng, int n) {
    std::bernoulli_distribution coin(0.5);
    for (;;) {
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j && coin(rng)) edges.emplace_back(i, j);
        DiGraph g(n, edges);
        if (is_strongly_connected(g)) return g;
    }
}

/// The scalar two-sensor bench: A = 0.9, Q = 1, two unit-noise scalar
/// sensors over the bidirectional two-node graph. Small enough that every
/// derived quantity has a closed form.
struct ScalarFamily {
    PlantModel plant{Matrix::Constant(1, 1, 0.9), Matrix::Constant(1, 1, 1.0)};
    SensorSuite suite;
    DiGraph graph;
    MuTable mu;
    ConsensusDesign design;

    static SensorSuite make_suite(double q_unused = 1.0) {
        (void)q_unused;
        Sensor s{Matrix::Constant(1, 1, 1.0), Matrix::Constant(1, 1, 1.0)};
        return SensorSuite({s, s});
    }

    ScalarFamily()
        : suite(make_suite()),
          graph(2, {{0, 1}, {1, 0}}),
          mu(design_mu_distributed(graph)),  // mu_ii = 1/2, mu_ij = 1/3
          design(graph, suite.dims(), mu) {}

    /// Positive root of 2 P^2 - 1.81 P - 1 = 0, the scalar prediction
    /// Riccati equation after eliminating the 2x2 inverse by hand.
    static double dare_root() { return (1.81 + std::sqrt(1.81 * 1.81 + 8.0)) / 4.0; }

    /// The explicit 4x4 fusion matrix of this bench.
    static Matrix explicit_G() {
        Matrix G(4, 4);
        G << 0.5, 0.0, 0.5, 0.0,
             0.0, 1.0 / 3.0, 0.0, 1.0 / 3.0,
             1.0 / 3.0, 0.0, 1.0 / 3.0, 0.0,
             0.0, 0.5, 0.0, 0.5;
        return G;
    }
};

/// Directed five-node circulant used as the default tracking topology:
/// node i receives from i-1, i-2 and i-3 (mod 5). Strongly connected and
/// not symmetric (i-1 -> i has no reverse edge).
inline DiGraph tracking_topology() {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 5; ++i)
        for (int d = 1; d <= 3; ++d) edges.emplace_back((i - d + 5) % 5, i);
    return DiGraph(5, edges);
}

/// Undirected (symmetrized) variant of the tracking topology.
inline DiGraph tracking_topology_undirected() {
    std::vector<std::pair<int, int>> edges;
    DiGraph directed = tracking_topology();
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            if (i != j && (directed.has_edge(i, j) || directed.has_edge(j, i)))
                edges.emplace_back(i, j);
    return DiGraph(5, edges);
}

/// Planar target-tracking scenario: constant-velocity plant at T = 0.25,
/// position sensors 1, 2, 4 (unit noise) and velocity sensors 3, 5
/// (noise 5 I), distributed gains at the contraction bound, l = 10.
inline ScenarioConfig tracking_scenario() {
    ScenarioConfig cfg;
    cfg.plant = PlantModel::constant_velocity(0.25);
    Sensor pos{position_observation_matrix(), Matrix::Identity(2, 2)};
    Sensor vel{velocity_observation_matrix(), 5.0 * Matrix::Identity(2, 2)};
    cfg.sensors = {pos, pos, vel, pos, vel};
    cfg.graph = tracking_topology();
    cfg.policy = MuPolicy::Distributed;
    cfg.slack = 1.0;
    cfg.shift = 0.0;
    cfg.fusion_steps = 10;
    cfg.horizon = 200;
    cfg.trials = 1000;
    cfg.seed = 2025;
    cfg.x0 = Vector::Ones(4);
    cfg.P0 = 10.0 * Matrix::Identity(4, 4);
    return cfg;
}

}  // namespace comdf::test
