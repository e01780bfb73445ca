#pragma once

#include <vector>

#include "comdf/consensus.hpp"
#include "comdf/model.hpp"

namespace comdf {

/// Offline gain pair shared by all sensors: the stationary prediction
/// covariance P of the network-wide Riccati equation and the corresponding
/// gain K = P C^T (C P C^T + R)^{-1}.
struct GainDesign {
    Matrix P;  // n x n
    Matrix K;  // n x r
};

/// Solves the network DARE and forms K; asserts that the closed loop
/// A - KCA is Schur stable, which collective observability guarantees.
GainDesign design_gain(const PlantModel& plant, const Matrix& C, const Matrix& R);

/// Per-sensor posterior state estimates at one time step.
struct FilterBank {
    std::vector<Vector> estimates;  // N entries, n each
    long time = 0;
};

/// All sensors initialized with the same estimate.
FilterBank make_bank(int sensor_count, const Vector& initial_estimate);

/// Posterior estimate of the fixed-gain centralized filter.
struct CentralState {
    Vector estimate;
    long time = 0;
};

/// One plant + sensor suite + gain + fusion design, bundled so that the
/// per-step transitions are pure functions of (state, measurements).
class ComdfFilter {
public:
    ComdfFilter(PlantModel plant, SensorSuite suite, GainDesign gains, ConsensusDesign design);

    const PlantModel& plant() const { return plant_; }
    const SensorSuite& suite() const { return suite_; }
    const GainDesign& gains() const { return gains_; }
    const ConsensusDesign& design() const { return design_; }
    const Matrix& C() const { return aug_.C; }
    const Matrix& R() const { return aug_.R; }

    /// One distributed time step with l fusion rounds (l >= 1): for each
    /// sensor, predict, seed z_i^(0) = C x_pred_i, run the fusion rounds on
    /// the stacked z against the stacked measurements, then correct with the
    /// shared gain:
    ///   x_i <- x_pred_i + K (z_i^(l) - C x_pred_i).
    FilterBank step(const FilterBank& bank, const Vector& y_stacked, long fusion_steps) const;

    /// One centralized time step:
    ///   x_c <- A x_c + K (y - C A x_c).
    CentralState central_step(const CentralState& state, const Vector& y_stacked) const;

private:
    PlantModel plant_;
    SensorSuite suite_;
    GainDesign gains_;
    ConsensusDesign design_;
    Augmented aug_;
};

}  // namespace comdf
