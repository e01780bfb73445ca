#pragma once

#include <vector>

#include "comdf/linalg.hpp"

namespace comdf {

/// Linear plant x_{k+1} = A x_k + w_k with process noise covariance Q.
struct PlantModel {
    Matrix A;
    Matrix Q;

    int state_dim() const { return static_cast<int>(A.rows()); }

    /// Checks A square, Q symmetric PSD (min eigenvalue >= -1e-12 after
    /// symmetrization) and matching sizes; throws on violation.
    void validate() const;

    /// Planar constant-velocity target with state [px, py, vx, vy],
    /// sampling interval T:
    ///   A = [I2, T*I2; 0, I2],
    ///   Qbar = [T^3/3, T^2/2; T^2/2, T],  Q = [Qbar, Qbar/2; Qbar/2, Qbar].
    static PlantModel constant_velocity(double T);
};

/// One observation channel y_i = C_i x + v_i with noise covariance R_i.
struct Sensor {
    Matrix C;
    Matrix R;
};

/// Ordered collection of sensors observing a common plant. Immutable after
/// construction; each R_i is required to be symmetric positive definite and
/// all C_i must share the state dimension.
class SensorSuite {
public:
    explicit SensorSuite(std::vector<Sensor> sensors);

    int count() const { return static_cast<int>(sensors_.size()); }
    int state_dim() const { return static_cast<int>(sensors_.front().C.cols()); }
    int total_dim() const { return total_dim_; }  // r = sum r_i
    const Sensor& sensor(int i) const { return sensors_[i]; }

    /// Measurement dimensions r_i, in sensor order.
    const std::vector<int>& dims() const { return dims_; }
    /// Offset of sensor i's block inside the stacked r-vector.
    int offset(int i) const { return offsets_[i]; }

private:
    std::vector<Sensor> sensors_;
    std::vector<int> dims_;
    std::vector<int> offsets_;
    int total_dim_ = 0;
};

/// Stacked observation matrix C = [C_1; ...; C_N] and block-diagonal noise
/// covariance R = diag(R_1, ..., R_N).
struct Augmented {
    Matrix C;  // r x n
    Matrix R;  // r x r
};

Augmented augment(const SensorSuite& suite);

/// Rank test of [C; CA; ...; CA^{n-1}]: full column rank judged by singular
/// values above 1e-9 * sigma_max.
bool check_observability(const Matrix& C, const Matrix& A);

/// The two sensor kinds of the constant-velocity scenario: a position sensor
/// reads [px, py], a velocity sensor reads [vx, vy].
Matrix position_observation_matrix();
Matrix velocity_observation_matrix();

}  // namespace comdf
