#include "comdf/model.hpp"

#include <Eigen/Eigenvalues>
#include <string>
#include <utility>

#include "comdf/errors.hpp"

namespace comdf {

void PlantModel::validate() const {
    if (A.rows() < 1 || A.rows() != A.cols())
        fail(ErrorCode::InvalidArgument, "PlantModel: A must be square and nonempty");
    if (Q.rows() != A.rows() || Q.cols() != A.cols())
        fail(ErrorCode::InvalidArgument, "PlantModel: Q must match the state dimension");
    if (!is_finite(A) || !is_finite(Q))
        fail(ErrorCode::InvalidArgument, "PlantModel: entries must be finite");
    Eigen::SelfAdjointEigenSolver<Matrix> eig(symmetrize(Q));
    if (eig.eigenvalues().minCoeff() < -1e-12)
        fail(ErrorCode::InvalidArgument, "PlantModel: Q is not positive semidefinite");
}

PlantModel PlantModel::constant_velocity(double T) {
    if (!(T > 0.0)) fail(ErrorCode::InvalidArgument, "constant_velocity: T must be positive");
    Matrix A = Matrix::Identity(4, 4);
    A(0, 2) = T;
    A(1, 3) = T;
    Matrix qbar(2, 2);
    qbar << T * T * T / 3.0, T * T / 2.0, T * T / 2.0, T;
    Matrix Q(4, 4);
    Q.topLeftCorner(2, 2) = qbar;
    Q.topRightCorner(2, 2) = 0.5 * qbar;
    Q.bottomLeftCorner(2, 2) = 0.5 * qbar;
    Q.bottomRightCorner(2, 2) = qbar;
    return {A, Q};
}

SensorSuite::SensorSuite(std::vector<Sensor> sensors) : sensors_(std::move(sensors)) {
    if (sensors_.empty())
        fail(ErrorCode::InvalidArgument, "SensorSuite: need at least one sensor");
    const Eigen::Index n = sensors_[0].C.cols();
    for (std::size_t i = 0; i < sensors_.size(); ++i) {
        const Sensor& s = sensors_[i];
        const std::string tag = "sensor " + std::to_string(i + 1);
        if (s.C.rows() < 1)
            fail(ErrorCode::InvalidArgument, "SensorSuite: " + tag + " has empty C");
        if (s.C.cols() != n)
            fail(ErrorCode::InvalidArgument,
                 "SensorSuite: " + tag + " observes a different state dimension");
        if (s.R.rows() != s.C.rows() || s.R.cols() != s.C.rows())
            fail(ErrorCode::InvalidArgument,
                 "SensorSuite: " + tag + " noise covariance size does not match C");
        if (!is_finite(s.C) || !is_finite(s.R))
            fail(ErrorCode::InvalidArgument, "SensorSuite: " + tag + " has non-finite entries");
        Eigen::SelfAdjointEigenSolver<Matrix> eig(symmetrize(s.R));
        if (eig.eigenvalues().minCoeff() <= 0.0)
            fail(ErrorCode::InvalidArgument,
                 "SensorSuite: " + tag + " noise covariance is not positive definite");
        dims_.push_back(static_cast<int>(s.C.rows()));
        offsets_.push_back(total_dim_);
        total_dim_ += dims_.back();
    }
}

Augmented augment(const SensorSuite& suite) {
    const int r = suite.total_dim();
    const int n = suite.state_dim();
    Matrix C = Matrix::Zero(r, n);
    Matrix R = Matrix::Zero(r, r);
    for (int i = 0; i < suite.count(); ++i) {
        const int o = suite.offset(i);
        const int ri = suite.dims()[i];
        C.middleRows(o, ri) = suite.sensor(i).C;
        R.block(o, o, ri, ri) = suite.sensor(i).R;
    }
    return {C, R};
}

bool check_observability(const Matrix& C, const Matrix& A) {
    if (C.cols() != A.rows() || A.rows() != A.cols())
        fail(ErrorCode::InvalidArgument, "check_observability: dimension mismatch");
    const Eigen::Index n = A.rows();
    Matrix stacked(C.rows() * n, n);
    Matrix power = Matrix::Identity(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        stacked.middleRows(i * C.rows(), C.rows()) = C * power;
        power = power * A;
    }
    Eigen::JacobiSVD<Matrix> svd(stacked);
    const auto& sv = svd.singularValues();
    if (sv.size() < n) return false;
    return sv(n - 1) > 1e-9 * sv(0);
}

Matrix position_observation_matrix() {
    Matrix C = Matrix::Zero(2, 4);
    C(0, 0) = 1.0;
    C(1, 1) = 1.0;
    return C;
}

Matrix velocity_observation_matrix() {
    Matrix C = Matrix::Zero(2, 4);
    C(0, 2) = 1.0;
    C(1, 3) = 1.0;
    return C;
}

}  // namespace comdf
