#include "comdf/filter.hpp"

#include <string>
#include <utility>

#include "comdf/errors.hpp"

namespace comdf {

GainDesign design_gain(const PlantModel& plant, const Matrix& C, const Matrix& R) {
    plant.validate();
    if (!check_observability(C, plant.A))
        fail(ErrorCode::Infeasible,
             "design_gain: the stacked pair (C, A) is not observable");
    Matrix P = solve_dare(plant.A, C, plant.Q, R);
    Matrix S = C * P * C.transpose() + R;
    Matrix K = S.ldlt().solve(C * P).transpose();  // P C^T S^{-1}
    double rho = spectral_radius(plant.A - K * C * plant.A);
    if (rho >= 1.0)
        fail(ErrorCode::Numeric,
             "design_gain: closed loop A - KCA is not Schur stable (rho = " +
                 std::to_string(rho) + "); observability assumptions look broken");
    return {P, K};
}

FilterBank make_bank(int sensor_count, const Vector& initial_estimate) {
    FilterBank bank;
    bank.estimates.assign(sensor_count, initial_estimate);
    return bank;
}

ComdfFilter::ComdfFilter(PlantModel plant, SensorSuite suite, GainDesign gains,
                         ConsensusDesign design)
    : plant_(std::move(plant)), suite_(std::move(suite)), gains_(std::move(gains)),
      design_(std::move(design)), aug_(augment(suite_)) {
    if (design_.sensor_count() != suite_.count())
        fail(ErrorCode::InvalidArgument,
             "ComdfFilter: consensus design and sensor suite disagree on N");
    if (design_.block_dims() != suite_.dims())
        fail(ErrorCode::InvalidArgument,
             "ComdfFilter: consensus block sizes must equal the sensor dimensions");
    if (gains_.K.rows() != plant_.state_dim() || gains_.K.cols() != suite_.total_dim())
        fail(ErrorCode::InvalidArgument, "ComdfFilter: gain K has wrong shape");
}

FilterBank ComdfFilter::step(const FilterBank& bank, const Vector& y_stacked,
                             long fusion_steps) const {
    const int N = suite_.count();
    const int r = suite_.total_dim();
    if (static_cast<int>(bank.estimates.size()) != N)
        fail(ErrorCode::InvalidArgument, "ComdfFilter::step: bank has wrong sensor count");
    if (y_stacked.size() != r)
        fail(ErrorCode::InvalidArgument, "ComdfFilter::step: measurement vector has wrong size");
    if (fusion_steps < 1)
        fail(ErrorCode::InvalidArgument, "ComdfFilter::step: need at least one fusion round");

    // Predict, then seed each sensor's measurement estimate from its own
    // prediction; z is re-seeded fresh every time step.
    std::vector<Vector> predicted(N);
    Vector z0(N * r);
    for (int i = 0; i < N; ++i) {
        predicted[i] = plant_.A * bank.estimates[i];
        z0.segment(i * r, r) = aug_.C * predicted[i];
    }

    Vector z = design_.fuse(z0, y_stacked, fusion_steps);

    FilterBank next;
    next.time = bank.time + 1;
    next.estimates.resize(N);
    for (int i = 0; i < N; ++i) {
        next.estimates[i] =
            predicted[i] + gains_.K * (z.segment(i * r, r) - aug_.C * predicted[i]);
        if (!next.estimates[i].allFinite())
            fail(ErrorCode::Numeric, "ComdfFilter::step: estimate diverged to non-finite values");
    }
    return next;
}

CentralState ComdfFilter::central_step(const CentralState& state, const Vector& y_stacked) const {
    if (y_stacked.size() != suite_.total_dim())
        fail(ErrorCode::InvalidArgument,
             "ComdfFilter::central_step: measurement vector has wrong size");
    Vector predicted = plant_.A * state.estimate;
    CentralState next;
    next.time = state.time + 1;
    next.estimate = predicted + gains_.K * (y_stacked - aug_.C * predicted);
    if (!next.estimate.allFinite())
        fail(ErrorCode::Numeric, "ComdfFilter::central_step: estimate diverged");
    return next;
}

}  // namespace comdf
