#include "comdf/analysis.hpp"

#include <cmath>
#include <string>

#include "comdf/errors.hpp"

namespace comdf {

ErrorSystem build_error_system(const PlantModel& plant, const SensorSuite& suite,
                               const GainDesign& gains, const ConsensusDesign& design, long l) {
    if (l < 0) fail(ErrorCode::InvalidArgument, "build_error_system: negative fusion depth");
    if (design.sensor_count() != suite.count() || design.block_dims() != suite.dims())
        fail(ErrorCode::InvalidArgument,
             "build_error_system: consensus design does not match the sensor suite");

    ErrorSystem sys;
    sys.N = suite.count();
    sys.n = plant.state_dim();
    sys.r = suite.total_dim();
    sys.fusion_steps = l;
    sys.Q = plant.Q;
    sys.A = plant.A;
    sys.K = gains.K;
    Augmented aug = augment(suite);
    sys.C = aug.C;
    sys.R = aug.R;

    const Matrix I_N = Matrix::Identity(sys.N, sys.N);
    const Matrix U_N = Matrix::Ones(sys.N, sys.N);
    const Matrix AKCA = plant.A - gains.K * aug.C * plant.A;
    const Matrix IKC = Matrix::Identity(sys.n, sys.n) - gains.K * aug.C;

    sys.G_pow_l = matrix_power(design.G(), l);
    const Matrix IK = kron(I_N, gains.K);
    const Matrix ICA = kron(I_N, Matrix(aug.C * plant.A));
    const Matrix IC = kron(I_N, aug.C);

    // B_l carries a plus on the G^l term: substituting the fused measurement
    // error into the update gives the process-noise coefficient
    //   -[ I_N (x) (I-KC) + (I_N (x) K) G^l (I_N (x) C) ],
    // and the l = 0 case must collapse to pure prediction (B_0 = I).
    sys.A_l = kron(I_N, AKCA) + IK * sys.G_pow_l * ICA;
    sys.B_l = kron(I_N, IKC) + IK * sys.G_pow_l * IC;
    sys.D_l = IK * (Matrix::Identity(sys.N * sys.r, sys.N * sys.r) - sys.G_pow_l);

    sys.A_cc = kron(I_N, AKCA);
    sys.B_cc = kron(I_N, IKC);
    sys.D_cc = IK;

    const Matrix UQ = kron(U_N, plant.Q);
    const Matrix UR = kron(U_N, aug.R);
    sys.Phi_l = symmetrize(sys.B_l * UQ * sys.B_l.transpose() +
                           sys.D_l * UR * sys.D_l.transpose());
    sys.Phi_cc = symmetrize(sys.B_cc * UQ * sys.B_cc.transpose() +
                            sys.D_cc * UR * sys.D_cc.transpose());
    return sys;
}

Matrix propagate_covariance(const ErrorSystem& sys, const Matrix& P_prev) {
    return symmetrize(sys.A_l * P_prev * sys.A_l.transpose() + sys.Phi_l);
}

Matrix propagate_centralized(const ErrorSystem& sys, const Matrix& P_prev) {
    return symmetrize(sys.A_cc * P_prev * sys.A_cc.transpose() + sys.Phi_cc);
}

MeasurementErrorStats measurement_error_stats(const PlantModel& plant, const SensorSuite& suite,
                                              const ConsensusDesign& design,
                                              const Matrix& P_prev_state, long l) {
    const int N = suite.count();
    const int n = plant.state_dim();
    if (P_prev_state.rows() != N * n || P_prev_state.cols() != N * n)
        fail(ErrorCode::InvalidArgument,
             "measurement_error_stats: previous state covariance must be Nn x Nn");

    Augmented aug = augment(suite);
    const Matrix I_N = Matrix::Identity(N, N);
    const Matrix U_N = Matrix::Ones(N, N);
    const Matrix Gl = matrix_power(design.G(), l);
    const Matrix ICA = kron(I_N, Matrix(aug.C * plant.A));
    const Matrix IC = kron(I_N, aug.C);

    MeasurementErrorStats stats;
    stats.mean_map = Gl * ICA;
    Matrix inner = ICA * P_prev_state * ICA.transpose() +
                   IC * kron(U_N, plant.Q) * IC.transpose() + kron(U_N, aug.R);
    stats.cov = symmetrize(Gl * inner * Gl.transpose());
    return stats;
}

SteadyState steady_state(const ErrorSystem& sys) {
    double rho_l = spectral_radius(sys.A_l);
    if (rho_l >= 1.0)
        fail(ErrorCode::Infeasible,
             "steady_state: closed loop at this fusion depth is unstable (rho = " +
                 std::to_string(rho_l) + ")");
    SteadyState out;
    out.P_l = solve_dle(sys.A_l, sys.Phi_l);
    out.P_cc = solve_dle(sys.A_cc, sys.Phi_cc);

    // The centralized stacked error is 1_N (x) e_c, so P_cc must equal
    // U_N (x) X where X solves the n x n centralized equation.
    const Matrix AKCA = sys.A - sys.K * sys.C * sys.A;
    const Matrix IKC = Matrix::Identity(sys.n, sys.n) - sys.K * sys.C;
    Matrix phi_c = symmetrize(IKC * sys.Q * IKC.transpose() +
                              sys.K * sys.R * sys.K.transpose());
    Matrix X = solve_dle(AKCA, phi_c);
    double block_err = spectral_norm(out.P_cc - kron(Matrix::Ones(sys.N, sys.N), X));
    if (block_err > 1e-9 * (1.0 + spectral_norm(out.P_cc)))
        fail(ErrorCode::Numeric,
             "steady_state: P_cc lost its replicated block structure (deviation " +
                 std::to_string(block_err) + ")");
    return out;
}

Matrix difference_series(const ErrorSystem& sys, const Matrix& P_l, int terms) {
    // First-order differences between the depth-l and centralized systems.
    const Matrix A_bar = sys.A_l - sys.A_cc;
    const Matrix B_bar = sys.B_l - sys.B_cc;
    const Matrix D_bar = sys.D_l - sys.D_cc;
    const Matrix U_N = Matrix::Ones(sys.N, sys.N);
    const Matrix UQ = kron(U_N, sys.Q);
    const Matrix UR = kron(U_N, sys.R);

    Matrix phi_bar = A_bar * P_l * sys.A_cc.transpose() + sys.A_cc * P_l * A_bar.transpose() +
                     A_bar * P_l * A_bar.transpose() +
                     B_bar * UQ * sys.B_cc.transpose() + sys.B_cc * UQ * B_bar.transpose() +
                     B_bar * UQ * B_bar.transpose() +
                     D_bar * UR * sys.D_cc.transpose() + sys.D_cc * UR * D_bar.transpose() +
                     D_bar * UR * D_bar.transpose();
    phi_bar = symmetrize(phi_bar);

    Matrix sum = Matrix::Zero(phi_bar.rows(), phi_bar.cols());
    Matrix term = phi_bar;
    for (int k = 0; k <= terms; ++k) {
        sum += term;
        if (k < terms) term = sys.A_cc * term * sys.A_cc.transpose();
    }

    // Guard the truncation: the dropped tail is bounded by
    // ||A_cc^{terms+1}||^2 ||phi_bar|| / (1 - rho(A_cc)^2).
    double tail_factor = spectral_norm(matrix_power(sys.A_cc, terms + 1));
    double rho_cc = spectral_radius(sys.A_cc);
    double tail = tail_factor * tail_factor * spectral_norm(phi_bar) /
                  std::max(1.0 - rho_cc * rho_cc, 1e-8);
    if (tail > 1e-10 * (1.0 + spectral_norm(sum)))
        fail(ErrorCode::Numeric,
             "difference_series: truncation tail too large (" + std::to_string(tail) + ")");
    return symmetrize(sum);
}

GapReport gap_sweep(const PlantModel& plant, const SensorSuite& suite, const GainDesign& gains,
                    const ConsensusDesign& design, const std::vector<long>& l_range) {
    GapReport report;
    report.rho_G = design.rho_G();
    report.norm_G = design.norm_G();
    report.norm_regime = design.norm_G() < 1.0;

    const int Nr = design.stacked_dim();
    Matrix P_cc;
    bool have_pcc = false;

    for (long l : l_range) {
        ErrorSystem sys = build_error_system(plant, suite, gains, design, l);
        GapPoint point;
        point.l = l;
        point.stable = spectral_radius(sys.A_l) < 1.0;
        if (point.stable) {
            if (!have_pcc) {
                P_cc = solve_dle(sys.A_cc, sys.Phi_cc);
                have_pcc = true;
            }
            Matrix P_l = solve_dle(sys.A_l, sys.Phi_l);
            Matrix diff = P_l - P_cc;
            point.gap = spectral_norm(diff);

            Matrix series = difference_series(sys, P_l);
            point.series_rel_err =
                spectral_norm(series - diff) / std::max(point.gap, 1e-300);
            if (point.series_rel_err > 1e-8)
                fail(ErrorCode::Numeric,
                     "gap_sweep: difference-series identity violated at l = " +
                         std::to_string(l) + " (relative error " +
                         std::to_string(point.series_rel_err) + ")");
        }
        report.points.push_back(point);
    }

    // Fit the existential constants as max ratios over the stable points,
    // then a least-squares slope of log gap vs l as the falsifiable decay
    // summary.
    double sum_l = 0, sum_ll = 0, sum_y = 0, sum_ly = 0;
    long fitted = 0;
    for (GapPoint& point : report.points) {
        if (!point.stable || point.gap <= 0.0) continue;
        double radius_decay =
            std::pow(static_cast<double>(point.l), Nr) *
            std::pow(report.rho_G, static_cast<double>(point.l - Nr));
        report.M1 = std::max(report.M1, point.gap / radius_decay);
        if (report.norm_regime)
            report.M2 = std::max(report.M2,
                                 point.gap / std::pow(report.norm_G,
                                                      static_cast<double>(point.l)));
        double y = std::log(point.gap);
        sum_l += point.l;
        sum_ll += static_cast<double>(point.l) * point.l;
        sum_y += y;
        sum_ly += point.l * y;
        ++fitted;
    }
    for (GapPoint& point : report.points) {
        if (!point.stable) continue;
        point.bound_radius = report.M1 *
                             std::pow(static_cast<double>(point.l), Nr) *
                             std::pow(report.rho_G, static_cast<double>(point.l - Nr));
        if (report.norm_regime)
            point.bound_norm =
                report.M2 * std::pow(report.norm_G, static_cast<double>(point.l));
    }
    if (fitted >= 2) {
        double denom = fitted * sum_ll - sum_l * sum_l;
        report.log_slope = (fitted * sum_ly - sum_l * sum_y) / denom;
    }
    return report;
}

std::vector<TransientRow> transient_compare(const PlantModel& plant, const SensorSuite& suite,
                                            const GainDesign& gains,
                                            const ConsensusDesign& design, long l, long horizon,
                                            const Matrix& P0) {
    ErrorSystem sys = build_error_system(plant, suite, gains, design, l);
    const int Nn = sys.N * sys.n;
    if (P0.rows() != Nn || P0.cols() != Nn)
        fail(ErrorCode::InvalidArgument, "transient_compare: P0 must be Nn x Nn");

    std::vector<TransientRow> rows;
    Matrix P = symmetrize(P0);
    Matrix P_cc = P;
    for (long k = 1; k <= horizon; ++k) {
        P = propagate_covariance(sys, P);
        P_cc = propagate_centralized(sys, P_cc);
        TransientRow row;
        row.k = k;
        row.gap = spectral_norm(P - P_cc);
        for (int i = 0; i < sys.N; ++i)
            row.sensor_traces.push_back(P.block(i * sys.n, i * sys.n, sys.n, sys.n).trace());
        row.central_trace = P_cc.topLeftCorner(sys.n, sys.n).trace();
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace comdf
