#pragma once

#include <vector>

#include "comdf/consensus.hpp"
#include "comdf/filter.hpp"
#include "comdf/model.hpp"

namespace comdf {

/// Closed-loop matrices of the stacked estimation-error recursion
///   e_k = A_l e_{k-1} - B_l (1_N (x) w_{k-1}) + D_l (1_N (x) v_k)
/// at fusion depth l, alongside their centralized (l -> infinity)
/// counterparts:
///   A_l = I_N (x) (A - KCA) + (I_N (x) K) G^l (I_N (x) CA)
///   B_l = I_N (x) (I - KC) + (I_N (x) K) G^l (I_N (x) C)
///   D_l = (I_N (x) K) (I_{Nr} - G^l)
///   Phi_l = B_l (U_N (x) Q) B_l^T + D_l (U_N (x) R) D_l^T
struct ErrorSystem {
    Matrix A_l, B_l, D_l, Phi_l;         // Nn x Nn (D_l: Nn x Nr)
    Matrix A_cc, B_cc, D_cc, Phi_cc;     // centralized counterparts
    Matrix G_pow_l;                      // Nr x Nr
    long fusion_steps = 0;
    int N = 0, n = 0, r = 0;

    // Plant/suite data the downstream recursions need.
    Matrix Q, R, K, C, A;
};

ErrorSystem build_error_system(const PlantModel& plant, const SensorSuite& suite,
                               const GainDesign& gains, const ConsensusDesign& design, long l);

/// One covariance step P -> A_l P A_l^T + Phi_l, symmetrized.
Matrix propagate_covariance(const ErrorSystem& sys, const Matrix& P_prev);

/// Same step for the centralized recursion (A_cc, Phi_cc).
Matrix propagate_centralized(const ErrorSystem& sys, const Matrix& P_prev);

/// First and second moments of the stacked measurement-estimate error
/// eps^(l) = z^(l) - 1_N (x) y at one time step, given the covariance of the
/// previous stacked state error:
///   mean_map  = G^l (I_N (x) CA)              (applies to E{e_{k-1}})
///   cov       = G^l [ (I_N (x) CA) P (I_N (x) CA)^T
///                     + (I_N (x) C)(U_N (x) Q)(I_N (x) C)^T
///                     + U_N (x) R ] (G^l)^T
struct MeasurementErrorStats {
    Matrix mean_map;  // Nr x Nn
    Matrix cov;       // Nr x Nr
};

MeasurementErrorStats measurement_error_stats(const PlantModel& plant, const SensorSuite& suite,
                                              const ConsensusDesign& design,
                                              const Matrix& P_prev_state, long l);

/// Stationary covariances P_l = A_l P_l A_l^T + Phi_l and
/// P_cc = A_cc P_cc A_cc^T + Phi_cc. Requires both closed loops Schur
/// stable. Also cross-checks that P_cc carries the exact U_N (x) (n x n)
/// block structure of the replicated centralized error.
struct SteadyState {
    Matrix P_l;   // Nn x Nn
    Matrix P_cc;  // Nn x Nn
};

SteadyState steady_state(const ErrorSystem& sys);

/// One row of the fusion-depth sweep.
struct GapPoint {
    long l = 0;
    bool stable = false;       // rho(A_l) < 1; gap fields valid only if so
    double gap = 0.0;          // ||P_l - P_cc||_2
    double bound_radius = 0.0; // M1 * l^{Nr} * rho(G)^{l-Nr}
    double bound_norm = 0.0;   // M2 * ||G||_2^l (norm regime only)
    double series_rel_err = 0.0;  // truncated difference-series check
};

struct GapReport {
    std::vector<GapPoint> points;
    double rho_G = 0.0;
    double norm_G = 0.0;
    bool norm_regime = false;  // ||G||_2 < 1, so the norm-decay bound applies
    double M1 = 0.0;           // fitted max of gap / (l^{Nr} rho^{l-Nr})
    double M2 = 0.0;           // fitted max of gap / ||G||^l (norm regime)
    double log_slope = 0.0;    // least-squares slope of log gap vs l
};

/// Sweeps the stationary gap ||P_l - P_cc||_2 over fusion depths, fits the
/// decay constants, and validates each stable point against the truncated
/// series  sum_k A_cc^k Phibar(l) (A_cc^T)^k  built from the first-order
/// difference matrices (200 terms, 1e-8 relative).
GapReport gap_sweep(const PlantModel& plant, const SensorSuite& suite, const GainDesign& gains,
                    const ConsensusDesign& design, const std::vector<long>& l_range);

/// Truncated series evaluation of P_l - P_cc, exposed for direct testing.
Matrix difference_series(const ErrorSystem& sys, const Matrix& P_l, int terms = 200);

/// One row of the transient comparison between the depth-l recursion and the
/// centralized recursion started from the same P0.
struct TransientRow {
    long k = 0;
    double gap = 0.0;                   // ||P_k - P_cc,k||_2
    std::vector<double> sensor_traces;  // tr of each n x n diagonal block of P_k
    double central_trace = 0.0;         // tr of the first block of P_cc,k
};

std::vector<TransientRow> transient_compare(const PlantModel& plant, const SensorSuite& suite,
                                            const GainDesign& gains,
                                            const ConsensusDesign& design, long l, long horizon,
                                            const Matrix& P0);

}  // namespace comdf
