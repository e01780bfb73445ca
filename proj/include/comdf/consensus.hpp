#pragma once

#include <vector>

#include "comdf/graph.hpp"
#include "comdf/linalg.hpp"

namespace comdf {

/// Per-pair consensus gains: mu(i, j) scales sensor i's correction of its
/// estimate of sensor j's measurement. All entries must be positive.
struct MuTable {
    Matrix mu;  // N x N

    int size() const { return static_cast<int>(mu.rows()); }
    void validate(int n_nodes) const;
};

/// Row-local gain choice mu(i,j) = slack / (l_ii + a_ij + shift).
///
/// Any slack in (0,1] and shift >= 0 keeps every gain inside the bound
/// mu(i,j) <= 1/(l_ii + a_ij) that guarantees rho(G) < 1 on a strongly
/// connected digraph. The defaults (slack=1, shift=1) give the strictly
/// interior choice 1/(l_ii + a_ij + 1); slack=1, shift=0 sits exactly on
/// the bound, which trades slower own-channel rows for faster mixing.
MuTable design_mu_distributed(const DiGraph& g, double slack = 1.0, double shift = 1.0);

/// Uniform gain mu = 0.99 / rho(L (x) I_r + B), a strict-inequality margin
/// below the bound mu < 1/rho(L (x) I_r + B). Needs the global topology;
/// rejects the degenerate single-sensor network.
double design_mu_unified(const DiGraph& g, const std::vector<int>& r_list);

/// All gains equal; used to lift the unified scalar into a MuTable.
MuTable uniform_mu(int n_nodes, double mu);

/// Fusion machinery for one (graph, block sizes, gain table) triple:
/// the block matrices Lambda and B, the iteration matrix
///   G = I_{Nr} - Lambda (L (x) I_r + B),
/// its spectral radius / norm, and the synchronous fusion rounds.
class ConsensusDesign {
public:
    ConsensusDesign(DiGraph g, std::vector<int> r_list, MuTable mu,
                    bool anchor_own_measurement = false);

    const DiGraph& graph() const { return graph_; }
    const std::vector<int>& block_dims() const { return r_list_; }
    const MuTable& mu() const { return mu_; }
    int sensor_count() const { return graph_.node_count(); }
    int block_total() const { return r_; }              // r
    int stacked_dim() const { return stacked_dim_; }    // N * r

    const Matrix& Lambda() const { return Lambda_; }
    const Matrix& B() const { return B_; }
    const Matrix& G() const { return G_; }
    double rho_G() const { return rho_G_; }
    double norm_G() const { return norm_G_; }
    bool anchor_own_measurement() const { return anchor_own_; }

    /// Runs `steps` synchronous fusion rounds on the stacked vector z
    /// (layout: sensor-major, r entries per sensor) against the stacked
    /// measurement vector y (r entries):
    ///   z_i <- z_i - Lambda_i [ sum_j a_ij (z_i - z_j) + B_i (z_i - y) ].
    /// Each round reads only the previous iterate, sensor i touching only
    /// its in-neighbors' blocks and the measurement channels it anchors, so
    /// the loop maps one-to-one onto message-passing rounds. Equivalent to
    /// propagating the error by G^steps.
    Vector fuse(const Vector& z0, const Vector& y, long steps) const;

private:
    DiGraph graph_;
    std::vector<int> r_list_;
    std::vector<int> offsets_;
    MuTable mu_;
    int r_ = 0;
    int stacked_dim_ = 0;
    bool anchor_own_ = false;
    Matrix Lambda_, B_, G_;
    double rho_G_ = 0.0, norm_G_ = 0.0;
};

/// Fusion-step threshold of the covariance-boundedness guarantee:
///   l0 = log_{||G||_2} [ (1 - ||A - KCA||_2) / (||K||_2 ||CA||_2) ].
/// Any integer l > l0 makes the closed-loop matrix of the error recursion
/// Schur stable. Returned as a real; a negative value means every l >= 1
/// works. Requires ||G||_2 < 1 and ||A - KCA||_2 < 1.
double min_fusion_steps(const ConsensusDesign& design, const Matrix& K, const Matrix& C,
                        const Matrix& A);

}  // namespace comdf
