#include "comdf/consensus.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "comdf/errors.hpp"

namespace comdf {

void MuTable::validate(int n_nodes) const {
    if (mu.rows() != n_nodes || mu.cols() != n_nodes)
        fail(ErrorCode::InvalidArgument,
             "MuTable: expected " + std::to_string(n_nodes) + "x" + std::to_string(n_nodes) +
                 " gains, got " + std::to_string(mu.rows()) + "x" + std::to_string(mu.cols()));
    if (!is_finite(mu) || (mu.array() <= 0.0).any())
        fail(ErrorCode::InvalidArgument, "MuTable: all consensus gains must be positive");
}

MuTable design_mu_distributed(const DiGraph& g, double slack, double shift) {
    if (!(slack > 0.0 && slack <= 1.0))
        fail(ErrorCode::InvalidArgument, "design_mu_distributed: slack must be in (0, 1]");
    if (!(shift >= 0.0))
        fail(ErrorCode::InvalidArgument, "design_mu_distributed: shift must be nonnegative");
    if (!is_strongly_connected(g))
        fail(ErrorCode::Infeasible,
             "design_mu_distributed: communication graph is not strongly connected");
    const int n = g.node_count();
    MuTable table{Matrix(n, n)};
    for (int i = 0; i < n; ++i) {
        const double lii = g.in_degree(i);
        for (int j = 0; j < n; ++j) {
            const double aij = g.has_edge(j, i) ? 1.0 : 0.0;
            const double denom = lii + aij + shift;
            if (denom <= 0.0)
                fail(ErrorCode::Infeasible,
                     "design_mu_distributed: zero denominator at node " + std::to_string(i + 1) +
                         " (isolated single node)");
            table.mu(i, j) = slack / denom;
        }
    }
    return table;
}

namespace {

// L (x) I_r + B for the given block sizes.
Matrix leader_following_matrix(const DiGraph& g, const std::vector<int>& r_list) {
    const int n = g.node_count();
    std::vector<int> offsets(n);
    int r = 0;
    for (int i = 0; i < n; ++i) {
        offsets[i] = r;
        r += r_list[i];
    }
    Matrix LB = kron(laplacian(g), Matrix::Identity(r, r));
    for (int i = 0; i < n; ++i)
        for (int j : g.in_neighbors(i)) {
            const int at = i * r + offsets[j];
            for (int t = 0; t < r_list[j]; ++t) LB(at + t, at + t) += 1.0;
        }
    return LB;
}

}  // namespace

double design_mu_unified(const DiGraph& g, const std::vector<int>& r_list) {
    if (g.node_count() < 2)
        fail(ErrorCode::Infeasible,
             "design_mu_unified: degenerate single-sensor network (L and B vanish)");
    if (!is_strongly_connected(g))
        fail(ErrorCode::Infeasible,
             "design_mu_unified: communication graph is not strongly connected");
    if (static_cast<int>(r_list.size()) != g.node_count())
        fail(ErrorCode::InvalidArgument, "design_mu_unified: one dimension per sensor required");
    double rho = spectral_radius(leader_following_matrix(g, r_list));
    if (rho <= 0.0)
        fail(ErrorCode::Infeasible, "design_mu_unified: L (x) I_r + B has zero spectral radius");
    return 0.99 / rho;
}

MuTable uniform_mu(int n_nodes, double mu) {
    return {Matrix::Constant(n_nodes, n_nodes, mu)};
}

ConsensusDesign::ConsensusDesign(DiGraph g, std::vector<int> r_list, MuTable mu,
                                 bool anchor_own_measurement)
    : graph_(std::move(g)), r_list_(std::move(r_list)), mu_(std::move(mu)),
      anchor_own_(anchor_own_measurement) {
    const int n = graph_.node_count();
    if (static_cast<int>(r_list_.size()) != n)
        fail(ErrorCode::InvalidArgument,
             "ConsensusDesign: need one measurement dimension per sensor");
    for (int ri : r_list_)
        if (ri < 1) fail(ErrorCode::InvalidArgument, "ConsensusDesign: measurement dims must be >= 1");
    mu_.validate(n);

    offsets_.resize(n);
    r_ = 0;
    for (int i = 0; i < n; ++i) {
        offsets_[i] = r_;
        r_ += r_list_[i];
    }
    stacked_dim_ = n * r_;

    // Lambda_i = diag(mu_i1 I_{r_1}, ..., mu_iN I_{r_N}), B_i likewise with
    // the adjacency entries; both stacked block-diagonally.
    Lambda_ = Matrix::Zero(stacked_dim_, stacked_dim_);
    B_ = Matrix::Zero(stacked_dim_, stacked_dim_);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const int at = i * r_ + offsets_[j];
            for (int t = 0; t < r_list_[j]; ++t) {
                Lambda_(at + t, at + t) = mu_.mu(i, j);
                B_(at + t, at + t) = graph_.has_edge(j, i) ? 1.0 : 0.0;
            }
        }
    }
    Matrix LB = kron(laplacian(graph_), Matrix::Identity(r_, r_)) + B_;
    G_ = Matrix::Identity(stacked_dim_, stacked_dim_) - Lambda_ * LB;
    rho_G_ = spectral_radius(G_);
    norm_G_ = spectral_norm(G_);
}

Vector ConsensusDesign::fuse(const Vector& z0, const Vector& y, long steps) const {
    if (z0.size() != stacked_dim_)
        fail(ErrorCode::InvalidArgument, "fuse: z has wrong stacked dimension");
    if (y.size() != r_)
        fail(ErrorCode::InvalidArgument, "fuse: y has wrong dimension");
    if (steps < 0) fail(ErrorCode::InvalidArgument, "fuse: negative step count");

    const int n = graph_.node_count();
    Vector z = z0;
    Vector next(stacked_dim_);
    for (long step = 0; step < steps; ++step) {
        for (int i = 0; i < n; ++i) {
            auto zi = z.segment(i * r_, r_);
            Vector bracket = Vector::Zero(r_);
            for (int j : graph_.in_neighbors(i)) bracket += zi - z.segment(j * r_, r_);
            for (int c : graph_.in_neighbors(i)) {
                // B_i anchors channel c on the true measurement y_c.
                bracket.segment(offsets_[c], r_list_[c]) +=
                    zi.segment(offsets_[c], r_list_[c]) - y.segment(offsets_[c], r_list_[c]);
            }
            auto out = next.segment(i * r_, r_);
            out = zi;
            for (int c = 0; c < n; ++c)
                out.segment(offsets_[c], r_list_[c]) -=
                    mu_.mu(i, c) * bracket.segment(offsets_[c], r_list_[c]);
            if (anchor_own_)
                out.segment(offsets_[i], r_list_[i]) = y.segment(offsets_[i], r_list_[i]);
        }
        z = next;
    }
    return z;
}

double min_fusion_steps(const ConsensusDesign& design, const Matrix& K, const Matrix& C,
                        const Matrix& A) {
    if (design.norm_G() >= 1.0)
        fail(ErrorCode::Infeasible,
             "min_fusion_steps: spectral norm condition violated (||G||_2 = " +
                 std::to_string(design.norm_G()) + " >= 1)");
    const double closed_loop = spectral_norm(A - K * C * A);
    if (closed_loop >= 1.0)
        fail(ErrorCode::Infeasible,
             "min_fusion_steps: no stability margin (||A - KCA||_2 = " +
                 std::to_string(closed_loop) + " >= 1)");
    const double arg = (1.0 - closed_loop) / (spectral_norm(K) * spectral_norm(C * A));
    return std::log(arg) / std::log(design.norm_G());
}

}  // namespace comdf
