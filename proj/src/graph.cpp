#include "comdf/graph.hpp"

#include <cmath>
#include <string>

#include "comdf/errors.hpp"

namespace comdf {

DiGraph::DiGraph(int n) : n_(n), adjacency_(Eigen::MatrixXi::Zero(n, n)), in_neighbors_(n) {
    if (n < 1) fail(ErrorCode::InvalidArgument, "DiGraph: need at least one node");
}

DiGraph::DiGraph(int n, const std::vector<std::pair<int, int>>& edges) : DiGraph(n) {
    for (auto [from, to] : edges) {
        if (from < 0 || from >= n_ || to < 0 || to >= n_)
            fail(ErrorCode::InvalidArgument,
                 "DiGraph: edge (" + std::to_string(from) + "," + std::to_string(to) +
                     ") out of range for " + std::to_string(n_) + " nodes");
        if (from == to)
            fail(ErrorCode::InvalidArgument,
                 "DiGraph: self-loop at node " + std::to_string(from) + " not allowed");
        adjacency_(to, from) = 1;
    }
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (adjacency_(i, j)) in_neighbors_[i].push_back(j);
}

bool DiGraph::has_edge(int from, int to) const {
    return adjacency_(to, from) != 0;
}

bool DiGraph::operator==(const DiGraph& other) const {
    return n_ == other.n_ && (adjacency_.array() == other.adjacency_.array()).all();
}

int DiGraph::in_degree(int i) const {
    return static_cast<int>(in_neighbors_[i].size());
}

Matrix laplacian(const DiGraph& g) {
    const int n = g.node_count();
    Matrix lap = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        lap(i, i) = g.in_degree(i);
        for (int j : g.in_neighbors(i)) lap(i, j) -= 1.0;
    }
    return lap;
}

namespace {

// Nodes reachable from start, following edges forward (j -> i when a(i,j)=1)
// or backward.
std::vector<bool> reachable(const DiGraph& g, int start, bool forward) {
    const int n = g.node_count();
    std::vector<bool> seen(n, false);
    std::vector<int> stack{start};
    seen[start] = true;
    const auto& adj = g.adjacency();
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v = 0; v < n; ++v) {
            bool edge = forward ? adj(v, u) != 0 : adj(u, v) != 0;
            if (edge && !seen[v]) {
                seen[v] = true;
                stack.push_back(v);
            }
        }
    }
    return seen;
}

}  // namespace

bool is_strongly_connected(const DiGraph& g) {
    auto fwd = reachable(g, 0, true);
    auto bwd = reachable(g, 0, false);
    for (int i = 0; i < g.node_count(); ++i)
        if (!fwd[i] || !bwd[i]) return false;
    return true;
}

bool check_idd(const Matrix& m) {
    if (m.rows() != m.cols())
        fail(ErrorCode::InvalidArgument, "check_idd: matrix must be square");
    const Eigen::Index n = m.rows();

    // (a) irreducibility: the boolean pattern |m| > 0 with unit diagonal has
    // a fully positive transitive closure (Warshall).
    std::vector<std::vector<bool>> close(n, std::vector<bool>(n, false));
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            close[i][j] = (i == j) || m(i, j) != 0.0;
    for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                if (close[i][k] && close[k][j]) close[i][j] = true;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (!close[i][j]) return false;

    // (b) weak dominance everywhere, (c) strict somewhere.
    bool strict = false;
    for (Eigen::Index i = 0; i < n; ++i) {
        double off = m.row(i).cwiseAbs().sum() - std::abs(m(i, i));
        if (std::abs(m(i, i)) < off) return false;
        if (std::abs(m(i, i)) > off) strict = true;
    }
    return strict;
}

}  // namespace comdf
