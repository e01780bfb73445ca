#pragma once

#include <utility>
#include <vector>

#include "comdf/linalg.hpp"

namespace comdf {

/// Directed sensor-network topology over nodes 0..N-1.
///
/// The adjacency convention follows the usual consensus one: a(i,j) = 1
/// means node j transmits to node i, so j is an in-neighbor of i. Edges are
/// unweighted and self-loops are not allowed. Immutable after construction.
class DiGraph {
public:
    /// Graph with n nodes and no edges.
    explicit DiGraph(int n);

    /// Graph from a list of (from, to) pairs, 0-based.
    DiGraph(int n, const std::vector<std::pair<int, int>>& edges);

    int node_count() const { return n_; }

    /// a(to, from)
    bool has_edge(int from, int to) const;

    /// |N_i|: number of in-neighbors of node i.
    int in_degree(int i) const;

    /// Nodes that transmit to node i, ascending.
    const std::vector<int>& in_neighbors(int i) const { return in_neighbors_[i]; }

    /// a(i, j) as a dense 0/1 matrix.
    const Eigen::MatrixXi& adjacency() const { return adjacency_; }

    bool operator==(const DiGraph& other) const;

private:
    int n_;
    Eigen::MatrixXi adjacency_;
    std::vector<std::vector<int>> in_neighbors_;
};

/// Laplacian L = D - S with D = diag(|N_1|, ..., |N_N|). Every row sums to
/// zero exactly (integer arithmetic widened to double).
Matrix laplacian(const DiGraph& g);

/// True iff every ordered pair of nodes is joined by a directed path.
/// Checked by forward and reverse reachability from node 0.
bool is_strongly_connected(const DiGraph& g);

/// Irreducible diagonal dominance:
///   (a) the sparsity pattern of m is irreducible,
///   (b) |m_ii| >= sum_{j != i} |m_ij| for every row,
///   (c) the inequality is strict for at least one row.
/// Irreducibility is tested via boolean transitive closure of the pattern.
bool check_idd(const Matrix& m);

}  // namespace comdf
