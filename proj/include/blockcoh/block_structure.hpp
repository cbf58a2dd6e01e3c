#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "blockcoh/errors.hpp"

namespace blockcoh {

using Cx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Global absolute tolerance for state/operator validity checks.
inline constexpr double kTol = 1e-9;

// A partition of the computational basis {0..d-1} into M ordered groups.
// Each group spans a subspace H_mu; groups need not be contiguous runs of
// indices (non-contiguous partitions appear when grouping by joint properties
// of subsystems, e.g. {|00>,|11>} vs {|01>,|10>}).
class BlockStructure {
public:
    BlockStructure(std::vector<std::vector<int>> groups, int dim);

    // M contiguous groups with the given sizes, covering 0..sum-1 in order.
    static BlockStructure contiguous(const std::vector<int>& dims);
    // d singleton groups: ordinary (rank-one) coherence.
    static BlockStructure singletons(int dim);

    int dim() const { return dim_; }
    int blocks() const { return static_cast<int>(groups_.size()); }
    const std::vector<std::vector<int>>& groups() const { return groups_; }
    const std::vector<int>& group(int mu) const { return groups_.at(mu); }
    int block_dim(int mu) const { return static_cast<int>(groups_.at(mu).size()); }
    std::vector<int> block_dims() const;

    // Block containing basis index i, and i's position within that group.
    int block_of(int index) const;
    int position_in_block(int index) const;

    // Orthogonal projector pi_mu onto group mu, as a dense d x d matrix.
    Matrix projector(int mu) const;

    // Tensor-product partition on this (x) anc: the M*M_anc blocks
    // (mu, alpha) ordered lexicographically; joint index i*anc.dim()+j.
    BlockStructure product(const BlockStructure& anc) const;

    bool operator==(const BlockStructure& o) const {
        return dim_ == o.dim_ && groups_ == o.groups_;
    }
    bool operator!=(const BlockStructure& o) const { return !(*this == o); }

private:
    std::vector<std::vector<int>> groups_;
    std::vector<int> block_of_;   // index -> group
    std::vector<int> pos_of_;     // index -> position within its group
    int dim_ = 0;
};

// --- block views of matrices (pure re-indexing) -----------------------------

// The d_mu x d_nu submatrix of A selected by group mu (rows) and nu (cols).
Matrix block_view(const Matrix& A, const BlockStructure& s, int mu, int nu);

// Write B into the (mu, nu) block of A (inverse of block_view).
void set_block(Matrix& A, const BlockStructure& s, int mu, int nu, const Matrix& B);

// Restriction of a length-d vector to group mu (length d_mu).
Vector restrict_to_block(const Vector& v, const BlockStructure& s, int mu);

// Embed a length-d_mu component into the full space at group mu.
Vector embed_in_block(const Vector& comp, const BlockStructure& s, int mu);

} // namespace blockcoh
