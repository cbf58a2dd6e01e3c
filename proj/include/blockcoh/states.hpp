#pragma once

#include <optional>
#include <vector>

#include "blockcoh/block_structure.hpp"

namespace blockcoh {

// A pure state together with its block decomposition
//   |Psi> = sum_mu x_mu |mu>|psi_mu>,  x_mu >= 0,  sum x_mu^2 = 1.
// Components of zero-weight blocks are deliberately left as zero vectors;
// consumers must consult weights before using them.
struct PureBlockState {
    Vector amplitudes;               // length d, unit norm
    BlockStructure structure;
    std::vector<double> weights;     // x_mu, restriction norms
    std::vector<Vector> components;  // psi_mu (unit, length d_mu) where x_mu > 0

    int dim() const { return static_cast<int>(amplitudes.size()); }
    int blocks() const { return structure.blocks(); }
};

PureBlockState decompose(const Vector& state, const BlockStructure& s);

// Validated density matrix: Hermitian, unit trace, eigenvalues >= -kTol.
class DensityMatrix {
public:
    explicit DensityMatrix(Matrix rho);
    static DensityMatrix pure(const Vector& psi);

    const Matrix& matrix() const { return rho_; }
    int dim() const { return static_cast<int>(rho_.rows()); }

private:
    Matrix rho_;
};

// rho* = sum_mu pi_mu rho pi_mu: zero every cross-block element.
Matrix block_dephase_raw(const Matrix& rho, const BlockStructure& s);
DensityMatrix block_dephase(const DensityMatrix& rho, const BlockStructure& s);

// Equal-weight superposition over the blocks, weights 1/sqrt(M).
// Default components are the uniform in-block superpositions phi_mu;
// callers may substitute their own unit components.
PureBlockState maximally_coherent_state(const BlockStructure& s,
                                        const std::optional<std::vector<Vector>>& components =
                                            std::nullopt);

// Uniform in-block superposition phi_mu (length d_mu).
Vector uniform_component(const BlockStructure& s, int mu);

} // namespace blockcoh
