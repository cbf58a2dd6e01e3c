#pragma once

#include "blockcoh/states.hpp"

namespace blockcoh {

// Entropy in bits. Eigenvalues below -1e-10 are rejected; small negatives
// from roundoff are clamped to zero.
double von_neumann_entropy(const Matrix& rho);

// Sum of singular values.
double trace_norm(const Matrix& a);

// Relative entropy of block coherence: S(dephased rho) - S(rho).
double c_entropy(const DensityMatrix& rho, const BlockStructure& s);

// l1-type measure: sum of trace norms of all off-diagonal blocks.
double c_l1(const DensityMatrix& rho, const BlockStructure& s);

// Raw-matrix variants used by the optimizers (no density-matrix checks).
double c_entropy_raw(const Matrix& rho, const BlockStructure& s);
double c_l1_raw(const Matrix& rho, const BlockStructure& s);

// Number of amplitudes with modulus above tol.
int coherence_rank(const Vector& psi, double tol = 1e-9);

struct CoherenceReport {
    double c_entropy;
    double c_l1;
    BlockStructure structure;
};

CoherenceReport coherence_report(const DensityMatrix& rho, const BlockStructure& s);

}  // namespace blockcoh
