#pragma once

#include <vector>

#include "blockcoh/operators.hpp"
#include "blockcoh/states.hpp"

namespace blockcoh {

// A CPTP map given by its Kraus operators. Construction checks dimensional
// consistency only; completeness is a separate query (validate_cptp) so that
// candidate sets can be inspected before use.
struct KrausChannel {
    KrausChannel(std::vector<Matrix> ops, BlockStructure s);
    KrausChannel(std::vector<Matrix> ops, BlockStructure in_s, BlockStructure out_s);

    int dim_in() const { return in_structure.dim(); }
    int dim_out() const { return out_structure.dim(); }

    std::vector<Matrix> kraus;
    BlockStructure in_structure;
    BlockStructure out_structure;
};

struct CptpReport {
    bool ok;
    double residual;  // max-entry norm of sum K†K - I
};

CptpReport validate_cptp(const KrausChannel& ch);

// Sum K rho K† without validity checks; used by optimizers on hot paths.
Matrix apply_raw(const KrausChannel& ch, const Matrix& rho);

// Checked application: channel must be CPTP, output is re-validated.
// Accumulation is symmetrized so the result is Hermitian exactly.
DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho);

// Outcome of the structural test for block-incoherent operations: every
// Kraus operator may touch at most one block row per block column.
struct IncoherenceVerdict {
    bool is_block_incoherent;
    // kraus_maps[a][nu] = block row fed by block column nu in operator a,
    // or -1 when that column is entirely zero.
    std::vector<std::vector<int>> kraus_maps;
    // First offending (operator, block column) when not incoherent.
    int violating_kraus = -1;
    int violating_column = -1;
};

IncoherenceVerdict classify_block_incoherent(const KrausChannel& ch);

// Kraus set {pi_mu}; applying it equals block_dephase.
KrausChannel block_dephasing_channel(const BlockStructure& s);

// Single-Kraus channel rho -> U rho U†.
KrausChannel unitary_channel(const BlockOperator& u);

// Checks E(dephase(rho)) == dephase(E(rho)) on the full matrix-unit basis
// (exact by linearity) plus `samples` seeded random density matrices.
bool is_dephasing_covariant(const KrausChannel& ch, const BlockStructure& s, int samples);

}  // namespace blockcoh
