#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "blockcoh/states.hpp"

namespace blockcoh {

// All set partitions of {0..d-1} with every part of size <= k, parts ordered
// by their minimum element.
struct RankBoundedStructureFamily {
    int d;
    int k;
    std::vector<BlockStructure> structures;
};

RankBoundedStructureFamily enumerate_structures(int d, int k);

// True iff rho equals its block-dephased image entrywise within 1e-9.
bool in_block_incoherent_set(const DensityMatrix& rho, const BlockStructure& s);

// Convex decomposition of a block-diagonal state into pure states whose
// amplitude support stays inside single blocks, hence has rank <= k.
struct CkCertificate {
    std::vector<double> weights;
    std::vector<Vector> states;
    double residual;
};

CkCertificate ck_certificate(const DensityMatrix& rho, const BlockStructure& s, int k);

// Desk-scale evidence for the conjectured identity between the union of the
// rank-bounded incoherent sets and the level-k coherent states. A probe, not
// a proof: it samples both directions and counts violations.
struct ProbeReport {
    int trials_membership = 0;   // sampled block-incoherent states certified
    int violations_membership = 0;
    int trials_support = 0;      // sampled low-rank pure states re-grouped
    int violations_support = 0;
    std::string summary;
};

ProbeReport conjecture_probe(int d, int k, int trials, std::uint64_t seed);

}  // namespace blockcoh
