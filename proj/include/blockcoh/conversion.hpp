#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blockcoh/channels.hpp"

namespace blockcoh {

// Nonnegative entries summing to 1 (the squared block weights).
struct ProbabilityVector {
    explicit ProbabilityVector(std::vector<double> e);
    std::vector<double> entries;
};

// True iff p majorizes q: sorted-descending prefix sums of p dominate those
// of q at every cut. Vectors of unequal length are zero-padded.
bool majorizes(const ProbabilityVector& p, const ProbabilityVector& q);
bool majorizes_raw(std::vector<double> p, std::vector<double> q);

// Solves the cyclic completeness system
//   g_0 y_mu^2 + sum_{s>=1} g_s y_{mu-s}^2 = x_mu^2   (indices mod M)
// for g_s = gamma_s^2 >= 0.  Inputs must be sorted descending.
// Throws Infeasible when no nonnegative solution exists, SingularSystem when
// the system is degenerate and consistent but no nonnegative representative
// is found.
std::vector<double> solve_gammas(const ProbabilityVector& x, const ProbabilityVector& y);

// The channel carrying one pure block state to another, assembled from a
// block-diagonal transfer operator plus cyclic-shift Kraus families, with
// block-permutation isometries folding in the sort order and the components.
struct ConversionPlan {
    bool feasible = false;
    std::vector<int> sigma_x;  // slot -> source block, weights descending
    std::vector<int> sigma_y;  // slot -> target block
    std::vector<double> gammas_sq;          // g_s over active slots
    std::optional<KrausChannel> channel;
    std::vector<double> expected_overlaps;  // <target|K_a|source> per Kraus op
    std::string diagnostic;                 // set when infeasible
};

ConversionPlan build_conversion_channel(const PureBlockState& src, const PureBlockState& dst);

struct ConversionReport {
    double worst_kraus_deviation;  // max_a ||K_a src - c_a dst||
    double cptp_residual;
    bool block_incoherent;
    double fidelity;
};

// Re-derives the four defining properties of a feasible plan; throws
// VerificationFailed naming the clause that does not hold.
ConversionReport verify_conversion(const ConversionPlan& plan, const PureBlockState& src,
                                   const PureBlockState& dst);

// Data extracted from any block-incoherent channel carrying src to dst:
// per-Kraus overlaps, the induced doubly stochastic matrix, and the
// majorization chain pinning x^2 between B y^2 and y^2.
struct NecessityCertificate {
    std::vector<Cx> alphas;
    double alpha_norm_sq;
    RealMatrix B;                 // B(nu, mu) = sum of |alpha_a|^2 with a: nu -> mu
    std::vector<double> mixed;    // B * y^2
    bool chain_lower;             // x^2 majorized by B y^2
    bool chain_upper;             // B y^2 majorized by y^2
};

NecessityCertificate necessity_certificate(const KrausChannel& ch, const PureBlockState& src,
                                           const PureBlockState& dst);

}  // namespace blockcoh
