#pragma once

#include <functional>
#include <string>
#include <vector>

#include "blockcoh/channels.hpp"
#include "blockcoh/random.hpp"

namespace blockcoh {

struct AscentOptions {
    int restarts = 32;
    int max_iters = 500;
    double tol = 1e-10;
    std::uint64_t seed = kDefaultSeed;
};

struct PowerResult {
    double value = 0.0;
    int block_index = -1;                  // argmax block (cohering); -1 otherwise
    std::vector<Vector> optimizer_states;  // component vector(s) at the optimum
    std::string method;                    // "closed_form" or "optimized"
    int restarts = 0;
    double best_second_gap = 0.0;  // best minus second-best restart value
};

struct AscentOutcome {
    double value;
    std::vector<Vector> point;
    double gap;
};

// Multi-start projected ascent of f over a product of complex unit spheres
// with the given dimensions. Deterministic for a fixed seed; finite-difference
// gradients, adaptive step, renormalization after every move.
AscentOutcome maximize_on_spheres(const std::function<double(const std::vector<Vector>&)>& f,
                                  const std::vector<int>& dims, const AscentOptions& opts);

// Largest l1 block coherence the channel can generate from a pure state
// confined to a single block.
PowerResult bcp(const KrausChannel& ch, const BlockStructure& s, const AscentOptions& opts = {});

// Same quantity for a unitary, via the per-column norm objective
// (sum_mu ||A_{mu nu} psi||)^2 - 1 instead of a full channel application.
PowerResult bcp_unitary(const BlockOperator& u, const AscentOptions& opts = {});

// Mixture sum_i p_i (U_i (x) V_i) rho (U_i (x) V_i)' on H_M (x) H_N; the
// objective contracts to trace norms of the N x N cross operators.
struct MixtureTerm {
    double p;
    Matrix u;  // M x M unitary
    Matrix v;  // N x N unitary
};

PowerResult bcp_random_unitary(const std::vector<MixtureTerm>& terms, const BlockStructure& s,
                               const AscentOptions& opts = {});

// Largest coherence loss over maximally coherent inputs: (M-1) minus the
// smallest output coherence over the component spheres.
PowerResult bdp(const KrausChannel& ch, const BlockStructure& s, const AscentOptions& opts = {});

// Unitary case via chi_alpha = sum_mu A_{alpha mu} psi_mu:
// M - (1/M) min (sum_alpha ||chi_alpha||)^2.
PowerResult bdp_unitary(const BlockOperator& u, const AscentOptions& opts = {});

}  // namespace blockcoh
