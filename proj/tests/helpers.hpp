#pragma once

// Shared generators for the test suites. Everything is driven by the
// deterministic Rng so failures reproduce exactly.

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "blockcoh/channels.hpp"
#include "blockcoh/conversion.hpp"
#include "blockcoh/random.hpp"
#include "blockcoh/states.hpp"

namespace blockcoh {
namespace testutil {

// Random structure with M blocks of dimensions in [1, max_dim].
inline BlockStructure random_structure(Rng& rng, int blocks, int max_dim) {
    std::vector<int> dims;
    for (int i = 0; i < blocks; ++i) dims.push_back(rng.uniform_int(1, max_dim));
    return BlockStructure::contiguous(dims);
}

// Random pure state on the structure with every block weight nonzero.
inline PureBlockState random_pure_state(Rng& rng, const BlockStructure& s) {
    Vector v = rng.unit_vector(s.dim());
    return decompose(v, s);
}

// Block-diagonal density matrix: random block states, random block weights.
inline DensityMatrix random_block_incoherent_state(Rng& rng, const BlockStructure& s) {
    std::vector<double> p = rng.simplex(s.blocks());
    Matrix rho = Matrix::Zero(s.dim(), s.dim());
    for (int mu = 0; mu < s.blocks(); ++mu)
        set_block(rho, s, mu, mu, p[mu] * rng.density(s.block_dim(mu)));
    return DensityMatrix(rho);
}

// Block-diagonal unitary, one Haar factor per block.
inline Matrix random_block_diagonal_unitary(Rng& rng, const BlockStructure& s) {
    Matrix u = Matrix::Zero(s.dim(), s.dim());
    for (int mu = 0; mu < s.blocks(); ++mu)
        set_block(u, s, mu, mu, rng.haar_unitary(s.block_dim(mu)));
    return u;
}

// Random channel whose every Kraus operator feeds one block row per block
// column. Each operator uses an injective (permutation) block map so the
// completeness sum stays block-diagonal; right-multiplying by its inverse
// square root then normalizes without mixing block columns. The first
// operator keeps the identity map so every diagonal factor is invertible.
inline KrausChannel random_block_incoherent_channel(Rng& rng, const BlockStructure& s,
                                                    int n_ops) {
    const int d = s.dim();
    const int m = s.blocks();
    std::vector<Matrix> kraus;
    for (int a = 0; a < n_ops; ++a) {
        std::vector<int> perm(m);
        for (int i = 0; i < m; ++i) perm[i] = i;
        if (a > 0)
            for (int i = m - 1; i > 0; --i) std::swap(perm[i], perm[rng.uniform_int(0, i)]);
        Matrix k = Matrix::Zero(d, d);
        for (int nu = 0; nu < m; ++nu)
            set_block(k, s, perm[nu], nu, rng.ginibre(s.block_dim(perm[nu]), s.block_dim(nu)));
        kraus.push_back(std::move(k));
    }
    Matrix sum = Matrix::Zero(d, d);
    for (const Matrix& k : kraus) sum += k.adjoint() * k;
    Matrix isqrt = Matrix::Zero(d, d);
    for (int nu = 0; nu < m; ++nu) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(block_view(sum, s, nu, nu));
        set_block(isqrt, s, nu, nu, es.operatorInverseSqrt());
    }
    for (Matrix& k : kraus) k = k * isqrt;
    return KrausChannel(std::move(kraus), s);
}

// Weight pair (x^2, y^2), both sorted descending, for which the cyclic
// completeness system provably has a nonnegative solution: draw gammas on
// the simplex and push them through the system in the forward direction.
inline std::pair<std::vector<double>, std::vector<double>> random_feasible_weights(Rng& rng,
                                                                                   int m) {
    for (;;) {
        std::vector<double> y2 = rng.simplex(m);
        std::sort(y2.begin(), y2.end(), std::greater<>());
        std::vector<double> g = rng.simplex(m);
        std::vector<double> x2(m, 0.0);
        for (int mu = 0; mu < m; ++mu)
            for (int t = 0; t < m; ++t) x2[mu] += g[t] * y2[(mu - t + m) % m];
        bool sorted = true;
        for (int i = 0; i + 1 < m; ++i)
            if (x2[i] < x2[i + 1]) sorted = false;
        if (sorted) return {x2, y2};
    }
}

// Pure state with prescribed block weights and random components.
inline PureBlockState state_with_weights(Rng& rng, const BlockStructure& s,
                                         const std::vector<double>& w2) {
    Vector v = Vector::Zero(s.dim());
    for (int mu = 0; mu < s.blocks(); ++mu) {
        if (w2[mu] <= 0.0) continue;
        Vector comp = rng.unit_vector(s.block_dim(mu));
        v += std::sqrt(w2[mu]) * embed_in_block(comp, s, mu);
    }
    v /= v.norm();
    return decompose(v, s);
}

}  // namespace testutil
}  // namespace blockcoh
