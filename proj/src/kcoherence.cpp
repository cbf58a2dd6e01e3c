#include "blockcoh/kcoherence.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <numeric>

#include "blockcoh/measures.hpp"
#include "blockcoh/random.hpp"

namespace blockcoh {

namespace {

void collect_partitions(int next, int d, int k, std::vector<std::vector<int>>& parts,
                        std::vector<BlockStructure>& out) {
    if (next == d) {
        out.emplace_back(parts, d);
        return;
    }
    // Index, not iterate: the recursive call grows and shrinks `parts`, which
    // can reallocate and would invalidate a range-for reference.
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (static_cast<int>(parts[i].size()) >= k) continue;
        parts[i].push_back(next);
        collect_partitions(next + 1, d, k, parts, out);
        parts[i].pop_back();
    }
    parts.push_back({next});
    collect_partitions(next + 1, d, k, parts, out);
    parts.pop_back();
}

}  // namespace

RankBoundedStructureFamily enumerate_structures(int d, int k) {
    if (d < 1 || d > 8 || k < 1 || k > d)
        throw TooLarge("structure enumeration supports 1 <= k <= d <= 8");
    RankBoundedStructureFamily fam{d, k, {}};
    std::vector<std::vector<int>> parts;
    collect_partitions(0, d, k, parts, fam.structures);
    return fam;
}

bool in_block_incoherent_set(const DensityMatrix& rho, const BlockStructure& s) {
    if (rho.dim() != s.dim()) throw DimensionMismatch("state and structure disagree");
    Matrix diff = rho.matrix() - block_dephase_raw(rho.matrix(), s);
    return diff.cwiseAbs().maxCoeff() <= kTol;
}

CkCertificate ck_certificate(const DensityMatrix& rho, const BlockStructure& s, int k) {
    if (!in_block_incoherent_set(rho, s))
        throw NotBlockIncoherent("state has matrix elements between blocks");
    for (int mu = 0; mu < s.blocks(); ++mu)
        if (s.block_dim(mu) > k)
            throw RankBoundExceeded("a block exceeds the requested rank bound");

    // Diagonalizing block by block keeps every eigenvector inside one block,
    // which a degenerate full-matrix diagonalization would not guarantee.
    CkCertificate cert{{}, {}, 0.0};
    for (int mu = 0; mu < s.blocks(); ++mu) {
        Matrix blk = block_view(rho.matrix(), s, mu, mu);
        Eigen::SelfAdjointEigenSolver<Matrix> es(blk);
        for (int i = 0; i < es.eigenvalues().size(); ++i) {
            const double w = es.eigenvalues()(i);
            if (w <= 1e-12) continue;
            cert.weights.push_back(w);
            cert.states.push_back(embed_in_block(es.eigenvectors().col(i), s, mu));
        }
    }
    Matrix rebuilt = Matrix::Zero(rho.dim(), rho.dim());
    for (std::size_t i = 0; i < cert.weights.size(); ++i)
        rebuilt += cert.weights[i] * (cert.states[i] * cert.states[i].adjoint());
    cert.residual = (rebuilt - rho.matrix()).cwiseAbs().maxCoeff();
    return cert;
}

ProbeReport conjecture_probe(int d, int k, int trials, std::uint64_t seed) {
    if (d < 1 || d > 4 || k < 1 || k > d)
        throw TooLarge("probe supports 1 <= k <= d <= 4");
    auto fam = enumerate_structures(d, k);
    Rng rng(seed);
    ProbeReport rep;

    // Membership direction: random states built inside a rank-bounded
    // structure must admit a certificate with low-rank pieces.
    for (int t = 0; t < trials; ++t) {
        const auto& s =
            fam.structures[rng.uniform_int(0, static_cast<int>(fam.structures.size()) - 1)];
        std::vector<double> p = rng.simplex(s.blocks());
        Matrix rho = Matrix::Zero(d, d);
        for (int mu = 0; mu < s.blocks(); ++mu) {
            Matrix blk = rng.density(s.block_dim(mu));
            set_block(rho, s, mu, mu, p[mu] * blk);
        }
        DensityMatrix dm(rho);
        ++rep.trials_membership;
        try {
            auto cert = ck_certificate(dm, s, k);
            bool ok = cert.residual <= 1e-8;
            for (const Vector& v : cert.states)
                if (coherence_rank(v) > k) ok = false;
            if (!ok) ++rep.violations_membership;
        } catch (const Error&) {
            ++rep.violations_membership;
        }
    }

    // Support direction: a pure state with at most k nonzero amplitudes is
    // block-incoherent for the structure grouping exactly its support.
    for (int t = 0; t < trials; ++t) {
        const int r = rng.uniform_int(1, k);
        std::vector<int> idx(d);
        std::iota(idx.begin(), idx.end(), 0);
        for (int i = 0; i < r; ++i) std::swap(idx[i], idx[i + rng.uniform_int(0, d - i - 1)]);
        Vector psi = Vector::Zero(d);
        for (int i = 0; i < r; ++i) {
            Cx z = rng.cgaussian();
            while (std::abs(z) < 1e-3) z = rng.cgaussian();
            psi(idx[i]) = z;
        }
        psi /= psi.norm();

        std::vector<std::vector<int>> groups;
        std::vector<int> support(idx.begin(), idx.begin() + r);
        std::sort(support.begin(), support.end());
        groups.push_back(support);
        for (int i = 0; i < d; ++i)
            if (std::find(support.begin(), support.end(), i) == support.end())
                groups.push_back({i});
        BlockStructure s(groups, d);

        ++rep.trials_support;
        if (coherence_rank(psi) > k || !in_block_incoherent_set(DensityMatrix::pure(psi), s))
            ++rep.violations_support;
    }

    rep.summary = "probe only (not a proof): " + std::to_string(rep.violations_membership) + "/" +
                  std::to_string(rep.trials_membership) + " membership violations, " +
                  std::to_string(rep.violations_support) + "/" +
                  std::to_string(rep.trials_support) + " support violations over " +
                  std::to_string(fam.structures.size()) + " structures";
    return rep;
}

}  // namespace blockcoh
