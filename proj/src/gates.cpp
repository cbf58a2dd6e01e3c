#include "blockcoh/gates.hpp"

namespace blockcoh {

GateProtocol build_gate_protocol(const BlockOperator& u) {
    if (unitarity_residual(u.matrix) > kTol)
        throw NotUnitary("gate protocol requires a unitary target");
    const BlockStructure& s = u.structure;
    const int M = s.blocks();
    const int d = s.dim();
    BlockStructure joint = s.product(s);
    const int D = d * d;

    // Cached ancilla-side rank-one factors |phi_beta><phi_beta| embedded.
    std::vector<Vector> phi(M);
    for (int beta = 0; beta < M; ++beta)
        phi[beta] = embed_in_block(uniform_component(s, beta), s, beta);

    std::vector<Matrix> kraus;
    kraus.reserve(M + 1);
    Matrix q = Matrix::Zero(d, d);  // sum of ancilla projectors onto the phi's
    for (int beta = 0; beta < M; ++beta) q += phi[beta] * phi[beta].adjoint();

    for (int shift = 0; shift < M; ++shift) {
        Matrix k = Matrix::Zero(D, D);
        for (int mu = 0; mu < M; ++mu) {
            const int src = (mu + shift) % M;
            // system part: block column nu -> row mu with A_{mu nu};
            // ancilla part: |phi_shift><phi_src|.
            Matrix anc = phi[shift] * phi[src].adjoint();
            for (int nu = 0; nu < M; ++nu) {
                Matrix a = u.block(mu, nu);
                const auto& rows = s.group(mu);
                const auto& cols = s.group(nu);
                for (std::size_t r = 0; r < rows.size(); ++r)
                    for (std::size_t c = 0; c < cols.size(); ++c) {
                        const Cx w = a(static_cast<int>(r), static_cast<int>(c));
                        if (w == Cx(0.0, 0.0)) continue;
                        for (int i = 0; i < d; ++i)
                            for (int j = 0; j < d; ++j) {
                                const Cx v = anc(i, j);
                                if (v == Cx(0.0, 0.0)) continue;
                                k(rows[r] * d + i, cols[c] * d + j) += w * v;
                            }
                    }
            }
        }
        kraus.push_back(std::move(k));
    }

    // The shift operators resolve the identity only on the span of the
    // phi's; one block-diagonal operator absorbs the ancilla slack.
    Matrix slack = Matrix::Identity(d, d) - q;
    if (slack.cwiseAbs().maxCoeff() > kTol) {
        Matrix k = Matrix::Zero(D, D);
        for (int i = 0; i < d; ++i)
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) {
                    const Cx v = slack(a, b);
                    if (v == Cx(0.0, 0.0)) continue;
                    k(i * d + a, i * d + b) = v;
                }
        kraus.push_back(std::move(k));
    }

    return {u, s, joint, KrausChannel(std::move(kraus), joint)};
}

std::pair<DensityMatrix, DensityMatrix> run_gate_protocol(const GateProtocol& p,
                                                          const PureBlockState& psi) {
    const BlockStructure& s = p.target.structure;
    if (psi.structure != s) throw DimensionMismatch("input state is not on the gate's structure");
    const int d = s.dim();

    PureBlockState mc = maximally_coherent_state(p.ancilla);
    Vector xi(d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) xi(i * d + j) = psi.amplitudes(i) * mc.amplitudes(j);

    Matrix out = apply_raw(p.channel, xi * xi.adjoint());
    out = ((out + out.adjoint()) / 2.0).eval();
    Matrix sys = partial_trace_second(out, d, d);
    Matrix anc = partial_trace_first(out, d, d);
    return {DensityMatrix(((sys + sys.adjoint()) / 2.0).eval()),
            DensityMatrix(((anc + anc.adjoint()) / 2.0).eval())};
}

}  // namespace blockcoh
