#include "blockcoh/states.hpp"

#include <cmath>
#include <string>

namespace blockcoh {

PureBlockState decompose(const Vector& state, const BlockStructure& s) {
    if (state.size() != s.dim())
        throw DimensionMismatch("state length " + std::to_string(state.size()) + " vs d=" +
                                std::to_string(s.dim()));
    const double n = state.norm();
    if (std::abs(n - 1.0) > kTol)
        throw NotNormalized("state norm is " + std::to_string(n));

    PureBlockState out{state, s, {}, {}};
    out.weights.reserve(s.blocks());
    out.components.reserve(s.blocks());
    for (int mu = 0; mu < s.blocks(); ++mu) {
        Vector r = restrict_to_block(state, s, mu);
        const double w = r.norm();
        out.weights.push_back(w);
        out.components.push_back(w > 0.0 ? Vector(r / w) : Vector(Vector::Zero(r.size())));
    }
    return out;
}

DensityMatrix::DensityMatrix(Matrix rho) : rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols())
        throw NotADensityMatrix("matrix is not square");
    const double herm = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kTol)
        throw NotADensityMatrix("Hermiticity residual " + std::to_string(herm));
    const double tr = std::abs(rho_.trace().real() - 1.0) + std::abs(rho_.trace().imag());
    if (tr > kTol)
        throw NotADensityMatrix("trace deviates from 1 by " + std::to_string(tr));
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho_ + rho_.adjoint()),
                                             Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    if (lmin < -kTol)
        throw NotADensityMatrix("negative eigenvalue " + std::to_string(lmin));
}

DensityMatrix DensityMatrix::pure(const Vector& psi) {
    const double n = psi.norm();
    if (std::abs(n - 1.0) > kTol)
        throw NotNormalized("state norm is " + std::to_string(n));
    return DensityMatrix(psi * psi.adjoint());
}

Matrix block_dephase_raw(const Matrix& rho, const BlockStructure& s) {
    if (rho.rows() != s.dim() || rho.cols() != s.dim())
        throw DimensionMismatch("matrix is " + std::to_string(rho.rows()) + "x" +
                                std::to_string(rho.cols()) + " vs d=" + std::to_string(s.dim()));
    Matrix out = Matrix::Zero(rho.rows(), rho.cols());
    for (int mu = 0; mu < s.blocks(); ++mu)
        set_block(out, s, mu, mu, block_view(rho, s, mu, mu));
    return out;
}

DensityMatrix block_dephase(const DensityMatrix& rho, const BlockStructure& s) {
    return DensityMatrix(block_dephase_raw(rho.matrix(), s));
}

Vector uniform_component(const BlockStructure& s, int mu) {
    const int d = s.block_dim(mu);
    return Vector::Constant(d, Cx(1.0 / std::sqrt(static_cast<double>(d)), 0.0));
}

PureBlockState maximally_coherent_state(const BlockStructure& s,
                                        const std::optional<std::vector<Vector>>& components) {
    const int m = s.blocks();
    std::vector<Vector> comps;
    if (components) {
        if (static_cast<int>(components->size()) != m)
            throw DimensionMismatch("expected " + std::to_string(m) + " components, got " +
                                    std::to_string(components->size()));
        for (int mu = 0; mu < m; ++mu) {
            const Vector& c = (*components)[mu];
            if (c.size() != s.block_dim(mu))
                throw DimensionMismatch("component " + std::to_string(mu) + " has length " +
                                        std::to_string(c.size()) + ", block dim is " +
                                        std::to_string(s.block_dim(mu)));
            if (std::abs(c.norm() - 1.0) > kTol)
                throw NotNormalized("component " + std::to_string(mu) + " is not unit");
            comps.push_back(c);
        }
    } else {
        for (int mu = 0; mu < m; ++mu) comps.push_back(uniform_component(s, mu));
    }

    const double w = 1.0 / std::sqrt(static_cast<double>(m));
    Vector amps = Vector::Zero(s.dim());
    for (int mu = 0; mu < m; ++mu) amps += w * embed_in_block(comps[mu], s, mu);
    return decompose(amps, s);
}

} // namespace blockcoh
