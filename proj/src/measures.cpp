#include "blockcoh/measures.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

#include "blockcoh/errors.hpp"

namespace blockcoh {

double von_neumann_entropy(const Matrix& rho) {
    if (rho.rows() != rho.cols()) throw DimensionMismatch("entropy expects a square matrix");
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
    double h = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        double p = es.eigenvalues()(i);
        if (p < -1e-10) throw NotADensityMatrix("negative eigenvalue in entropy argument");
        if (p <= 0.0) continue;
        h -= p * std::log2(p);
    }
    return h;
}

double trace_norm(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues().sum();
}

double c_entropy_raw(const Matrix& rho, const BlockStructure& s) {
    return von_neumann_entropy(block_dephase_raw(rho, s)) - von_neumann_entropy(rho);
}

double c_l1_raw(const Matrix& rho, const BlockStructure& s) {
    double total = 0.0;
    for (int mu = 0; mu < s.blocks(); ++mu)
        for (int nu = 0; nu < s.blocks(); ++nu) {
            if (mu == nu) continue;
            total += trace_norm(block_view(rho, s, mu, nu));
        }
    return total;
}

double c_entropy(const DensityMatrix& rho, const BlockStructure& s) {
    if (rho.dim() != s.dim()) throw DimensionMismatch("state and block structure disagree");
    return c_entropy_raw(rho.matrix(), s);
}

double c_l1(const DensityMatrix& rho, const BlockStructure& s) {
    if (rho.dim() != s.dim()) throw DimensionMismatch("state and block structure disagree");
    return c_l1_raw(rho.matrix(), s);
}

int coherence_rank(const Vector& psi, double tol) {
    int r = 0;
    for (int i = 0; i < psi.size(); ++i)
        if (std::abs(psi(i)) > tol) ++r;
    return r;
}

CoherenceReport coherence_report(const DensityMatrix& rho, const BlockStructure& s) {
    return {c_entropy(rho, s), c_l1(rho, s), s};
}

}  // namespace blockcoh
