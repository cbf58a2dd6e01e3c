#include "blockcoh/random.hpp"

#include <cmath>

namespace blockcoh {

double Rng::uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

Cx Rng::cgaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return Cx(re, im) / std::sqrt(2.0);
}

int Rng::uniform_int(int lo, int hi) {
    const int span = hi - lo + 1;
    int v = lo + static_cast<int>(uniform() * span);
    return v > hi ? hi : v;
}

Vector Rng::unit_vector(int d) {
    Vector v(d);
    for (int i = 0; i < d; ++i) v(i) = cgaussian();
    const double n = v.norm();
    return n > 0 ? Vector(v / n) : unit_vector(d);
}

std::vector<double> Rng::simplex(int n) {
    std::vector<double> w(n);
    double tot = 0.0;
    for (double& x : w) {
        double u = uniform();
        while (u <= 0.0) u = uniform();
        x = -std::log(u);
        tot += x;
    }
    for (double& x : w) x /= tot;
    return w;
}

Matrix Rng::ginibre(int rows, int cols) {
    Matrix g(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) g(i, j) = cgaussian();
    return g;
}

Matrix Rng::haar_unitary(int n) {
    const Matrix g = ginibre(n, n);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the gauge: make the R diagonal positive so Q is Haar-distributed.
    for (int j = 0; j < n; ++j) {
        const Cx d = r(j, j);
        const double m = std::abs(d);
        q.col(j) *= (m > 0 ? d / m : Cx(1, 0));
    }
    return q;
}

Matrix Rng::density(int d) {
    const Matrix g = ginibre(d, d);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return 0.5 * (rho + rho.adjoint());
}

} // namespace blockcoh
