#include "blockcoh/conversion.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

namespace blockcoh {

namespace {

constexpr double kZero = 1e-12;  // weights at or below this count as exactly zero

Vector uniform_vec(int d) { return Vector::Constant(d, Cx(1.0 / std::sqrt(double(d)), 0.0)); }

// Unitary whose first column is the given unit vector.
Matrix complete_basis(const Vector& v) {
    Eigen::HouseholderQR<Matrix> qr(v);
    Matrix q = qr.householderQ();
    q.col(0) = v;  // qr yields v up to a unit-modulus factor; pin it exactly
    return q;
}

// Small-scale Lawson-Hanson nonnegative least squares.
RealVector nnls(const RealMatrix& A, const RealVector& b) {
    const int n = static_cast<int>(A.cols());
    RealVector x = RealVector::Zero(n);
    std::vector<bool> passive(n, false);
    RealVector w = A.transpose() * (b - A * x);
    const double tol = 1e-12 * std::max(1.0, b.cwiseAbs().maxCoeff());
    for (int outer = 0; outer < 3 * n + 10; ++outer) {
        int j = -1;
        double best = tol;
        for (int i = 0; i < n; ++i)
            if (!passive[i] && w(i) > best) {
                best = w(i);
                j = i;
            }
        if (j < 0) break;
        passive[j] = true;
        for (int inner = 0; inner < 3 * n + 10; ++inner) {
            std::vector<int> idx;
            for (int i = 0; i < n; ++i)
                if (passive[i]) idx.push_back(i);
            RealMatrix Ap(A.rows(), idx.size());
            for (std::size_t c = 0; c < idx.size(); ++c) Ap.col(c) = A.col(idx[c]);
            RealVector z = Ap.completeOrthogonalDecomposition().solve(b);
            bool all_pos = true;
            for (int c = 0; c < z.size(); ++c)
                if (z(c) <= 0.0) all_pos = false;
            if (all_pos) {
                x.setZero();
                for (std::size_t c = 0; c < idx.size(); ++c) x(idx[c]) = z(c);
                break;
            }
            double alpha = 1.0;
            for (std::size_t c = 0; c < idx.size(); ++c)
                if (z(c) <= 0.0) alpha = std::min(alpha, x(idx[c]) / (x(idx[c]) - z(c)));
            for (std::size_t c = 0; c < idx.size(); ++c)
                x(idx[c]) += alpha * (z(c) - x(idx[c]));
            for (int i = 0; i < n; ++i)
                if (passive[i] && x(i) <= 1e-14) passive[i] = false;
        }
        w = A.transpose() * (b - A * x);
    }
    return x;
}

std::vector<int> argsort_desc(const std::vector<double>& v) {
    std::vector<int> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return v[a] > v[b]; });
    return idx;
}

bool next_tuple(std::vector<int>& t, const std::vector<int>& dims) {
    for (int i = static_cast<int>(t.size()) - 1; i >= 0; --i) {
        if (++t[i] < dims[i]) return true;
        t[i] = 0;
    }
    return false;
}

}  // namespace

ProbabilityVector::ProbabilityVector(std::vector<double> e) : entries(std::move(e)) {
    double sum = 0.0;
    for (double& p : entries) {
        if (std::isnan(p) || p < -kTol) throw NotNormalized("probability entries must be >= 0");
        if (p < 0.0) p = 0.0;
        sum += p;
    }
    if (std::abs(sum - 1.0) > kTol) throw NotNormalized("probabilities must sum to 1");
}

bool majorizes_raw(std::vector<double> p, std::vector<double> q) {
    const std::size_t n = std::max(p.size(), q.size());
    p.resize(n, 0.0);
    q.resize(n, 0.0);
    std::sort(p.begin(), p.end(), std::greater<>());
    std::sort(q.begin(), q.end(), std::greater<>());
    double pp = 0.0, qq = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        pp += p[k];
        qq += q[k];
        if (pp < qq - kTol) return false;
    }
    return true;
}

bool majorizes(const ProbabilityVector& p, const ProbabilityVector& q) {
    return majorizes_raw(p.entries, q.entries);
}

std::vector<double> solve_gammas(const ProbabilityVector& x, const ProbabilityVector& y) {
    const int m = static_cast<int>(x.entries.size());
    if (static_cast<int>(y.entries.size()) != m)
        throw DimensionMismatch("weight vectors must have equal length");
    RealMatrix C(m, m);
    for (int mu = 0; mu < m; ++mu)
        for (int s = 0; s < m; ++s) C(mu, s) = y.entries[(mu - s + m) % m];
    RealVector rhs(m);
    for (int mu = 0; mu < m; ++mu) rhs(mu) = x.entries[mu];

    Eigen::FullPivLU<RealMatrix> lu(C);
    std::vector<double> g(m, 0.0);
    if (lu.isInvertible()) {
        RealVector sol = lu.solve(rhs);
        for (int s = 0; s < m; ++s) {
            if (sol(s) < -1e-10)
                throw Infeasible("cyclic completeness system has negative gamma^2 = " +
                                 std::to_string(sol(s)) + " at shift " + std::to_string(s));
            g[s] = std::max(sol(s), 0.0);
        }
        return g;
    }
    // Degenerate target weights: look for any nonnegative representative.
    RealVector nn = nnls(C, rhs);
    if ((C * nn - rhs).cwiseAbs().maxCoeff() <= kTol) {
        for (int s = 0; s < m; ++s) g[s] = std::max(nn(s), 0.0);
        return g;
    }
    RealVector ls = C.completeOrthogonalDecomposition().solve(rhs);
    if ((C * ls - rhs).cwiseAbs().maxCoeff() > kTol)
        throw Infeasible("cyclic completeness system is inconsistent for these weights");
    throw SingularSystem("degenerate weights: system is consistent but no nonnegative solution was found");
}

ConversionPlan build_conversion_channel(const PureBlockState& src, const PureBlockState& dst) {
    if (src.structure != dst.structure)
        throw DimensionMismatch("conversion requires a shared block structure");
    const BlockStructure& s = src.structure;
    const int M = s.blocks();
    const int d = s.dim();

    ConversionPlan plan;
    plan.sigma_x = argsort_desc(src.weights);
    plan.sigma_y = argsort_desc(dst.weights);

    std::vector<double> xs(M), ys(M);
    for (int i = 0; i < M; ++i) {
        xs[i] = src.weights[plan.sigma_x[i]];
        ys[i] = dst.weights[plan.sigma_y[i]];
    }
    int m = M;
    while (m > 0 && xs[m - 1] <= kZero && ys[m - 1] <= kZero) --m;
    for (int i = 0; i < m; ++i)
        if (xs[i] <= kZero)
            throw ZeroWeightPolicy("source weight vanishes where the target weight does not");

    std::vector<double> xs2(m), ys2(m);
    for (int i = 0; i < m; ++i) {
        xs2[i] = xs[i] * xs[i];
        ys2[i] = ys[i] * ys[i];
    }
    // Renormalize away quadratic drift so the solver sees clean probabilities.
    double sx = std::accumulate(xs2.begin(), xs2.end(), 0.0);
    double sy = std::accumulate(ys2.begin(), ys2.end(), 0.0);
    for (int i = 0; i < m; ++i) {
        xs2[i] /= sx;
        ys2[i] /= sy;
    }

    std::vector<double> g;
    try {
        g = solve_gammas(ProbabilityVector(xs2), ProbabilityVector(ys2));
    } catch (const Infeasible& e) {
        plan.diagnostic = e.what();
        return plan;
    } catch (const SingularSystem& e) {
        plan.diagnostic = e.what();
        return plan;
    }
    plan.gammas_sq = g;

    // Block-diagonal unitaries aligning the given components with the uniform
    // reference components the transfer operators are written in.
    Matrix L = Matrix::Zero(d, d), R = Matrix::Zero(d, d);
    for (int i = 0; i < M; ++i) {
        const int p = plan.sigma_x[i];
        const int q = plan.sigma_y[i];
        if (i < m) {
            Matrix u = complete_basis(src.components[p]);
            Matrix uref = complete_basis(uniform_vec(s.block_dim(p)));
            set_block(L, s, p, p, uref * u.adjoint());
        } else {
            set_block(L, s, p, p, Matrix::Identity(s.block_dim(p), s.block_dim(p)));
        }
        if (i < m && ys[i] > kZero) {
            Matrix v = complete_basis(dst.components[q]);
            Matrix vref = complete_basis(uniform_vec(s.block_dim(q)));
            set_block(R, s, q, q, v * vref.adjoint());
        } else {
            set_block(R, s, q, q, Matrix::Identity(s.block_dim(q), s.block_dim(q)));
        }
    }

    std::vector<int> src_dims(m);
    long dhat = 1;
    for (int i = 0; i < m; ++i) {
        src_dims[i] = s.block_dim(plan.sigma_x[i]);
        dhat *= src_dims[i];
        if (dhat > 65536) throw TooLarge("conversion Kraus family would be too large");
    }
    bool isometry_ok = true;
    for (int i = 0; i < m; ++i)
        if (ys[i] > kZero && s.block_dim(plan.sigma_y[i]) < s.block_dim(plan.sigma_x[i]))
            isometry_ok = false;

    std::vector<Matrix> kraus;
    std::vector<double> overlaps;
    const double root_dhat = std::sqrt(double(dhat));

    // One cyclic-shift family per active shift; shift 0 collapses to a single
    // block-diagonal transfer operator when every slot admits an isometry.
    auto emit_family = [&](int shift, double gamma) {
        Matrix a = Matrix::Zero(d, d);
        std::vector<int> tup(m, 0);
        do {
            a.setZero();
            for (int i = 0; i < m; ++i) {
                if (ys[i] <= kZero) continue;
                const int j = (i + shift) % m;
                const int p = plan.sigma_x[j];
                const int q = plan.sigma_y[i];
                const double coef =
                    gamma / root_dhat * (ys[i] / xs[j]) * std::sqrt(double(src_dims[j]));
                Matrix blk = Matrix::Zero(s.block_dim(q), s.block_dim(p));
                blk.col(tup[j]) = coef * uniform_vec(s.block_dim(q));
                Matrix cur = block_view(a, s, q, p);
                set_block(a, s, q, p, cur + blk);
            }
            kraus.push_back(R * a * L);
            overlaps.push_back(gamma / root_dhat);
        } while (next_tuple(tup, src_dims));
    };

    if (g[0] > 1e-14) {
        const double g0 = std::sqrt(g[0]);
        if (isometry_ok) {
            Matrix a0 = Matrix::Zero(d, d);
            for (int i = 0; i < m; ++i) {
                if (ys[i] <= kZero) continue;
                const int p = plan.sigma_x[i];
                const int q = plan.sigma_y[i];
                Matrix up = complete_basis(uniform_vec(s.block_dim(p)));
                Matrix vq = complete_basis(uniform_vec(s.block_dim(q)));
                Matrix t = vq.leftCols(s.block_dim(p)) * up.adjoint();
                set_block(a0, s, q, p, (g0 * ys[i] / xs[i]) * t);
            }
            kraus.push_back(R * a0 * L);
            overlaps.push_back(g0);
        } else {
            emit_family(0, g0);
        }
    }
    for (int shift = 1; shift < m; ++shift)
        if (g[shift] > 1e-14) emit_family(shift, std::sqrt(g[shift]));

    if (m < M) {  // identity on the blocks both states miss entirely
        Matrix dead = Matrix::Zero(d, d);
        for (int i = m; i < M; ++i) dead += s.projector(plan.sigma_x[i]);
        kraus.push_back(dead);
        overlaps.push_back(0.0);
    }

    plan.channel.emplace(std::move(kraus), s);
    plan.expected_overlaps = std::move(overlaps);
    plan.feasible = true;
    return plan;
}

ConversionReport verify_conversion(const ConversionPlan& plan, const PureBlockState& src,
                                   const PureBlockState& dst) {
    if (!plan.feasible || !plan.channel)
        throw VerificationFailed("plan is infeasible; nothing to verify");
    const KrausChannel& ch = *plan.channel;
    const Vector& phix = src.amplitudes;
    const Vector& phiy = dst.amplitudes;

    double worst = 0.0;
    for (std::size_t a = 0; a < ch.kraus.size(); ++a) {
        Vector image = ch.kraus[a] * phix;
        worst = std::max(worst, (image - plan.expected_overlaps[a] * phiy).norm());
    }
    if (worst > kTol)
        throw VerificationFailed("Kraus image deviates from the stated multiple of the target by " +
                                 std::to_string(worst));

    auto rep = validate_cptp(ch);
    if (!rep.ok)
        throw VerificationFailed("completeness residual " + std::to_string(rep.residual));

    auto verdict = classify_block_incoherent(ch);
    if (!verdict.is_block_incoherent)
        throw VerificationFailed("assembled channel is not block-incoherent");

    Matrix out = apply_raw(ch, phix * phix.adjoint());
    double fid = (phiy.adjoint() * out * phiy).real()(0, 0);
    if (std::abs(fid - 1.0) > kTol)
        throw VerificationFailed("output fidelity " + std::to_string(fid));

    return {worst, rep.residual, true, fid};
}

NecessityCertificate necessity_certificate(const KrausChannel& ch, const PureBlockState& src,
                                           const PureBlockState& dst) {
    auto verdict = classify_block_incoherent(ch);
    if (!verdict.is_block_incoherent)
        throw NotIncoherent("channel has a Kraus operator feeding two block rows from one column");
    if (ch.dim_in() != src.structure.dim() || ch.dim_out() != dst.structure.dim())
        throw DimensionMismatch("states do not fit the channel");

    const Vector& phix = src.amplitudes;
    const Vector& phiy = dst.amplitudes;
    auto rep = validate_cptp(ch);
    if (!rep.ok) throw NotAConversion("channel is not trace preserving");
    Matrix out = apply_raw(ch, phix * phix.adjoint());
    double fid = (phiy.adjoint() * out * phiy).real()(0, 0);
    if (fid < 1.0 - 1e-8)
        throw NotAConversion("channel output fidelity with the target is " + std::to_string(fid));

    const int M = src.structure.blocks();
    NecessityCertificate cert;
    cert.alpha_norm_sq = 0.0;
    cert.B = RealMatrix::Zero(M, M);
    std::vector<double> y2(M), x2(M);
    for (int mu = 0; mu < M; ++mu) {
        x2[mu] = src.weights[mu] * src.weights[mu];
        y2[mu] = dst.weights[mu] * dst.weights[mu];
    }

    for (std::size_t a = 0; a < ch.kraus.size(); ++a) {
        Cx alpha = (phiy.adjoint() * ch.kraus[a] * phix)(0, 0);
        cert.alphas.push_back(alpha);
        const double w = std::norm(alpha);
        cert.alpha_norm_sq += w;
        if (w <= 1e-12) continue;  // weightless operators never enter B

        const std::vector<int>& partial = verdict.kraus_maps[a];
        std::vector<bool> row_used(M, false);
        for (int nu = 0; nu < M; ++nu)
            if (partial[nu] >= 0) {
                if (row_used[partial[nu]])
                    throw CertificateViolation(
                        "a weighted Kraus operator maps two block columns into one row");
                row_used[partial[nu]] = true;
            }
        // Complete the partial map over its zero columns; pair them with the
        // lightest unused target blocks so vanished weight stays vanished.
        std::vector<int> free_rows;
        for (int mu = 0; mu < M; ++mu)
            if (!row_used[mu]) free_rows.push_back(mu);
        std::sort(free_rows.begin(), free_rows.end(),
                  [&](int u, int v) { return y2[u] < y2[v] || (y2[u] == y2[v] && u < v); });
        std::size_t next_free = 0;
        for (int nu = 0; nu < M; ++nu) {
            int mu = partial[nu];
            if (mu < 0) mu = free_rows[next_free++];
            cert.B(nu, mu) += w;
        }
    }

    if (std::abs(cert.alpha_norm_sq - 1.0) > 1e-8)
        throw CertificateViolation("overlap weights sum to " + std::to_string(cert.alpha_norm_sq));
    for (int i = 0; i < M; ++i) {
        if (std::abs(cert.B.row(i).sum() - 1.0) > 1e-8 || std::abs(cert.B.col(i).sum() - 1.0) > 1e-8)
            throw CertificateViolation("induced matrix is not doubly stochastic");
    }

    cert.mixed.assign(M, 0.0);
    for (int nu = 0; nu < M; ++nu)
        for (int mu = 0; mu < M; ++mu) cert.mixed[nu] += cert.B(nu, mu) * y2[mu];
    cert.chain_lower = majorizes_raw(cert.mixed, x2);
    cert.chain_upper = majorizes_raw(y2, cert.mixed);
    if (!cert.chain_lower || !cert.chain_upper)
        throw CertificateViolation("majorization chain through the mixed weights fails");
    return cert;
}

}  // namespace blockcoh
