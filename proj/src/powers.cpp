#include "blockcoh/powers.hpp"

#include <algorithm>
#include <cmath>

#include "blockcoh/measures.hpp"

namespace blockcoh {

namespace {

void renormalize(std::vector<Vector>& pt) {
    for (Vector& v : pt) {
        double n = v.norm();
        if (n > 0.0) v /= n;
    }
}

double ascend_from(const std::function<double(const std::vector<Vector>&)>& f,
                   std::vector<Vector> pt, int max_iters, double tol,
                   std::vector<Vector>* arg_out) {
    constexpr double h = 1e-7;
    double best = f(pt);
    double step = 0.1;
    for (int iter = 0; iter < max_iters; ++iter) {
        std::vector<Vector> grad;
        grad.reserve(pt.size());
        for (std::size_t k = 0; k < pt.size(); ++k)
            grad.emplace_back(Vector::Zero(pt[k].size()));
        for (std::size_t k = 0; k < pt.size(); ++k)
            for (int j = 0; j < pt[k].size(); ++j) {
                for (int part = 0; part < 2; ++part) {
                    const Cx delta = part == 0 ? Cx(h, 0.0) : Cx(0.0, h);
                    pt[k](j) += delta;
                    const double fp = f(pt);
                    pt[k](j) -= 2.0 * delta;
                    const double fm = f(pt);
                    pt[k](j) += delta;
                    const double g = (fp - fm) / (2.0 * h);
                    grad[k](j) += part == 0 ? Cx(g, 0.0) : Cx(0.0, g);
                }
            }
        bool moved = false;
        while (step >= 1e-14) {
            std::vector<Vector> trial = pt;
            for (std::size_t k = 0; k < trial.size(); ++k) trial[k] += step * grad[k];
            renormalize(trial);
            const double ft = f(trial);
            if (ft > best) {
                const double gain = ft - best;
                pt = std::move(trial);
                best = ft;
                step *= 1.3;
                moved = true;
                if (gain < tol && iter > 3) iter = max_iters;  // converged
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;
    }
    if (arg_out) *arg_out = std::move(pt);
    return best;
}

}  // namespace

AscentOutcome maximize_on_spheres(const std::function<double(const std::vector<Vector>&)>& f,
                                  const std::vector<int>& dims, const AscentOptions& opts) {
    Rng rng(opts.seed);
    AscentOutcome out{-1e300, {}, 0.0};
    double second = -1e300;
    for (int r = 0; r < std::max(1, opts.restarts); ++r) {
        std::vector<Vector> start;
        start.reserve(dims.size());
        for (int dim : dims) start.push_back(rng.unit_vector(dim));
        std::vector<Vector> arg;
        const double v = ascend_from(f, std::move(start), opts.max_iters, opts.tol, &arg);
        if (v > out.value) {
            second = out.value;
            out.value = v;
            out.point = std::move(arg);
        } else if (v > second) {
            second = v;
        }
    }
    out.gap = (second <= -1e299) ? 0.0 : out.value - second;
    return out;
}

PowerResult bcp(const KrausChannel& ch, const BlockStructure& s, const AscentOptions& opts) {
    auto rep = validate_cptp(ch);
    if (!rep.ok) throw NotCPTP("completeness residual " + std::to_string(rep.residual));
    if (ch.dim_in() != s.dim() || ch.dim_out() != s.dim())
        throw DimensionMismatch("cohering power needs a square channel on the structure");

    PowerResult res;
    res.method = "optimized";
    res.restarts = opts.restarts;
    for (int nu = 0; nu < s.blocks(); ++nu) {
        auto objective = [&](const std::vector<Vector>& pt) {
            Vector psi = embed_in_block(pt[0], s, nu);
            return c_l1_raw(apply_raw(ch, psi * psi.adjoint()), s);
        };
        AscentOptions o = opts;
        o.seed = opts.seed + 0x9e3779b97f4a7c15ULL * (nu + 1);
        auto best = maximize_on_spheres(objective, {s.block_dim(nu)}, o);
        if (best.value > res.value) {
            res.value = best.value;
            res.block_index = nu;
            res.optimizer_states = best.point;
            res.best_second_gap = best.gap;
        }
    }
    res.value = std::max(res.value, 0.0);
    return res;
}

PowerResult bcp_unitary(const BlockOperator& u, const AscentOptions& opts) {
    if (unitarity_residual(u.matrix) > kTol) throw NotUnitary("cohering power of a non-unitary");
    const BlockStructure& s = u.structure;

    // Cache the block views once; the objective runs thousands of times.
    const int M = s.blocks();
    std::vector<std::vector<Matrix>> a(M);
    for (int mu = 0; mu < M; ++mu)
        for (int nu = 0; nu < M; ++nu) a[mu].push_back(u.block(mu, nu));

    PowerResult res;
    res.method = "closed_form";
    res.restarts = opts.restarts;
    for (int nu = 0; nu < M; ++nu) {
        auto objective = [&, nu](const std::vector<Vector>& pt) {
            double total = 0.0;
            for (int mu = 0; mu < M; ++mu) total += (a[mu][nu] * pt[0]).norm();
            return total * total - 1.0;
        };
        AscentOptions o = opts;
        o.seed = opts.seed + 0x9e3779b97f4a7c15ULL * (nu + 1);
        auto best = maximize_on_spheres(objective, {s.block_dim(nu)}, o);
        if (best.value > res.value) {
            res.value = best.value;
            res.block_index = nu;
            res.optimizer_states = best.point;
            res.best_second_gap = best.gap;
        }
    }
    res.value = std::max(res.value, 0.0);
    return res;
}

PowerResult bcp_random_unitary(const std::vector<MixtureTerm>& terms, const BlockStructure& s,
                               const AscentOptions& opts) {
    if (terms.empty()) throw InvalidMixture("mixture needs at least one term");
    double psum = 0.0;
    for (const auto& t : terms) {
        if (t.p < -1e-12) throw InvalidMixture("negative mixture weight");
        psum += t.p;
        if (unitarity_residual(t.u) > kTol || unitarity_residual(t.v) > kTol)
            throw InvalidMixture("mixture factors must be unitary");
    }
    if (std::abs(psum - 1.0) > kTol) throw InvalidMixture("mixture weights must sum to 1");

    const int m = static_cast<int>(terms.front().u.rows());
    const int n = static_cast<int>(terms.front().v.rows());
    if (s.blocks() != m) throw DimensionMismatch("structure must have one block per mixture row");
    for (int mu = 0; mu < m; ++mu)
        if (s.block_dim(mu) != n) throw DimensionMismatch("every block must match the second factor");

    PowerResult res;
    res.method = "closed_form";
    res.restarts = opts.restarts;
    for (int nu = 0; nu < m; ++nu) {
        auto objective = [&, nu](const std::vector<Vector>& pt) {
            const Vector& psi = pt[0];
            double total = 0.0;
            std::vector<Matrix> rotated;
            rotated.reserve(terms.size());
            for (const auto& t : terms) {
                Vector w = t.v * psi;
                rotated.push_back(t.p * (w * w.adjoint()));
            }
            for (int mu = 0; mu < m; ++mu)
                for (int mup = 0; mup < m; ++mup) {
                    if (mu == mup) continue;
                    Matrix b = Matrix::Zero(n, n);
                    for (std::size_t i = 0; i < terms.size(); ++i)
                        b += terms[i].u(mu, nu) * std::conj(terms[i].u(mup, nu)) * rotated[i];
                    total += trace_norm(b);
                }
            return total;
        };
        AscentOptions o = opts;
        o.seed = opts.seed + 0x9e3779b97f4a7c15ULL * (nu + 1);
        auto best = maximize_on_spheres(objective, {n}, o);
        if (best.value > res.value) {
            res.value = best.value;
            res.block_index = nu;
            res.optimizer_states = best.point;
            res.best_second_gap = best.gap;
        }
    }
    res.value = std::max(res.value, 0.0);
    return res;
}

PowerResult bdp(const KrausChannel& ch, const BlockStructure& s, const AscentOptions& opts) {
    auto rep = validate_cptp(ch);
    if (!rep.ok) throw NotCPTP("completeness residual " + std::to_string(rep.residual));
    if (ch.dim_in() != s.dim() || ch.dim_out() != s.dim())
        throw DimensionMismatch("decohering power needs a square channel on the structure");

    const int M = s.blocks();
    const double w = 1.0 / std::sqrt(double(M));
    auto objective = [&](const std::vector<Vector>& pt) {
        Vector phi = Vector::Zero(s.dim());
        for (int mu = 0; mu < M; ++mu) phi += w * embed_in_block(pt[mu], s, mu);
        return -c_l1_raw(apply_raw(ch, phi * phi.adjoint()), s);
    };
    auto best = maximize_on_spheres(objective, s.block_dims(), opts);

    PowerResult res;
    res.method = "optimized";
    res.restarts = opts.restarts;
    res.value = std::max((M - 1) + best.value, 0.0);  // best.value = -min output coherence
    res.optimizer_states = best.point;
    res.best_second_gap = best.gap;
    return res;
}

PowerResult bdp_unitary(const BlockOperator& u, const AscentOptions& opts) {
    if (unitarity_residual(u.matrix) > kTol) throw NotUnitary("decohering power of a non-unitary");
    const BlockStructure& s = u.structure;
    const int M = s.blocks();
    std::vector<std::vector<Matrix>> a(M);
    for (int alpha = 0; alpha < M; ++alpha)
        for (int mu = 0; mu < M; ++mu) a[alpha].push_back(u.block(alpha, mu));

    auto objective = [&](const std::vector<Vector>& pt) {
        double total = 0.0;
        for (int alpha = 0; alpha < M; ++alpha) {
            Vector chi = Vector::Zero(s.block_dim(alpha));
            for (int mu = 0; mu < M; ++mu) chi += a[alpha][mu] * pt[mu];
            total += chi.norm();
        }
        return -(total * total);
    };
    auto best = maximize_on_spheres(objective, s.block_dims(), opts);

    PowerResult res;
    res.method = "closed_form";
    res.restarts = opts.restarts;
    res.value = std::max(M + best.value / M, 0.0);  // M - (1/M) min (sum ||chi||)^2
    res.optimizer_states = best.point;
    res.best_second_gap = best.gap;
    return res;
}

}  // namespace blockcoh
