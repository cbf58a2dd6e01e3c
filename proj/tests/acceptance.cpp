// End-to-end acceptance battery. Each numbered check prints one PASS/FAIL
// line; the process exit code is the number of failed checks. argv[1] must
// name the command-line binary (used by the last check).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "blockcoh/conversion.hpp"
#include "blockcoh/gates.hpp"
#include "blockcoh/kcoherence.hpp"
#include "blockcoh/measures.hpp"
#include "blockcoh/powers.hpp"
#include "helpers.hpp"

using namespace blockcoh;

namespace {

int g_failures = 0;

void report(int id, bool pass, const std::string& name, const std::string& detail) {
    if (!pass) ++g_failures;
    std::printf("criterion %2d: %s  %s%s%s\n", id, pass ? "PASS" : "FAIL", name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

// Random two-block rotation [[aI, bV], [-conj(b)V', conj(a)I]].
struct RotationDraw {
    Cx a, b;
    BlockOperator u;
};

RotationDraw draw_rotation(Rng& rng, int n) {
    const double th = 0.1 + (M_PI / 2.0 - 0.2) * rng.uniform();
    const Cx a = std::polar(std::cos(th), 2.0 * M_PI * rng.uniform());
    const Cx b = std::polar(std::sin(th), 2.0 * M_PI * rng.uniform());
    Matrix v = rng.haar_unitary(n);
    Matrix u = Matrix::Zero(2 * n, 2 * n);
    u.block(0, 0, n, n) = a * Matrix::Identity(n, n);
    u.block(0, n, n, n) = b * v;
    u.block(n, 0, n, n) = -std::conj(b) * v.adjoint();
    u.block(n, n, n, n) = std::conj(a) * Matrix::Identity(n, n);
    return {a, b, BlockOperator(u, BlockStructure::contiguous({n, n}))};
}

struct ConversionArtifact {
    BlockStructure s;
    PureBlockState src, dst;
    ConversionPlan plan;
};

std::vector<ConversionArtifact> g_conversions;

// 1. l1 coherence of the maximally coherent state is M - 1 for M = 2, 3, 4.
void criterion_1() {
    double worst = 0.0;
    for (int m = 2; m <= 4; ++m) {
        std::vector<int> dims;
        for (int i = 0; i < m; ++i) dims.push_back(1 + (i % 3));
        BlockStructure s = BlockStructure::contiguous(dims);
        PureBlockState mc = maximally_coherent_state(s);
        worst = std::max(worst,
                         std::abs(c_l1(DensityMatrix::pure(mc.amplitudes), s) - double(m - 1)));
    }
    report(1, worst <= 1e-9, "maximally coherent state reaches c_l1 = M-1",
           "worst deviation " + num(worst));
}

// 2. Pure-state measures match their weight-vector closed forms.
void criterion_2() {
    Rng rng(0xACC2);
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
        BlockStructure s = testutil::random_structure(rng, rng.uniform_int(2, 4), 3);
        PureBlockState ps = testutil::random_pure_state(rng, s);
        DensityMatrix rho = DensityMatrix::pure(ps.amplitudes);
        double l1 = 0.0, ent = 0.0;
        for (int mu = 0; mu < s.blocks(); ++mu) {
            const double w2 = ps.weights[mu] * ps.weights[mu];
            if (w2 > 0.0) ent -= w2 * std::log2(w2);
            for (int nu = 0; nu < s.blocks(); ++nu)
                if (nu != mu) l1 += ps.weights[mu] * ps.weights[nu];
        }
        worst = std::max(worst, std::abs(c_l1(rho, s) - l1));
        worst = std::max(worst, std::abs(c_entropy(rho, s) - ent));
    }
    report(2, worst <= 1e-9, "pure-state measures match the closed forms (200 draws)",
           "worst deviation " + num(worst));
}

// 3. Random reachable weight pairs produce verified conversion channels.
void criterion_3() {
    Rng rng(0xACC3);
    double worst_cptp = 0.0, worst_fid = 1.0;
    bool ok = true;
    for (int t = 0; t < 200; ++t) {
        const int m = rng.uniform_int(2, 4);
        BlockStructure s = testutil::random_structure(rng, m, 4);
        auto [x2, y2] = testutil::random_feasible_weights(rng, m);
        PureBlockState src = testutil::state_with_weights(rng, s, x2);
        PureBlockState dst = testutil::state_with_weights(rng, s, y2);
        ConversionPlan plan = build_conversion_channel(src, dst);
        if (!plan.feasible) {
            ok = false;
            break;
        }
        ConversionReport rep;
        try {
            rep = verify_conversion(plan, src, dst);
        } catch (const VerificationFailed&) {
            ok = false;
            break;
        }
        worst_cptp = std::max(worst_cptp, rep.cptp_residual);
        worst_fid = std::min(worst_fid, rep.fidelity);
        ok = ok && rep.block_incoherent && rep.cptp_residual <= 1e-9 && rep.fidelity >= 1.0 - 1e-9;
        g_conversions.push_back({s, src, dst, std::move(plan)});
        if (!ok) break;
    }
    report(3, ok, "200 random reachable pairs convert exactly",
           "worst completeness " + num(worst_cptp) + ", worst fidelity " + num(1.0 - worst_fid));
}

// 4. Two blocks: solvability coincides with majorization on a dense grid.
//    Three blocks: majorization no longer suffices; count the gap.
void criterion_4() {
    int mismatches2 = 0;
    for (int i = 1; i <= 50; ++i)
        for (int j = 1; j <= 50; ++j) {
            const double xt = i / 51.0, yt = j / 51.0;
            std::vector<double> x2 = {std::max(xt, 1.0 - xt), std::min(xt, 1.0 - xt)};
            std::vector<double> y2 = {std::max(yt, 1.0 - yt), std::min(yt, 1.0 - yt)};
            bool feasible = true;
            try {
                solve_gammas(ProbabilityVector(x2), ProbabilityVector(y2));
            } catch (const Error&) {
                feasible = false;
            }
            if (feasible != majorizes_raw(y2, x2)) ++mismatches2;
        }

    std::vector<std::vector<double>> lattice;
    for (int i = 12; i >= 1; --i)
        for (int j = std::min(i, 12 - i); j >= 0; --j) {
            const int k = 12 - i - j;
            if (k > j) continue;
            lattice.push_back({i / 12.0, j / 12.0, k / 12.0});
        }
    int majorized_pairs = 0, unreachable_majorized = 0, soundness_violations = 0;
    for (const auto& x2 : lattice)
        for (const auto& y2 : lattice) {
            bool feasible = true;
            try {
                solve_gammas(ProbabilityVector(x2), ProbabilityVector(y2));
            } catch (const Error&) {
                feasible = false;
            }
            const bool maj = majorizes_raw(y2, x2);
            if (maj) ++majorized_pairs;
            if (maj && !feasible) ++unreachable_majorized;
            if (feasible && !maj) ++soundness_violations;
        }

    const bool pass = mismatches2 == 0 && soundness_violations == 0;
    report(4, pass, "two-block grid equivalence; three-block gap reported",
           "M=2 mismatches " + std::to_string(mismatches2) + "; M=3 unreachable majorized pairs " +
               std::to_string(unreachable_majorized) + "/" + std::to_string(majorized_pairs) +
               ", soundness violations " + std::to_string(soundness_violations));
}

// 5. Certificates extracted from the criterion-3 channels.
void criterion_5() {
    bool ok = !g_conversions.empty();
    double worst_alpha = 0.0, worst_ds = 0.0;
    for (const auto& art : g_conversions) {
        NecessityCertificate cert;
        try {
            cert = necessity_certificate(*art.plan.channel, art.src, art.dst);
        } catch (const Error& e) {
            ok = false;
            report(5, false, "necessity certificates for every constructed channel", e.what());
            return;
        }
        worst_alpha = std::max(worst_alpha, std::abs(cert.alpha_norm_sq - 1.0));
        for (int i = 0; i < cert.B.rows(); ++i) {
            worst_ds = std::max(worst_ds, std::abs(cert.B.row(i).sum() - 1.0));
            worst_ds = std::max(worst_ds, std::abs(cert.B.col(i).sum() - 1.0));
        }
        ok = ok && cert.chain_lower && cert.chain_upper;
    }
    ok = ok && worst_alpha <= 1e-8 && worst_ds <= 1e-8;
    report(5, ok, "necessity certificates for every constructed channel",
           "worst overlap-sum deviation " + num(worst_alpha) + ", worst row/col sum deviation " +
               num(worst_ds));
}

// 6. Ancilla-assisted protocols realize Haar-random unitaries exactly.
void criterion_6() {
    Rng rng(0xACC6);
    double worst_fid = 1.0, worst_anc = 0.0, worst_cptp = 0.0;
    bool ok = true;
    for (int t = 0; t < 50; ++t) {
        const int m = rng.uniform_int(2, 3);
        BlockStructure s = testutil::random_structure(rng, m, 3);
        Matrix u = rng.haar_unitary(s.dim());
        GateProtocol p = build_gate_protocol(BlockOperator(u, s));
        worst_cptp = std::max(worst_cptp, validate_cptp(p.channel).residual);
        ok = ok && classify_block_incoherent(p.channel).is_block_incoherent;

        PureBlockState psi = testutil::random_pure_state(rng, s);
        auto [sys, anc] = run_gate_protocol(p, psi);
        Vector target = u * psi.amplitudes;
        worst_fid = std::min(worst_fid, (target.adjoint() * sys.matrix() * target).real()(0, 0));
        worst_anc = std::max(worst_anc, c_l1(anc, s));
    }
    ok = ok && worst_fid >= 1.0 - 1e-8 && worst_anc <= 1e-8 && worst_cptp <= 1e-9;
    report(6, ok, "50 gate protocols run exactly on one coherent ancilla",
           "worst fidelity gap " + num(1.0 - worst_fid) + ", worst ancilla coherence " +
               num(worst_anc) + ", worst completeness " + num(worst_cptp));
}

// 7. Cohering power of the two-block rotation family equals 2|ab|.
void criterion_7() {
    Rng rng(0xACC7);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        RotationDraw d = draw_rotation(rng, rng.uniform_int(1, 3));
        PowerResult r = bcp_unitary(d.u);
        worst = std::max(worst, std::abs(r.value - 2.0 * std::abs(d.a) * std::abs(d.b)));
    }
    report(7, worst <= 1e-6, "rotation-family cohering power equals 2|ab| (20 draws)",
           "worst deviation " + num(worst));
}

// 8. Incoherent channels have vanishing cohering power.
void criterion_8() {
    Rng rng(0xACC8);
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        BlockStructure s = testutil::random_structure(rng, rng.uniform_int(2, 3), 2);
        KrausChannel ch = testutil::random_block_incoherent_channel(rng, s, 3);
        worst = std::max(worst, bcp(ch, s).value);
    }
    report(8, worst <= 1e-6, "50 incoherent channels create nothing", "largest power " + num(worst));
}

// 9. Tensor unitaries reduce to the column sums of the left factor.
void criterion_9() {
    Rng rng(0xACC9);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const int m = rng.uniform_int(2, 3), n = rng.uniform_int(2, 3);
        Matrix u = rng.haar_unitary(m), v = rng.haar_unitary(n);
        double expect = 0.0;
        for (int nu = 0; nu < m; ++nu) {
            double col = 0.0;
            for (int mu = 0; mu < m; ++mu) col += std::abs(u(mu, nu));
            expect = std::max(expect, col * col - 1.0);
        }
        worst = std::max(worst, std::abs(bcp_unitary(tensor(u, v)).value - expect));
    }
    report(9, worst <= 1e-6, "tensor unitaries follow the column-sum law (20 pairs)",
           "worst deviation " + num(worst));
}

// 10. Rotation mixed with the identity: cohering power 2p|ab|.
void criterion_10() {
    Rng rng(0xACC10);
    BlockStructure s = BlockStructure::contiguous({2, 2});
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const double p = 0.1 + 0.8 * rng.uniform();
        const double th = 0.1 + (M_PI / 2.0 - 0.2) * rng.uniform();
        const Cx a = std::polar(std::cos(th), 2.0 * M_PI * rng.uniform());
        const Cx b = std::polar(std::sin(th), 2.0 * M_PI * rng.uniform());
        Matrix u2(2, 2);
        u2 << a, b, -std::conj(b), std::conj(a);
        std::vector<MixtureTerm> terms = {{p, u2, rng.haar_unitary(2)},
                                          {1.0 - p, Matrix::Identity(2, 2), Matrix::Identity(2, 2)}};
        PowerResult r = bcp_random_unitary(terms, s);
        worst = std::max(worst, std::abs(r.value - 2.0 * p * std::abs(a) * std::abs(b)));
    }
    report(10, worst <= 1e-6, "identity-diluted rotations scale as 2p|ab| (20 draws)",
           "worst deviation " + num(worst));
}

// 11. Decohering power: closed form, balanced extreme, ancilla independence.
void criterion_11() {
    Rng rng(0xACC11);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        RotationDraw d = draw_rotation(rng, rng.uniform_int(1, 3));
        const double ab = std::abs(d.a) * std::abs(d.b);
        const double expect = 1.0 - std::sqrt(1.0 - 4.0 * ab * ab);
        worst = std::max(worst, std::abs(bdp_unitary(d.u).value - expect));
    }

    const double r = 1.0 / std::sqrt(2.0);
    Matrix h = Matrix::Zero(4, 4);
    h.block(0, 0, 2, 2) = r * Matrix::Identity(2, 2);
    h.block(0, 2, 2, 2) = r * Matrix::Identity(2, 2);
    h.block(2, 0, 2, 2) = r * Matrix::Identity(2, 2);
    h.block(2, 2, 2, 2) = -r * Matrix::Identity(2, 2);
    const double had =
        std::abs(bdp_unitary(BlockOperator(h, BlockStructure::contiguous({2, 2}))).value - 1.0);

    double worst_tensor = 0.0;
    for (int t = 0; t < 10; ++t) {
        const int m = rng.uniform_int(2, 3), n = rng.uniform_int(2, 3);
        Matrix u = rng.haar_unitary(m), v = rng.haar_unitary(n);
        const double left = bdp_unitary(BlockOperator(u, BlockStructure::singletons(m))).value;
        worst_tensor = std::max(worst_tensor, std::abs(bdp_unitary(tensor(u, v)).value - left));
    }

    const bool ok = worst <= 1e-6 && had <= 1e-6 && worst_tensor <= 1e-5;
    report(11, ok, "decohering power: closed form, Hadamard saturation, tensor reduction",
           "rotation " + num(worst) + ", Hadamard " + num(had) + ", tensor " + num(worst_tensor));
}

// 12. Rank-two structures on four indices: enumeration and probe.
void criterion_12() {
    auto fam = enumerate_structures(4, 2);
    auto has = [&](std::vector<std::vector<int>> g) {
        BlockStructure s(std::move(g), 4);
        return std::any_of(fam.structures.begin(), fam.structures.end(),
                           [&](const BlockStructure& t) { return t == s; });
    };
    const bool pairings = has({{0, 1}, {2, 3}}) && has({{0, 2}, {1, 3}}) && has({{0, 3}, {1, 2}});
    ProbeReport rep = conjecture_probe(4, 2, 500, 0xACC12);
    const bool ok = pairings && rep.violations_membership == 0 && rep.violations_support == 0;
    report(12, ok, "rank-two structures enumerate and the 500-trial probe is clean",
           std::to_string(fam.structures.size()) + " structures, " +
               std::to_string(rep.violations_membership + rep.violations_support) + " violations");
}

// 13. Invariance battery plus dephasing sanity.
void criterion_13() {
    Rng rng(0xACC13);
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
        BlockStructure s = testutil::random_structure(rng, rng.uniform_int(2, 4), 3);
        DensityMatrix rho(rng.density(s.dim()));
        const double l1 = c_l1(rho, s), ent = c_entropy(rho, s);

        Matrix w = testutil::random_block_diagonal_unitary(rng, s);
        Matrix ph = Matrix::Zero(s.dim(), s.dim());
        for (int i = 0; i < s.dim(); ++i) ph(i, i) = std::polar(1.0, 2.0 * M_PI * rng.uniform());
        Matrix g = ph * w;
        DensityMatrix rot(g * rho.matrix() * g.adjoint());
        worst = std::max(worst, std::abs(c_l1(rot, s) - l1));
        worst = std::max(worst, std::abs(c_entropy(rot, s) - ent));
    }

    double worst_deph = 0.0;
    Rng rng2(0xACC13 ^ 0xff);
    for (int t = 0; t < 20; ++t) {
        BlockStructure s = testutil::random_structure(rng2, rng2.uniform_int(2, 4), 3);
        KrausChannel deph = block_dephasing_channel(s);
        worst_deph = std::max(worst_deph, validate_cptp(deph).residual);
        Matrix rho = rng2.density(s.dim());
        Matrix once = block_dephase_raw(rho, s);
        worst_deph = std::max(worst_deph, (block_dephase_raw(once, s) - once).cwiseAbs().maxCoeff());
        worst_deph = std::max(worst_deph, (apply_raw(deph, rho) - once).cwiseAbs().maxCoeff());
    }

    const bool ok = worst <= 1e-8 && worst_deph <= 1e-10;
    report(13, ok, "measures invariant under free unitaries; dephasing idempotent and CPTP",
           "worst invariance drift " + num(worst) + ", worst dephasing residual " + num(worst_deph));
}

// 14. The bundled demo reproduces the worked examples and exits cleanly.
void criterion_14(const char* cli) {
    if (!cli) {
        report(14, false, "demo subcommand reproduces the worked examples",
               "no CLI path supplied on the command line");
        return;
    }
    const std::string cmd = std::string("\"") + cli + "\" demo 2>&1";
    std::FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        report(14, false, "demo subcommand reproduces the worked examples", "failed to launch");
        return;
    }
    std::string output;
    char buf[512];
    while (std::fgets(buf, sizeof(buf), pipe)) output += buf;
    const int status = pclose(pipe);
    const bool exited_zero = WIFEXITED(status) && WEXITSTATUS(status) == 0;
    const bool has_mc = output.find("C_l1(MC, M=4) = 3") != std::string::npos;
    const bool has_bdp = output.find("BDP(H) = 1") != std::string::npos;
    const bool no_fail = output.find("FAIL") == std::string::npos;
    report(14, exited_zero && has_mc && has_bdp && no_fail,
           "demo subcommand reproduces the worked examples",
           std::string("exit ") + (exited_zero ? "0" : "nonzero") + ", labels " +
               ((has_mc && has_bdp) ? "found" : "missing"));
}

}  // namespace

int main(int argc, char** argv) {
    const char* cli = argc > 1 ? argv[1] : nullptr;
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    criterion_13();
    criterion_14(cli);
    if (g_failures == 0)
        std::printf("all 14 criteria passed\n");
    else
        std::printf("%d criteria failed\n", g_failures);
    return g_failures;
}
