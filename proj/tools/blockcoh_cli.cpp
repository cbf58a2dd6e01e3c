#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "blockcoh/conversion.hpp"
#include "blockcoh/gates.hpp"
#include "blockcoh/io.hpp"
#include "blockcoh/kcoherence.hpp"
#include "blockcoh/measures.hpp"
#include "blockcoh/powers.hpp"

namespace {

using namespace blockcoh;
using io::json;

constexpr int kOk = 0;
constexpr int kValidation = 2;
constexpr int kInfeasible = 3;
constexpr int kVerification = 4;

std::uint64_t env_seed() {
    if (const char* s = std::getenv("BLOCKCOH_SEED")) return std::strtoull(s, nullptr, 0);
    return kDefaultSeed;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

void emit(bool as_json, const json& doc) {
    if (as_json) {
        std::cout << doc.dump(2) << '\n';
        return;
    }
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        std::cout << it.key() << "=";
        if (it->is_string())
            std::cout << it->get<std::string>();
        else
            std::cout << it->dump();
        std::cout << '\n';
    }
}

json structure_summary(const BlockStructure& s) {
    json dims = json::array();
    for (int mu = 0; mu < s.blocks(); ++mu) dims.push_back(s.block_dim(mu));
    return json{{"blocks", s.blocks()}, {"dims", dims}, {"dim", s.dim()}};
}

int run_measure(const std::string& state_path, const std::string& structure_path, bool density,
                bool as_json) {
    BlockStructure s = io::parse_structure(io::load_document(structure_path));
    json out;
    out["structure"] = structure_summary(s);
    if (density) {
        DensityMatrix rho(io::parse_square_matrix(io::load_document(state_path)));
        auto rep = coherence_report(rho, s);
        out["c_entropy"] = rep.c_entropy;
        out["c_l1"] = rep.c_l1;
    } else {
        PureBlockState psi = decompose(io::parse_amplitudes(io::load_document(state_path)), s);
        DensityMatrix rho = DensityMatrix::pure(psi.amplitudes);
        out["c_entropy"] = c_entropy(rho, s);
        out["c_l1"] = c_l1(rho, s);
        out["coherence_rank"] = coherence_rank(psi.amplitudes);
        json w = json::array();
        for (double x : psi.weights) w.push_back(x);
        out["block_weights"] = w;
    }
    emit(as_json, out);
    return kOk;
}

// Names the first violated prefix-sum inequality, if any.
std::string majorization_diagnosis(const PureBlockState& src, const PureBlockState& dst) {
    std::vector<double> x2, y2;
    for (double v : src.weights) x2.push_back(v * v);
    for (double v : dst.weights) y2.push_back(v * v);
    std::sort(x2.begin(), x2.end(), std::greater<>());
    std::sort(y2.begin(), y2.end(), std::greater<>());
    double px = 0.0, py = 0.0;
    for (std::size_t k = 0; k < x2.size(); ++k) {
        px += x2[k];
        py += y2[k];
        if (py < px - 1e-9)
            return "target fails majorization at prefix sum " + std::to_string(k + 1) + ": " +
                   fmt(py) + " < " + fmt(px);
    }
    return "";
}

int run_convert(const std::string& from_path, const std::string& to_path,
                const std::string& structure_path, const std::string& emit_kraus, bool as_json) {
    BlockStructure s = io::parse_structure(io::load_document(structure_path));
    PureBlockState src = decompose(io::parse_amplitudes(io::load_document(from_path)), s);
    PureBlockState dst = decompose(io::parse_amplitudes(io::load_document(to_path)), s);

    ConversionPlan plan = build_conversion_channel(src, dst);
    if (!plan.feasible) {
        std::string why = majorization_diagnosis(src, dst);
        if (why.empty()) why = plan.diagnostic;
        if (as_json)
            std::cout << json{{"feasible", false}, {"reason", why}}.dump(2) << '\n';
        else
            std::cout << "feasible=false\nreason=" << why << '\n';
        return kInfeasible;
    }
    ConversionReport rep = verify_conversion(plan, src, dst);

    json out;
    out["feasible"] = true;
    json g = json::array();
    for (double v : plan.gammas_sq) g.push_back(v);
    out["gammas_sq"] = g;
    out["kraus_count"] = plan.channel->kraus.size();
    out["fidelity"] = rep.fidelity;
    out["cptp_residual"] = rep.cptp_residual;
    out["block_incoherent"] = rep.block_incoherent;
    if (!emit_kraus.empty()) {
        io::save_document(emit_kraus, io::channel_to_json(*plan.channel));
        out["kraus_file"] = emit_kraus;
    }
    emit(as_json, out);
    return kOk;
}

int run_check_channel(const std::string& channel_path, const std::string& structure_path,
                      bool as_json) {
    BlockStructure s = io::parse_structure(io::load_document(structure_path));
    KrausChannel ch = io::parse_channel(io::load_document(channel_path), s);
    auto rep = validate_cptp(ch);
    auto verdict = classify_block_incoherent(ch);

    json out;
    out["cptp"] = rep.ok;
    out["cptp_residual"] = rep.residual;
    out["block_incoherent"] = verdict.is_block_incoherent;
    if (!verdict.is_block_incoherent) {
        out["violating_kraus"] = verdict.violating_kraus;
        out["violating_column"] = verdict.violating_column;
    } else {
        json maps = json::array();
        for (const auto& m : verdict.kraus_maps) maps.push_back(m);
        out["kraus_block_maps"] = maps;
    }
    out["dephasing_covariant"] = is_dephasing_covariant(ch, s, 5);
    emit(as_json, out);
    return kOk;
}

int run_power(bool cohering, const std::string& channel_path, const std::string& structure_path,
              int restarts, std::uint64_t seed, bool as_json) {
    BlockStructure s = io::parse_structure(io::load_document(structure_path));
    KrausChannel ch = io::parse_channel(io::load_document(channel_path), s);
    AscentOptions opts;
    opts.restarts = restarts;
    opts.seed = seed;
    PowerResult r = cohering ? bcp(ch, s, opts) : bdp(ch, s, opts);

    json out;
    out["value"] = r.value;
    out["method"] = r.method;
    out["restarts"] = r.restarts;
    out["best_second_gap"] = r.best_second_gap;
    if (r.block_index >= 0) out["block_index"] = r.block_index;
    emit(as_json, out);
    return kOk;
}

int run_gate(const std::string& unitary_path, const std::string& structure_path,
             const std::string& state_path, bool as_json) {
    BlockStructure s = io::parse_structure(io::load_document(structure_path));
    Matrix u = io::parse_square_matrix(io::load_document(unitary_path));
    if (unitarity_residual(u) > kTol) throw NotUnitary("matrix file is not unitary");
    BlockOperator target(u, s);
    PureBlockState psi = decompose(io::parse_amplitudes(io::load_document(state_path)), s);

    GateProtocol protocol = build_gate_protocol(target);
    auto [sys, anc] = run_gate_protocol(protocol, psi);

    Vector expect = u * psi.amplitudes;
    double fid = (expect.adjoint() * sys.matrix() * expect).real()(0, 0);
    PureBlockState mc = maximally_coherent_state(s);

    json out;
    out["kraus_count"] = protocol.channel.kraus.size();
    out["system_fidelity"] = fid;
    out["ancilla_c_l1_before"] = c_l1(DensityMatrix::pure(mc.amplitudes), s);
    out["ancilla_c_l1_after"] = c_l1(anc, s);
    emit(as_json, out);
    return kOk;
}

int run_kcoh(int d, int k, int trials, std::uint64_t seed, bool as_json) {
    auto fam = enumerate_structures(d, k);
    auto rep = conjecture_probe(d, k, trials, seed);

    json out;
    out["structures"] = fam.structures.size();
    out["trials_membership"] = rep.trials_membership;
    out["violations_membership"] = rep.violations_membership;
    out["trials_support"] = rep.trials_support;
    out["violations_support"] = rep.violations_support;
    out["summary"] = rep.summary;
    emit(as_json, out);
    return (rep.violations_membership + rep.violations_support == 0) ? kOk : kVerification;
}

int run_demo(std::uint64_t seed, bool as_json) {
    struct Row {
        std::string label;
        double expected, got, tol;
    };
    std::vector<Row> rows;
    AscentOptions opts;
    opts.restarts = 16;
    opts.seed = seed;

    for (int m = 2; m <= 4; ++m) {
        std::vector<int> dims;
        for (int i = 0; i < m; ++i) dims.push_back(1 + (i % 2));
        BlockStructure s = BlockStructure::contiguous(dims);
        PureBlockState mc = maximally_coherent_state(s);
        double got = c_l1(DensityMatrix::pure(mc.amplitudes), s);
        rows.push_back({"C_l1(MC, M=" + std::to_string(m) + ") = " + std::to_string(m - 1),
                        double(m - 1), got, 1e-9});
    }

    auto two_block = [](Cx a, Cx b, const Matrix& v) {
        const int n = static_cast<int>(v.rows());
        Matrix u = Matrix::Zero(2 * n, 2 * n);
        u.topLeftCorner(n, n) = a * Matrix::Identity(n, n);
        u.topRightCorner(n, n) = b * v;
        u.bottomLeftCorner(n, n) = -std::conj(b) * v.adjoint();
        u.bottomRightCorner(n, n) = std::conj(a) * Matrix::Identity(n, n);
        return BlockOperator(u, BlockStructure::contiguous({n, n}));
    };

    Rng rng(seed);
    Matrix v2 = rng.haar_unitary(2);
    const double a = std::sqrt(3.0) / 2.0, b = 0.5;

    rows.push_back({"BCP(H) = 1", 1.0,
                    bcp_unitary(two_block(Cx(1 / std::sqrt(2.0), 0), Cx(1 / std::sqrt(2.0), 0),
                                          Matrix::Identity(2, 2)),
                                opts)
                        .value,
                    1e-6});
    rows.push_back(
        {"BCP(U(a,b)) = 2|ab|", 2 * a * b, bcp_unitary(two_block(Cx(a, 0), Cx(b, 0), v2), opts).value,
         1e-6});

    const double p = 0.75;
    Matrix u2(2, 2);
    u2 << Cx(a, 0), Cx(b, 0), Cx(-b, 0), Cx(a, 0);
    std::vector<MixtureTerm> terms = {{1 - p, Matrix::Identity(2, 2), Matrix::Identity(2, 2)},
                                      {p, u2, rng.haar_unitary(2)}};
    rows.push_back({"BCP(mix) = 2p|ab|", 2 * p * a * b,
                    bcp_random_unitary(terms, BlockStructure::contiguous({2, 2}), opts).value,
                    1e-6});

    rows.push_back({"BDP(U(a,b)) = 0.5", 1.0 - std::sqrt(1.0 - 4 * a * a * b * b),
                    bdp_unitary(two_block(Cx(a, 0), Cx(b, 0), v2), opts).value, 1e-6});
    rows.push_back({"BDP(H) = 1", 1.0,
                    bdp_unitary(two_block(Cx(1 / std::sqrt(2.0), 0), Cx(1 / std::sqrt(2.0), 0),
                                          rng.haar_unitary(2)),
                                opts)
                        .value,
                    1e-6});

    Matrix uu = rng.haar_unitary(2), vv = rng.haar_unitary(2);
    double bdp_u = bdp_unitary(BlockOperator(uu, BlockStructure::singletons(2)), opts).value;
    double bdp_uv = bdp_unitary(tensor(uu, vv), opts).value;
    rows.push_back({"BDP(UxV) = BDP(U)", bdp_u, bdp_uv, 1e-5});

    bool all_ok = true;
    json jrows = json::array();
    for (const auto& r : rows) {
        const bool ok = std::abs(r.got - r.expected) <= r.tol;
        all_ok = all_ok && ok;
        if (as_json) {
            jrows.push_back({{"check", r.label},
                             {"expected", r.expected},
                             {"value", r.got},
                             {"tol", r.tol},
                             {"pass", ok}});
        } else {
            std::cout << std::left << std::setw(26) << r.label << "  value=" << std::setprecision(12)
                      << r.got << "  " << (ok ? "PASS" : "FAIL") << '\n';
        }
    }
    if (as_json) std::cout << json{{"rows", jrows}, {"pass", all_ok}}.dump(2) << '\n';
    return all_ok ? kOk : kVerification;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"block coherence toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // lets global flags like --json trail the subcommand
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable output");

    std::string state_path, structure_path, from_path, to_path, channel_path, unitary_path;
    std::string emit_kraus;
    bool density = false;
    int restarts = 32;
    int d = 4, k = 2, trials = 500;
    std::uint64_t seed = env_seed();

    auto* measure = app.add_subcommand("measure", "coherence measures of a state");
    measure->add_option("--state", state_path)->required();
    measure->add_option("--structure", structure_path)->required();
    measure->add_flag("--density", density, "state file holds a density matrix");

    auto* convert = app.add_subcommand("convert", "pure-state conversion channel");
    convert->add_option("--from", from_path)->required();
    convert->add_option("--to", to_path)->required();
    convert->add_option("--structure", structure_path)->required();
    convert->add_option("--emit-kraus", emit_kraus, "write the Kraus set to this file");

    auto* check = app.add_subcommand("check-channel", "CPTP and incoherence classification");
    check->add_option("--channel", channel_path)->required();
    check->add_option("--structure", structure_path)->required();

    auto* bcp_cmd = app.add_subcommand("bcp", "block-cohering power");
    bcp_cmd->add_option("--channel", channel_path)->required();
    bcp_cmd->add_option("--structure", structure_path)->required();
    bcp_cmd->add_option("--restarts", restarts);
    bcp_cmd->add_option("--seed", seed);

    auto* bdp_cmd = app.add_subcommand("bdp", "block-decohering power");
    bdp_cmd->add_option("--channel", channel_path)->required();
    bdp_cmd->add_option("--structure", structure_path)->required();
    bdp_cmd->add_option("--restarts", restarts);
    bdp_cmd->add_option("--seed", seed);

    auto* gate = app.add_subcommand("gate", "ancilla-assisted gate protocol");
    gate->add_option("--unitary", unitary_path)->required();
    gate->add_option("--structure", structure_path)->required();
    gate->add_option("--state", state_path)->required();

    auto* kcoh = app.add_subcommand("kcoh", "rank-bounded structures and probe");
    kcoh->add_option("--d", d);
    kcoh->add_option("--k", k);
    kcoh->add_option("--trials", trials);
    kcoh->add_option("--seed", seed);

    auto* demo = app.add_subcommand("demo", "reproduce the worked examples");
    demo->add_option("--seed", seed);

    try {
        app.parse(argc, argv);
        if (measure->parsed()) return run_measure(state_path, structure_path, density, as_json);
        if (convert->parsed())
            return run_convert(from_path, to_path, structure_path, emit_kraus, as_json);
        if (check->parsed()) return run_check_channel(channel_path, structure_path, as_json);
        if (bcp_cmd->parsed())
            return run_power(true, channel_path, structure_path, restarts, seed, as_json);
        if (bdp_cmd->parsed())
            return run_power(false, channel_path, structure_path, restarts, seed, as_json);
        if (gate->parsed()) return run_gate(unitary_path, structure_path, state_path, as_json);
        if (kcoh->parsed()) return run_kcoh(d, k, trials, seed, as_json);
        if (demo->parsed()) return run_demo(seed, as_json);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kValidation;
    } catch (const Infeasible& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInfeasible;
    } catch (const VerificationFailed& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kVerification;
    } catch (const CertificateViolation& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kVerification;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    }
    return kValidation;
}
