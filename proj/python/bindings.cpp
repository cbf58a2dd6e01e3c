#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "blockcoh/conversion.hpp"
#include "blockcoh/gates.hpp"
#include "blockcoh/kcoherence.hpp"
#include "blockcoh/measures.hpp"
#include "blockcoh/powers.hpp"

namespace py = pybind11;
using namespace blockcoh;

PYBIND11_MODULE(_core, m) {
    m.doc() = "resource theory of block coherence: structures, measures, channels, "
              "conversion, gates, powers";

    py::register_exception<Error>(m, "BlockCohError");

    py::class_<BlockStructure>(m, "BlockStructure")
        .def(py::init<std::vector<std::vector<int>>, int>(), py::arg("groups"), py::arg("dim"))
        .def_static("contiguous", &BlockStructure::contiguous, py::arg("dims"))
        .def_static("singletons", &BlockStructure::singletons, py::arg("dim"))
        .def_property_readonly("dim", &BlockStructure::dim)
        .def_property_readonly("blocks", &BlockStructure::blocks)
        .def_property_readonly("groups", &BlockStructure::groups)
        .def("block_dims", &BlockStructure::block_dims)
        .def("projector", &BlockStructure::projector, py::arg("mu"))
        .def("product", &BlockStructure::product, py::arg("ancilla"))
        .def(py::self == py::self);

    py::class_<PureBlockState>(m, "PureBlockState")
        .def_readonly("amplitudes", &PureBlockState::amplitudes)
        .def_readonly("structure", &PureBlockState::structure)
        .def_readonly("weights", &PureBlockState::weights)
        .def_readonly("components", &PureBlockState::components);

    py::class_<DensityMatrix>(m, "DensityMatrix")
        .def(py::init<Matrix>(), py::arg("matrix"))
        .def_static("pure", &DensityMatrix::pure, py::arg("psi"))
        .def_property_readonly("matrix", &DensityMatrix::matrix)
        .def_property_readonly("dim", &DensityMatrix::dim);

    py::class_<BlockOperator>(m, "BlockOperator")
        .def(py::init<Matrix, BlockStructure>(), py::arg("matrix"), py::arg("structure"))
        .def_readonly("matrix", &BlockOperator::matrix)
        .def_readonly("structure", &BlockOperator::structure)
        .def("block", &BlockOperator::block, py::arg("mu"), py::arg("nu"));

    m.def("make_block_structure",
          [](const std::vector<std::vector<int>>& groups, int dim) {
              return BlockStructure(groups, dim);
          },
          py::arg("groups"), py::arg("dim"));
    m.def("decompose", &decompose, py::arg("state"), py::arg("structure"));
    m.def("block_dephase", &block_dephase, py::arg("rho"), py::arg("structure"));
    m.def("maximally_coherent_state", &maximally_coherent_state, py::arg("structure"),
          py::arg("components") = std::nullopt);
    m.def("uniform_component", &uniform_component, py::arg("structure"), py::arg("mu"));
    m.def("haar_random_unitary", &haar_random_unitary, py::arg("n"), py::arg("seed"));
    m.def("tensor", &tensor, py::arg("a"), py::arg("b"));
    m.def("partial_trace_second", &partial_trace_second, py::arg("rho"), py::arg("da"),
          py::arg("db"));
    m.def("partial_trace_first", &partial_trace_first, py::arg("rho"), py::arg("da"),
          py::arg("db"));

    m.def("von_neumann_entropy", &von_neumann_entropy, py::arg("rho"));
    m.def("trace_norm", &trace_norm, py::arg("a"));
    m.def("c_entropy", &c_entropy, py::arg("rho"), py::arg("structure"));
    m.def("c_l1", &c_l1, py::arg("rho"), py::arg("structure"));
    m.def("coherence_rank", &coherence_rank, py::arg("psi"), py::arg("tol") = 1e-9);

    py::class_<KrausChannel>(m, "KrausChannel")
        .def(py::init<std::vector<Matrix>, BlockStructure>(), py::arg("kraus"),
             py::arg("structure"))
        .def_readonly("kraus", &KrausChannel::kraus)
        .def_readonly("in_structure", &KrausChannel::in_structure)
        .def_readonly("out_structure", &KrausChannel::out_structure);

    py::class_<CptpReport>(m, "CptpReport")
        .def_readonly("ok", &CptpReport::ok)
        .def_readonly("residual", &CptpReport::residual);

    py::class_<IncoherenceVerdict>(m, "IncoherenceVerdict")
        .def_readonly("is_block_incoherent", &IncoherenceVerdict::is_block_incoherent)
        .def_readonly("kraus_maps", &IncoherenceVerdict::kraus_maps)
        .def_readonly("violating_kraus", &IncoherenceVerdict::violating_kraus)
        .def_readonly("violating_column", &IncoherenceVerdict::violating_column);

    m.def("validate_cptp", &validate_cptp, py::arg("channel"));
    m.def("apply", &apply, py::arg("channel"), py::arg("rho"));
    m.def("classify_block_incoherent", &classify_block_incoherent, py::arg("channel"));
    m.def("block_dephasing_channel", &block_dephasing_channel, py::arg("structure"));
    m.def("unitary_channel", &unitary_channel, py::arg("u"));
    m.def("is_dephasing_covariant", &is_dephasing_covariant, py::arg("channel"),
          py::arg("structure"), py::arg("samples") = 5);

    m.def("majorizes",
          [](const std::vector<double>& p, const std::vector<double>& q) {
              return majorizes(ProbabilityVector(p), ProbabilityVector(q));
          },
          py::arg("p"), py::arg("q"));
    m.def("solve_gammas",
          [](const std::vector<double>& x, const std::vector<double>& y) {
              return solve_gammas(ProbabilityVector(x), ProbabilityVector(y));
          },
          py::arg("x"), py::arg("y"));

    py::class_<ConversionPlan>(m, "ConversionPlan")
        .def_readonly("feasible", &ConversionPlan::feasible)
        .def_readonly("sigma_x", &ConversionPlan::sigma_x)
        .def_readonly("sigma_y", &ConversionPlan::sigma_y)
        .def_readonly("gammas_sq", &ConversionPlan::gammas_sq)
        .def_readonly("expected_overlaps", &ConversionPlan::expected_overlaps)
        .def_readonly("diagnostic", &ConversionPlan::diagnostic)
        .def_property_readonly("channel", [](const ConversionPlan& p) -> py::object {
            if (!p.channel) return py::none();
            return py::cast(*p.channel);
        });

    py::class_<ConversionReport>(m, "ConversionReport")
        .def_readonly("worst_kraus_deviation", &ConversionReport::worst_kraus_deviation)
        .def_readonly("cptp_residual", &ConversionReport::cptp_residual)
        .def_readonly("block_incoherent", &ConversionReport::block_incoherent)
        .def_readonly("fidelity", &ConversionReport::fidelity);

    py::class_<NecessityCertificate>(m, "NecessityCertificate")
        .def_readonly("alphas", &NecessityCertificate::alphas)
        .def_readonly("alpha_norm_sq", &NecessityCertificate::alpha_norm_sq)
        .def_readonly("B", &NecessityCertificate::B)
        .def_readonly("mixed", &NecessityCertificate::mixed)
        .def_readonly("chain_lower", &NecessityCertificate::chain_lower)
        .def_readonly("chain_upper", &NecessityCertificate::chain_upper);

    m.def("build_conversion_channel", &build_conversion_channel, py::arg("src"), py::arg("dst"));
    m.def("verify_conversion", &verify_conversion, py::arg("plan"), py::arg("src"),
          py::arg("dst"));
    m.def("necessity_certificate", &necessity_certificate, py::arg("channel"), py::arg("src"),
          py::arg("dst"));

    py::class_<GateProtocol>(m, "GateProtocol")
        .def_readonly("target", &GateProtocol::target)
        .def_readonly("ancilla", &GateProtocol::ancilla)
        .def_readonly("joint", &GateProtocol::joint)
        .def_readonly("channel", &GateProtocol::channel);

    m.def("build_gate_protocol", &build_gate_protocol, py::arg("u"));
    m.def("run_gate_protocol", &run_gate_protocol, py::arg("protocol"), py::arg("psi"));

    py::class_<AscentOptions>(m, "AscentOptions")
        .def(py::init([](int restarts, int max_iters, double tol, std::uint64_t seed) {
                 AscentOptions o;
                 o.restarts = restarts;
                 o.max_iters = max_iters;
                 o.tol = tol;
                 o.seed = seed;
                 return o;
             }),
             py::arg("restarts") = 32, py::arg("max_iters") = 500, py::arg("tol") = 1e-10,
             py::arg("seed") = kDefaultSeed)
        .def_readwrite("restarts", &AscentOptions::restarts)
        .def_readwrite("max_iters", &AscentOptions::max_iters)
        .def_readwrite("tol", &AscentOptions::tol)
        .def_readwrite("seed", &AscentOptions::seed);

    py::class_<PowerResult>(m, "PowerResult")
        .def_readonly("value", &PowerResult::value)
        .def_readonly("block_index", &PowerResult::block_index)
        .def_readonly("optimizer_states", &PowerResult::optimizer_states)
        .def_readonly("method", &PowerResult::method)
        .def_readonly("restarts", &PowerResult::restarts)
        .def_readonly("best_second_gap", &PowerResult::best_second_gap);

    py::class_<MixtureTerm>(m, "MixtureTerm")
        .def(py::init([](double p, Matrix u, Matrix v) {
                 return MixtureTerm{p, std::move(u), std::move(v)};
             }),
             py::arg("p"), py::arg("u"), py::arg("v"))
        .def_readonly("p", &MixtureTerm::p)
        .def_readonly("u", &MixtureTerm::u)
        .def_readonly("v", &MixtureTerm::v);

    m.def("bcp", &bcp, py::arg("channel"), py::arg("structure"),
          py::arg("opts") = AscentOptions{});
    m.def("bcp_unitary", &bcp_unitary, py::arg("u"), py::arg("opts") = AscentOptions{});
    m.def("bcp_random_unitary", &bcp_random_unitary, py::arg("terms"), py::arg("structure"),
          py::arg("opts") = AscentOptions{});
    m.def("bdp", &bdp, py::arg("channel"), py::arg("structure"),
          py::arg("opts") = AscentOptions{});
    m.def("bdp_unitary", &bdp_unitary, py::arg("u"), py::arg("opts") = AscentOptions{});

    py::class_<RankBoundedStructureFamily>(m, "RankBoundedStructureFamily")
        .def_readonly("d", &RankBoundedStructureFamily::d)
        .def_readonly("k", &RankBoundedStructureFamily::k)
        .def_readonly("structures", &RankBoundedStructureFamily::structures);

    py::class_<CkCertificate>(m, "CkCertificate")
        .def_readonly("weights", &CkCertificate::weights)
        .def_readonly("states", &CkCertificate::states)
        .def_readonly("residual", &CkCertificate::residual);

    py::class_<ProbeReport>(m, "ProbeReport")
        .def_readonly("trials_membership", &ProbeReport::trials_membership)
        .def_readonly("violations_membership", &ProbeReport::violations_membership)
        .def_readonly("trials_support", &ProbeReport::trials_support)
        .def_readonly("violations_support", &ProbeReport::violations_support)
        .def_readonly("summary", &ProbeReport::summary);

    m.def("enumerate_structures", &enumerate_structures, py::arg("d"), py::arg("k"));
    m.def("in_block_incoherent_set", &in_block_incoherent_set, py::arg("rho"),
          py::arg("structure"));
    m.def("ck_certificate", &ck_certificate, py::arg("rho"), py::arg("structure"), py::arg("k"));
    m.def("conjecture_probe", &conjecture_probe, py::arg("d"), py::arg("k"), py::arg("trials"),
          py::arg("seed") = kDefaultSeed);
}
