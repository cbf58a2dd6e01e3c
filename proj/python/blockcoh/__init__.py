"""Resource theory of block coherence: thin wrapper over the C++ core."""

from ._core import (  # noqa: F401
    AscentOptions,
    BlockCohError,
    BlockOperator,
    BlockStructure,
    CkCertificate,
    ConversionPlan,
    ConversionReport,
    CptpReport,
    DensityMatrix,
    GateProtocol,
    IncoherenceVerdict,
    KrausChannel,
    MixtureTerm,
    NecessityCertificate,
    PowerResult,
    ProbeReport,
    PureBlockState,
    RankBoundedStructureFamily,
    apply,
    bcp,
    bcp_random_unitary,
    bcp_unitary,
    bdp,
    bdp_unitary,
    block_dephase,
    block_dephasing_channel,
    build_conversion_channel,
    build_gate_protocol,
    c_entropy,
    c_l1,
    ck_certificate,
    classify_block_incoherent,
    coherence_rank,
    conjecture_probe,
    decompose,
    enumerate_structures,
    haar_random_unitary,
    in_block_incoherent_set,
    is_dephasing_covariant,
    majorizes,
    make_block_structure,
    maximally_coherent_state,
    necessity_certificate,
    partial_trace_first,
    partial_trace_second,
    run_gate_protocol,
    solve_gammas,
    tensor,
    trace_norm,
    uniform_component,
    unitary_channel,
    validate_cptp,
    verify_conversion,
    von_neumann_entropy,
)

__all__ = [name for name in dir() if not name.startswith("_")]
