#pragma once

#include <utility>

#include "blockcoh/channels.hpp"

namespace blockcoh {

// Deterministic realization of a unitary by block-incoherent operators,
// paid for with one maximally coherent ancilla: M shift operators plus a
// block-diagonal completion term on the slack of the ancilla blocks.
struct GateProtocol {
    BlockOperator target;     // the unitary being realized
    BlockStructure ancilla;   // ancilla copy of the system partition
    BlockStructure joint;     // product partition on system (x) ancilla
    KrausChannel channel;
};

GateProtocol build_gate_protocol(const BlockOperator& u);

// Feeds |psi> (x) |MC ancilla> through the protocol and partial-traces.
// Returns (system marginal, ancilla marginal); the system marginal is
// U|psi><psi|U', the ancilla marginal the fully dephased MC state.
std::pair<DensityMatrix, DensityMatrix> run_gate_protocol(const GateProtocol& p,
                                                          const PureBlockState& psi);

}  // namespace blockcoh
