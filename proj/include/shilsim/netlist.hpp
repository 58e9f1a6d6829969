#pragma once

#include <string_view>

#include "shilsim/logic.hpp"

namespace shilsim {

/// Parses the gate netlist text format:
///
///   # comment
///   input a b
///   output sum
///   latch Q(D, EN)
///   x = MAJ(a, b, c)
///   y = NOT(x)
///   z = CONST 0
///
/// Returns a finalized network. Throws SyntaxError (with line/column),
/// MultipleDrivers, UndrivenNode, or CombinationalCycle.
GateNetwork parse_netlist(std::string_view text);

} // namespace shilsim
