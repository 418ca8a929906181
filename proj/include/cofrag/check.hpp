#pragma once

#include <ostream>

namespace cofrag {

// Randomized invariant suite used by the `check` CLI subcommand: structural
// identities of the discrete operator, equilibrium solves and a short
// simulation, on small instances. Prints one line per property; returns
// true when every property held.
bool run_checks(unsigned long seed, std::ostream& out);

}  // namespace cofrag
