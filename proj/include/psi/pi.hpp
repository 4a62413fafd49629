#pragma once

#include "psi/instance.hpp"

namespace psi {

/// Polyadic-free pi-calculus as an instance: channels are names, the only
/// assertion is the unit, and channel equivalence is name equality.
const Instance& pi_instance();

}  // namespace psi
