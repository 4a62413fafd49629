#pragma once

#include <cstdint>

#include "psi/dcr.hpp"
#include "psi/instance.hpp"
#include "psi/semantics.hpp"

namespace psi {

/// Instance whose assertions are markings with a generation counter;
/// composition keeps the newest generation, entailment mirrors enabledness.
const Instance& dcr_psi_instance();

Assertion dcr_assertion(const NameSet& executed, const NameSet& responses,
                        const NameSet& included, std::uint64_t generation);
Condition dcr_condition(const NameSet& conditions, const NameSet& milestones, const Name& e);

/// The raw entailment formula on marking components.
bool dcr_entails(const NameSet& executed, const NameSet& responses, const NameSet& included,
                 const NameSet& conditions, const NameSet& milestones, const Name& e);

/// Channel used for circulating the marking; distinct from every event.
Name dcr_channel(const DcrGraph& g);

/// Encodes a DCR at a marking: the marking as assertion and message, plus a
/// replicated guarded reader per event that republishes the updated marking.
ProcessPtr dcrpsi(const DcrGraph& g, const Marking& m);

/// Output prefixes not guarded by any input, case, or replication.
std::size_t count_outputs(const ProcessPtr& p);

}  // namespace psi
