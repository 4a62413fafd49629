#pragma once

#include <string>

#include "psi/semantics.hpp"

namespace psi {

/// Graphviz digraph: one node per state labelled by its process term,
/// one edge per transition labelled by its action.
std::string lts_to_dot(const Lts& lts, const std::string& graph_name = "lts");

}  // namespace psi
