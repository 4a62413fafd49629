#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "psi/instance.hpp"
#include "psi/process.hpp"

namespace psi {

/// Frame of a process: its top-level assertions composed under the
/// restrictions that scope over them.
struct Frame {
  std::vector<Name> binders;
  Assertion assertion;
};

Frame frame(const Instance& inst, const Process& p);

/// Frame equality up to renaming of binders and assertion equivalence.
bool frame_equal(const Instance& inst, const Frame& a, const Frame& b);

std::string to_string(const Frame& f);

/// Capture-avoiding substitution of ground terms for free variables.
ProcessPtr substitute(const ProcessPtr& p, const Binding& binding);

/// Renames free occurrences of a name; restriction binders are untouched
/// (callers rename a binder by rebuilding the restriction).
ProcessPtr rename_free_name(const ProcessPtr& p, const Name& from, const Name& to);

struct Action {
  enum class Kind { Out, In, Tau };
  Kind kind = Kind::Tau;
  Term channel;             // Out/In
  std::vector<Name> bound;  // Out: names extruded by the output
  Term payload;             // Out/In

  static Action tau() { return {}; }
  static Action out(Term channel, std::vector<Name> bound, Term payload);
};

std::string to_string(const Action& a);

struct Transition {
  Action action;
  ProcessPtr target;
};

struct TransitionOptions {
  /// Replication unfoldings allowed along one branch of the derivation.
  int unfold_budget = 1;
  /// Hard cap on unfoldings across the whole query; exceeding it throws
  /// BudgetExceeded.
  long max_total_unfoldings = 4096;
};

/// One enabled output: channel, names its payload extrudes, and the full
/// residual process after the send.
struct OutputCap {
  Term channel;
  std::vector<Name> extruded;
  Term payload;
  ProcessPtr residual;
};

/// One enabled input, kept symbolic: the residual still has the pattern
/// variables free; receiving a message instantiates them.
struct InputCap {
  Term channel;
  std::vector<Name> vars;
  Term pattern;
  ProcessPtr open_residual;
};

struct Capabilities {
  std::vector<OutputCap> outputs;
  std::vector<InputCap> inputs;
  std::vector<ProcessPtr> taus;
};

/// All commitments of p under the environment assertion env.
Capabilities capabilities(const Instance& inst, const Assertion& env, const ProcessPtr& p,
                          const TransitionOptions& opts = {});

/// Observable transitions of p: outputs and internal steps, deduplicated
/// up to alpha-renaming and canonical form, in deterministic order.
/// Enabled inputs stay symbolic; query them via capabilities().
std::vector<Transition> transitions(const Instance& inst, const Assertion& env,
                                    const ProcessPtr& p, const TransitionOptions& opts = {});

/// Serialization invariant under renaming of binders; equal keys mean
/// alpha-equivalent processes.
std::string alpha_key(const Process& p);
inline std::string alpha_key(const ProcessPtr& p) { return alpha_key(*p); }

/// Canonical form: parallel compositions flattened and sorted, inert
/// subterms (nil, unit assertions, empty case, replicated nil) removed.
/// Binder names are preserved; compare canonical forms with alpha_key.
ProcessPtr canonical(const Instance& inst, const ProcessPtr& p);

bool canonical_equal(const Instance& inst, const ProcessPtr& a, const ProcessPtr& b);

struct Lts {
  struct Edge {
    std::size_t from;
    std::size_t to;
    Action action;
  };
  std::vector<ProcessPtr> states;  // canonical, states[0] is the root
  std::vector<int> depths;
  std::vector<Edge> edges;
  bool depth_clipped = false;   // some state at the depth bound was not expanded
  bool state_clipped = false;   // the state bound was hit
  bool budget_clipped = false;  // replication budget ran out mid-exploration
  bool truncated() const { return depth_clipped || state_clipped || budget_clipped; }
};

struct ExploreOptions {
  int max_depth = 8;
  std::size_t max_states = 10000;
  TransitionOptions transition;
};

/// Breadth-first reachable fragment of the transition system.
Lts explore(const Instance& inst, const Assertion& env, const ProcessPtr& p,
            const ExploreOptions& opts = {});

}  // namespace psi
