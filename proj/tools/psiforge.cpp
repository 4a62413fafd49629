// Command-line front end: encodes model files into processes, explores and
// renders transition systems, runs the property-check suites, steps through
// executions interactively, and refines labelled structures.
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "psi/checks.hpp"
#include "psi/dcr.hpp"
#include "psi/dcr_psi.hpp"
#include "psi/dot.hpp"
#include "psi/errors.hpp"
#include "psi/event_psi.hpp"
#include "psi/parse.hpp"
#include "psi/pi.hpp"

using namespace psi;

namespace {

struct Loaded {
  ProcessPtr process;
  const Instance* instance = nullptr;
};

/// Replays a configuration onto the embedded graph; any enabled-first order
/// reaches the same marking.
Marking replay_config(const DcrGraph& g, Marking m, const Configuration& config) {
  NameSet remaining = config;
  while (!remaining.empty()) {
    bool progressed = false;
    for (const auto& e : remaining) {
      if (!dcr_enabled(g, m, e)) continue;
      m = dcr_execute(g, m, e);
      remaining.erase(e);
      progressed = true;
      break;
    }
    if (!progressed)
      throw ValidationError("config cannot be replayed onto the embedded graph");
  }
  return m;
}

Loaded load_process(const std::filesystem::path& file, const std::string& encode) {
  std::string ext = file.extension().string();
  if (ext == ".es") {
    EsFile f = parse_es(read_file(file));
    if (encode == "dcrpsi") {
      auto [g, m] = es_to_dcr(f.es);
      if (f.config) m = replay_config(g, m, *f.config);
      return {dcrpsi(g, m), &dcr_psi_instance()};
    }
    return {espsi(f.es, f.config.value_or(Configuration())), &event_psi_instance()};
  }
  if (ext == ".dcr") {
    if (encode == "espsi")
      throw ValidationError("graph files only support the dcrpsi encoding");
    DcrFile f = parse_dcr(read_file(file));
    return {dcrpsi(f.graph, f.marking), &dcr_psi_instance()};
  }
  if (ext == ".pi") {
    if (!encode.empty())
      throw ValidationError("process files are used directly; --encode does not apply");
    return {parse_pi(read_file(file)), &pi_instance()};
  }
  throw ValidationError("unrecognized file type '" + ext + "' (expected .es, .dcr, or .pi)");
}

void print_lts_text(const Lts& lts) {
  std::printf("states: %zu\n", lts.states.size());
  std::printf("edges: %zu\n", lts.edges.size());
  if (lts.depth_clipped) std::printf("truncated: depth bound hit\n");
  if (lts.state_clipped) std::printf("truncated: state bound hit\n");
  if (lts.budget_clipped) std::printf("truncated: replication budget exhausted\n");
  for (std::size_t i = 0; i < lts.states.size(); ++i)
    std::printf("s%zu: %s\n", i, to_string(lts.states[i]).c_str());
  for (const auto& e : lts.edges)
    std::printf("s%zu -> s%zu  %s\n", e.from, e.to, to_string(e.action).c_str());
}

int run_checks(const std::vector<std::string>& names, const CheckOptions& opts) {
  std::vector<std::string> picked;
  for (const auto& name : names) {
    if (name == "all") {
      auto all = check_names();
      picked.insert(picked.end(), all.begin(), all.end());
    } else {
      picked.push_back(name);
    }
  }
  bool ok = true;
  for (const auto& name : picked) {
    CheckReport report = run_check(name, opts);
    std::printf("%s\n", format_report(report).c_str());
    ok = ok && report.passed();
  }
  return ok ? 0 : 2;
}

/// Reads one choice per prompt; empty input or q ends the session.
int run_step_loop(const std::filesystem::path& file) {
  std::string ext = file.extension().string();
  if (ext == ".dcr") {
    DcrFile f = parse_dcr(read_file(file));
    Marking m = f.marking;
    std::string line;
    for (;;) {
      std::printf("%s\n", to_string(m).c_str());
      auto ts = dcr_transitions(f.graph, m);
      if (ts.empty()) {
        std::printf("no enabled events\n");
        return 0;
      }
      for (std::size_t i = 0; i < ts.size(); ++i)
        std::printf("  %zu: %s\n", i + 1, ts[i].first.id.c_str());
      std::printf("event> ");
      std::fflush(stdout);
      if (!std::getline(std::cin, line) || line == "q" || line.empty()) return 0;
      bool applied = false;
      for (const auto& [e, next] : ts) {
        if (e.id == line) {
          m = next;
          applied = true;
          break;
        }
      }
      if (!applied) std::printf("not enabled: %s\n", line.c_str());
    }
  }
  if (ext == ".es") {
    EsFile f = parse_es(read_file(file));
    Configuration c = f.config.value_or(Configuration());
    std::string line;
    for (;;) {
      std::printf("config: %s\n", to_string(c).c_str());
      std::vector<Name> enabled;
      for (const auto& e : f.es.events)
        if (es_enabled(f.es, c, e)) enabled.push_back(e);
      if (enabled.empty()) {
        std::printf("no enabled events\n");
        return 0;
      }
      for (std::size_t i = 0; i < enabled.size(); ++i)
        std::printf("  %zu: %s\n", i + 1, enabled[i].id.c_str());
      std::printf("event> ");
      std::fflush(stdout);
      if (!std::getline(std::cin, line) || line == "q" || line.empty()) return 0;
      auto it = std::find(enabled.begin(), enabled.end(), Name(line));
      if (it == enabled.end()) {
        std::printf("not enabled: %s\n", line.c_str());
        continue;
      }
      c = es_step(f.es, c, *it);
    }
  }
  if (ext == ".pi") {
    Loaded l = load_process(file, "");
    ProcessPtr p = l.process;
    std::string line;
    for (;;) {
      std::printf("%s\n", to_string(p).c_str());
      auto ts = transitions(*l.instance, l.instance->unit(), p);
      if (ts.empty()) {
        std::printf("no transitions\n");
        return 0;
      }
      for (std::size_t i = 0; i < ts.size(); ++i)
        std::printf("  %zu: %s\n", i + 1, to_string(ts[i].action).c_str());
      std::printf("transition> ");
      std::fflush(stdout);
      if (!std::getline(std::cin, line) || line == "q" || line.empty()) return 0;
      std::size_t pick = 0;
      try {
        pick = std::stoul(line);
      } catch (...) {
        std::printf("pick a number between 1 and %zu\n", ts.size());
        continue;
      }
      if (pick < 1 || pick > ts.size()) {
        std::printf("pick a number between 1 and %zu\n", ts.size());
        continue;
      }
      p = canonical(*l.instance, ts[pick - 1].target);
    }
  }
  throw ValidationError("unrecognized file type for stepping (expected .es, .dcr, or .pi)");
}

int run_refine(const std::filesystem::path& file, const std::filesystem::path& map_file) {
  EsFile f = parse_es(read_file(file));
  RefinementFunction ref = load_refinement_map(map_file);
  EventStructure refined = refine_es(f.es, ref);

  Configuration base = f.config.value_or(Configuration());
  Configuration refined_config;
  for (const auto& e : base)
    for (const auto& u : ref.at(f.es.label_of(e)).events)
      refined_config.insert(pair_name(e, u));

  std::optional<Configuration> out_config;
  if (f.config) out_config = refined_config;
  std::printf("%s", serialize_es(refined, out_config).c_str());

  const Instance& inst = event_psi_instance();
  ProcessPtr via_structures = espsi(refined, refined_config);
  ProcessPtr via_processes = refine_psi(espsi(f.es, base), ref, f.es.labels);
  std::printf("process: %s\n", to_string(canonical(inst, via_processes)).c_str());
  bool agree = canonical_equal(inst, via_structures, via_processes);
  std::printf("agreement: %s\n", agree ? "yes" : "no");
  return agree ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"process-calculus workbench for event structures and DCR graphs"};
  app.require_subcommand(1);

  std::string file;
  std::string map_file;
  std::string encode;
  std::string format = "text";
  std::vector<std::string> names;
  CheckOptions opts;
  int depth = 8;
  std::size_t max_states = 10000;

  auto add_encode = [&](CLI::App* cmd) {
    cmd->add_option("--encode", encode, "encoding for .es files (espsi|dcrpsi)")
        ->check(CLI::IsMember({"espsi", "dcrpsi"}));
  };

  CLI::App* enc = app.add_subcommand("encode", "print the canonical encoded process");
  enc->add_option("file", file, "model file (.es, .dcr, or .pi)")->required();
  add_encode(enc);

  CLI::App* lts = app.add_subcommand("lts", "explore the transition system");
  lts->add_option("file", file, "model file (.es, .dcr, or .pi)")->required();
  add_encode(lts);
  lts->add_option("--depth", depth, "exploration depth bound");
  lts->add_option("--max-states", max_states, "state count bound");
  lts->add_option("--format", format, "output format (text|dot)")
      ->check(CLI::IsMember({"text", "dot"}));

  CLI::App* dot = app.add_subcommand("dot", "render the transition system as DOT");
  dot->add_option("file", file, "model file (.es, .dcr, or .pi)")->required();
  add_encode(dot);
  dot->add_option("--depth", depth, "exploration depth bound");
  dot->add_option("--max-states", max_states, "state count bound");

  CLI::App* check = app.add_subcommand("check", "run property-check suites");
  check->add_option("names", names, "check names, or 'all'")->required();
  check->add_option("--seed", opts.seed, "sample seed");
  check->add_option("--random", opts.samples, "sample count");
  check->add_option("--max-events", opts.max_events, "event bound for generated structures");
  check->add_option("--density", opts.density, "relation density for generated graphs");
  check->add_option("--depth", opts.max_depth, "exploration depth bound");
  check->add_option("--max-states", opts.max_states, "state count bound");

  CLI::App* step = app.add_subcommand("step", "step through executions interactively");
  step->add_option("file", file, "model file (.es, .dcr, or .pi)")->required();

  CLI::App* refine = app.add_subcommand("refine",
                                        "refine a labelled structure by a label map");
  refine->add_option("file", file, "event structure file (.es)")->required();
  refine->add_option("map", map_file, "file with 'label = structure.es' lines")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (enc->parsed()) {
      Loaded l = load_process(file, encode);
      std::printf("%s\n", to_string(canonical(*l.instance, l.process)).c_str());
      return 0;
    }
    if (lts->parsed() || dot->parsed()) {
      Loaded l = load_process(file, encode);
      ExploreOptions eo;
      eo.max_depth = depth;
      eo.max_states = max_states;
      Lts system = explore(*l.instance, l.instance->unit(), l.process, eo);
      if (dot->parsed() || format == "dot")
        std::printf("%s", lts_to_dot(system).c_str());
      else
        print_lts_text(system);
      return 0;
    }
    if (check->parsed()) return run_checks(names, opts);
    if (step->parsed()) return run_step_loop(file);
    if (refine->parsed()) return run_refine(file, map_file);
  } catch (const BudgetExceeded& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
