#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "psi/dcr.hpp"
#include "psi/event_structure.hpp"
#include "psi/process.hpp"

namespace psi {

struct EsFile {
  EventStructure es;
  std::optional<Configuration> config;
};

/// Sections: events, causes (d < e), conflict (d # e), labels (e=l), config.
/// `#` starts a comment except on conflict lines, where it separates the pair.
EsFile parse_es(const std::string& text);
std::string serialize_es(const EventStructure& es,
                         const std::optional<Configuration>& config = std::nullopt);

struct DcrFile {
  DcrGraph graph;
  Marking marking;
};

/// Sections: events, marking, condition (->*), response (*->),
/// milestone (-><), include (->+), exclude (->%), labels.
/// A missing marking defaults to nothing executed, nothing pending, all included.
DcrFile parse_dcr(const std::string& text);
std::string serialize_dcr(const DcrGraph& g, const Marking& m);

/// Grammar: 0, a<b>.P, a(x).P, !P, new a. P, P | Q, (P); a trailing
/// continuation may be omitted. Tokens bound by an enclosing input become
/// variables; everything else is a name.
ProcessPtr parse_pi(const std::string& text);

/// Lines of the form `label = path`; paths are kept verbatim.
std::vector<std::pair<Label, std::string>> parse_refinement_entries(const std::string& text);

/// Reads a map file and parses every referenced event-structure file,
/// resolving relative paths against the map file's directory.
RefinementFunction load_refinement_map(const std::filesystem::path& map_file);

std::string read_file(const std::filesystem::path& path);

}  // namespace psi
