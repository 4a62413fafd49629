#include "psi/dot.hpp"

namespace psi {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string lts_to_dot(const Lts& lts, const std::string& graph_name) {
  std::string out = "digraph \"" + escape(graph_name) + "\" {\n";
  out += "  rankdir=LR;\n  node [shape=box, fontname=\"monospace\"];\n";
  for (std::size_t i = 0; i < lts.states.size(); ++i) {
    out += "  s" + std::to_string(i) + " [label=\"" + escape(to_string(lts.states[i])) + "\"";
    if (i == 0) out += ", style=bold";
    out += "];\n";
  }
  for (const auto& edge : lts.edges) {
    out += "  s" + std::to_string(edge.from) + " -> s" + std::to_string(edge.to) + " [label=\"" +
           escape(to_string(edge.action)) + "\"];\n";
  }
  if (lts.truncated()) out += "  truncated [shape=plaintext, label=\"(truncated)\"];\n";
  out += "}\n";
  return out;
}

}  // namespace psi
