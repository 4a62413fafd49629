#include "psi/parse.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "psi/errors.hpp"

namespace psi {

namespace {

std::string trim(const std::string& s) {
  auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::string strip_comment(const std::string& s) {
  auto pos = s.find('#');
  return pos == std::string::npos ? s : s.substr(0, pos);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string::size_type start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

bool name_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
         c == '_' || c == '\'';
}

Name parse_name(int line, const std::string& tok) {
  if (tok.find('.') != std::string::npos)
    throw ParseError(line, "name '" + tok + "' contains '.', reserved for refined event pairs");
  if (tok.empty() || (tok[0] >= '0' && tok[0] <= '9') ||
      !std::all_of(tok.begin(), tok.end(), name_char))
    throw ParseError(line, "invalid name '" + tok + "'");
  return Name(tok);
}

std::string check_label(int line, const std::string& tok) {
  if (tok.empty()) throw ParseError(line, "empty label");
  return tok;
}

// label lines look like `labels: a=l1 b=l2`
void parse_label_tokens(int line, const std::string& content, std::map<Name, Label>& labels) {
  for (const auto& tok : split_ws(content)) {
    auto eq = tok.find('=');
    if (eq == std::string::npos)
      throw ParseError(line, "expected 'event=label', got '" + tok + "'");
    Name e = parse_name(line, tok.substr(0, eq));
    Label l = check_label(line, tok.substr(eq + 1));
    if (labels.count(e)) throw ParseError(line, "duplicate label for '" + e.id + "'");
    labels.emplace(std::move(e), std::move(l));
  }
}

// relation lines look like `causes: a < b; a < c` or `condition: a ->* b`
void parse_pairs(int line, const std::string& content, const std::string& arrow,
                 const std::string& section, PairSet& rel) {
  for (const auto& entry : split_on(content, ';')) {
    if (trim(entry).empty()) continue;
    auto toks = split_ws(entry);
    if (toks.size() != 3 || toks[1] != arrow)
      throw ParseError(line, "expected 'd " + arrow + " e' after '" + section + ":'");
    EventPair pair(parse_name(line, toks[0]), parse_name(line, toks[2]));
    if (rel.count(pair))
      throw ParseError(line, "duplicate pair " + pair.first.id + " " + arrow + " " +
                                 pair.second.id);
    rel.insert(std::move(pair));
  }
}

struct Section {
  int line;
  std::string keyword;
  std::string content;
};

std::vector<Section> split_sections(const std::string& text, bool raw_conflicts) {
  std::vector<Section> out;
  int line = 0;
  for (const auto& full : split_on(text, '\n')) {
    ++line;
    // '#' separates conflict pairs, so such lines keep their text verbatim.
    bool is_conflict = raw_conflicts && trim(full).rfind("conflict:", 0) == 0;
    std::string s = trim(is_conflict ? full : strip_comment(full));
    if (s.empty()) continue;
    auto colon = s.find(':');
    if (colon == std::string::npos)
      throw ParseError(line, "expected 'section: ...', got '" + s + "'");
    out.push_back({line, s.substr(0, colon), trim(s.substr(colon + 1))});
  }
  return out;
}

std::vector<Name> parse_event_list(int line, const std::string& content) {
  std::vector<Name> events;
  for (const auto& tok : split_ws(content)) {
    Name e = parse_name(line, tok);
    if (std::find(events.begin(), events.end(), e) != events.end())
      throw ParseError(line, "duplicate event '" + e.id + "'");
    events.push_back(std::move(e));
  }
  return events;
}

void require_declared(const std::vector<Name>& events, const Name& e, const std::string& where) {
  if (!std::binary_search(events.begin(), events.end(), e))
    throw ValidationError(where + " references undeclared event '" + e.id + "'");
}

void require_endpoints(const std::vector<Name>& events, const PairSet& rel,
                       const std::string& where) {
  for (const auto& [d, e] : rel) {
    require_declared(events, d, where);
    require_declared(events, e, where);
  }
}

std::string join_names(const NameSet& names, const char* sep) {
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) out += sep;
    out += n.id;
  }
  return out;
}

void append_labels(const EventStructure& base, std::string& out) {
  std::string entries;
  for (const auto& [e, l] : base.labels) {
    if (l == e.id) continue;
    if (!entries.empty()) entries += ' ';
    entries += e.id + "=" + l;
  }
  if (!entries.empty()) out += "labels: " + entries + "\n";
}

}  // namespace

EsFile parse_es(const std::string& text) {
  EventStructure candidate;
  std::optional<Configuration> config;
  bool saw_events = false;
  for (const auto& sec : split_sections(text, /*raw_conflicts=*/true)) {
    if (sec.keyword == "events") {
      if (saw_events) throw ParseError(sec.line, "duplicate events section");
      saw_events = true;
      candidate.events = parse_event_list(sec.line, sec.content);
    } else if (sec.keyword == "causes") {
      parse_pairs(sec.line, sec.content, "<", "causes", candidate.causality);
    } else if (sec.keyword == "conflict") {
      parse_pairs(sec.line, sec.content, "#", "conflict", candidate.conflict);
    } else if (sec.keyword == "labels") {
      parse_label_tokens(sec.line, sec.content, candidate.labels);
    } else if (sec.keyword == "config") {
      if (config) throw ParseError(sec.line, "duplicate config section");
      std::vector<Name> picked = parse_event_list(sec.line, sec.content);
      config = Configuration(std::move(picked));
    } else {
      throw ParseError(sec.line, "unknown section '" + sec.keyword + "'");
    }
  }
  if (!saw_events) throw ParseError(1, "missing events section");
  std::sort(candidate.events.begin(), candidate.events.end());

  for (const auto& [e, l] : candidate.labels) require_declared(candidate.events, e, "labels");
  auto violations = validate_es(candidate);
  if (!violations.empty())
    throw ValidationError(violations.front().axiom + ": " + violations.front().message);
  EsFile out{normalize_es(candidate), std::move(config)};
  if (out.config) {
    for (const auto& e : *out.config) require_declared(out.es.events, e, "config");
    if (!is_configuration(out.es, *out.config))
      throw ValidationError("config: {" + join_names(*out.config, ",") +
                            "} is not conflict-free and causally closed");
  }
  return out;
}

std::string serialize_es(const EventStructure& es, const std::optional<Configuration>& config) {
  std::string out = "events:";
  for (const auto& e : es.events) out += " " + e.id;
  out += "\n";

  // the parser re-closes causality, so only non-transitive pairs are kept
  std::string causes;
  for (const auto& [d, e] : es.causality) {
    bool implied = std::any_of(es.causality.begin(), es.causality.end(), [&](const auto& p) {
      return p.first == d && p.second != e && es.causality.count({p.second, e}) > 0;
    });
    if (implied) continue;
    if (!causes.empty()) causes += "; ";
    causes += d.id + " < " + e.id;
  }
  if (!causes.empty()) out += "causes: " + causes + "\n";

  std::string conflicts;
  for (const auto& [d, e] : es.conflict) {
    if (!(d < e)) continue;  // stored symmetrically; emit one orientation
    if (!conflicts.empty()) conflicts += "; ";
    conflicts += d.id + " # " + e.id;
  }
  if (!conflicts.empty()) out += "conflict: " + conflicts + "\n";

  append_labels(es, out);
  if (config) out += "config:" + (config->empty() ? "" : " " + join_names(*config, " ")) + "\n";
  return out;
}

namespace {

NameSet parse_brace_set(int line, const std::string& field, std::string::size_type& pos,
                        const std::string& s) {
  const std::string want = field + "={";
  if (s.compare(pos, want.size(), want) != 0)
    throw ParseError(line, "expected '" + field + "={...}' in marking");
  pos += want.size();
  auto close = s.find('}', pos);
  if (close == std::string::npos) throw ParseError(line, "unterminated '{' in marking");
  std::string body = s.substr(pos, close - pos);
  pos = close + 1;
  std::vector<Name> names;
  for (const auto& tok : split_on(body, ',')) {
    if (trim(tok).empty()) continue;
    Name e = parse_name(line, trim(tok));
    if (std::find(names.begin(), names.end(), e) != names.end())
      throw ParseError(line, "duplicate event '" + e.id + "' in marking");
    names.push_back(std::move(e));
  }
  return NameSet(std::move(names));
}

Marking parse_marking(int line, const std::string& content) {
  std::string s;
  for (char c : content)
    if (c != ' ' && c != '\t') s += c;
  std::string::size_type pos = 0;
  Marking m;
  m.executed = parse_brace_set(line, "executed", pos, s);
  m.responses = parse_brace_set(line, "responses", pos, s);
  m.included = parse_brace_set(line, "included", pos, s);
  if (pos != s.size()) throw ParseError(line, "trailing text after marking");
  return m;
}

struct DcrSection {
  const char* keyword;
  const char* arrow;
  PairSet DcrGraph::* field;
};

constexpr DcrSection kDcrSections[] = {
    {"condition", "->*", &DcrGraph::conditions}, {"response", "*->", &DcrGraph::responses},
    {"milestone", "-><", &DcrGraph::milestones}, {"include", "->+", &DcrGraph::includes},
    {"exclude", "->%", &DcrGraph::excludes},
};

}  // namespace

DcrFile parse_dcr(const std::string& text) {
  DcrGraph g;
  std::optional<Marking> marking;
  bool saw_events = false;
  for (const auto& sec : split_sections(text, /*raw_conflicts=*/false)) {
    if (sec.keyword == "events") {
      if (saw_events) throw ParseError(sec.line, "duplicate events section");
      saw_events = true;
      g.events = parse_event_list(sec.line, sec.content);
    } else if (sec.keyword == "marking") {
      if (marking) throw ParseError(sec.line, "duplicate marking section");
      marking = parse_marking(sec.line, sec.content);
    } else if (sec.keyword == "labels") {
      parse_label_tokens(sec.line, sec.content, g.labels);
    } else {
      bool known = false;
      for (const auto& dcr_sec : kDcrSections) {
        if (sec.keyword != dcr_sec.keyword) continue;
        parse_pairs(sec.line, sec.content, dcr_sec.arrow, dcr_sec.keyword, g.*dcr_sec.field);
        known = true;
        break;
      }
      if (!known) throw ParseError(sec.line, "unknown section '" + sec.keyword + "'");
    }
  }
  if (!saw_events) throw ParseError(1, "missing events section");
  std::sort(g.events.begin(), g.events.end());

  for (const auto& dcr_sec : kDcrSections)
    require_endpoints(g.events, g.*dcr_sec.field, dcr_sec.keyword);
  for (const auto& [e, l] : g.labels) require_declared(g.events, e, "labels");

  Marking initial = marking ? std::move(*marking) : Marking{{}, {}, NameSet(g.events)};
  DcrFile out{std::move(g), std::move(initial)};
  for (const auto& e : out.marking.executed) require_declared(out.graph.events, e, "marking");
  for (const auto& e : out.marking.responses) require_declared(out.graph.events, e, "marking");
  for (const auto& e : out.marking.included) require_declared(out.graph.events, e, "marking");
  return out;
}

std::string serialize_dcr(const DcrGraph& g, const Marking& m) {
  std::string out = "events:";
  for (const auto& e : g.events) out += " " + e.id;
  out += "\n";
  out += "marking: executed={" + join_names(m.executed, ",") + "} responses={" +
         join_names(m.responses, ",") + "} included={" + join_names(m.included, ",") + "}\n";
  for (const auto& sec : kDcrSections)
    for (const auto& [d, e] : g.*sec.field)
      out += std::string(sec.keyword) + ": " + d.id + " " + sec.arrow + " " + e.id + "\n";
  std::string labels;
  for (const auto& [e, l] : g.labels) {
    if (l == e.id) continue;
    if (!labels.empty()) labels += ' ';
    labels += e.id + "=" + l;
  }
  if (!labels.empty()) out += "labels: " + labels + "\n";
  return out;
}

namespace {

struct PiToken {
  int line;
  std::string text;  // punctuation or word
};

std::vector<PiToken> lex_pi(const std::string& text) {
  std::vector<PiToken> out;
  int line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (std::string("()<>.|!").find(c) != std::string::npos) {
      out.push_back({line, std::string(1, c)});
      ++i;
    } else if (name_char(c)) {
      std::size_t start = i;
      while (i < text.size() && name_char(text[i])) ++i;
      out.push_back({line, text.substr(start, i - start)});
    } else {
      throw ParseError(line, std::string("unexpected character '") + c + "'");
    }
  }
  return out;
}

class PiParser {
 public:
  explicit PiParser(std::vector<PiToken> tokens) : tokens_(std::move(tokens)) {}

  ProcessPtr parse() {
    if (tokens_.empty()) throw ParseError(1, "empty process");
    ProcessPtr p = parse_parallel();
    if (pos_ != tokens_.size())
      throw ParseError(tokens_[pos_].line, "unexpected '" + tokens_[pos_].text + "'");
    return p;
  }

 private:
  bool at(const std::string& text) const {
    return pos_ < tokens_.size() && tokens_[pos_].text == text;
  }

  int line() const { return pos_ < tokens_.size() ? tokens_[pos_].line : last_line(); }
  int last_line() const { return tokens_.empty() ? 1 : tokens_.back().line; }

  PiToken take(const std::string& what) {
    if (pos_ >= tokens_.size()) throw ParseError(last_line(), "expected " + what + " at end");
    return tokens_[pos_++];
  }

  void expect(const std::string& text) {
    PiToken tok = take("'" + text + "'");
    if (tok.text != text)
      throw ParseError(tok.line, "expected '" + text + "', got '" + tok.text + "'");
  }

  Name take_name() {
    PiToken tok = take("a name");
    if (tok.text == "new" || tok.text == "0" || !name_char(tok.text[0]) ||
        (tok.text[0] >= '0' && tok.text[0] <= '9'))
      throw ParseError(tok.line, "expected a name, got '" + tok.text + "'");
    return Name(tok.text);
  }

  Term resolve(const Name& n) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (it->first == n) return it->second ? Term::var(n) : Term::atom(n);
    return Term::atom(n);
  }

  ProcessPtr parse_parallel() {
    std::vector<ProcessPtr> parts;
    parts.push_back(parse_prefixed());
    while (at("|")) {
      ++pos_;
      parts.push_back(parse_prefixed());
    }
    return parts.size() == 1 ? parts.front() : par_all(std::move(parts));
  }

  ProcessPtr parse_prefixed() {
    if (at("0")) {
      ++pos_;
      return nil();
    }
    if (at("!")) {
      ++pos_;
      return make_bang(parse_prefixed());
    }
    if (at("new")) {
      ++pos_;
      Name n = take_name();
      expect(".");
      scope_.emplace_back(n, false);
      ProcessPtr body = parse_prefixed();
      scope_.pop_back();
      return make_restrict(std::move(n), std::move(body));
    }
    if (at("(")) {
      ++pos_;
      ProcessPtr p = parse_parallel();
      expect(")");
      return p;
    }
    Name channel = take_name();
    Term subject = resolve(channel);
    if (at("<")) {
      ++pos_;
      Term payload = resolve(take_name());
      expect(">");
      return make_output(std::move(subject), std::move(payload), parse_cont());
    }
    if (at("(")) {
      ++pos_;
      Name var = take_name();
      expect(")");
      scope_.emplace_back(var, true);
      ProcessPtr cont = parse_cont();
      scope_.pop_back();
      return make_input(std::move(subject), {var}, Term::var(var), std::move(cont));
    }
    throw ParseError(line(), "expected '<payload>' or '(variable)' after '" + channel.id + "'");
  }

  // a missing continuation after a prefix stands for 0
  ProcessPtr parse_cont() {
    if (!at(".")) return nil();
    ++pos_;
    return parse_prefixed();
  }

  std::vector<PiToken> tokens_;
  std::size_t pos_ = 0;
  std::vector<std::pair<Name, bool>> scope_;  // true = input variable
};

}  // namespace

ProcessPtr parse_pi(const std::string& text) { return PiParser(lex_pi(text)).parse(); }

std::vector<std::pair<Label, std::string>> parse_refinement_entries(const std::string& text) {
  std::vector<std::pair<Label, std::string>> out;
  int line = 0;
  for (const auto& full : split_on(text, '\n')) {
    ++line;
    std::string s = trim(strip_comment(full));
    if (s.empty()) continue;
    auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError(line, "expected 'label = path'");
    Label label = trim(s.substr(0, eq));
    std::string path = trim(s.substr(eq + 1));
    if (label.empty() || label.find_first_of(" \t") != std::string::npos)
      throw ParseError(line, "invalid label '" + label + "'");
    if (path.empty()) throw ParseError(line, "missing path for label '" + label + "'");
    for (const auto& entry : out)
      if (entry.first == label) throw ParseError(line, "duplicate label '" + label + "'");
    out.emplace_back(std::move(label), std::move(path));
  }
  return out;
}

RefinementFunction load_refinement_map(const std::filesystem::path& map_file) {
  RefinementFunction ref;
  for (const auto& [label, path] : parse_refinement_entries(read_file(map_file))) {
    std::filesystem::path resolved(path);
    if (resolved.is_relative()) resolved = map_file.parent_path() / resolved;
    ref.emplace(label, parse_es(read_file(resolved)).es);
  }
  return ref;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace psi
