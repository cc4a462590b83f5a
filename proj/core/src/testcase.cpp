#include "sysrepro/testcase.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <sstream>

#include "sysrepro/error.hpp"

namespace sysrepro {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::vector<std::string> lines_of(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    const auto end = nl == std::string_view::npos ? text.size() : nl;
    out.emplace_back(text.substr(start, end - start));
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, char sep = ' ') {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out.push_back(sep);
    out += p;
  }
  return out;
}

// ---- extraction ------------------------------------------------------------

bool mode_like(std::string_view t) {
  static const std::regex re(R"(^([0-7]{3,4}|[0-9]+|[ugoa]*[-+=][rwxXst]*)$)");
  return std::regex_match(t.begin(), t.end(), re);
}

std::string strip_quotes(std::string t) {
  if (t.size() >= 2 && (t.front() == '"' || t.front() == '\'') && t.back() == t.front())
    return t.substr(1, t.size() - 2);
  return t;
}

std::string basename_of(std::string_view t) {
  const auto slash = t.rfind('/');
  return std::string(slash == std::string_view::npos ? t : t.substr(slash + 1));
}

// Words that may precede the command inside a shell segment.
bool shell_prefix(std::string_view w) {
  static const std::set<std::string_view> words{"do", "then", "else", "sudo", "time",
                                                "nohup", "exec", "command", "(", "{"};
  return words.contains(w);
}

// Splits a shell line into simple-command segments; redirections end the
// argument list of their segment.
std::vector<std::vector<std::string>> shell_segments(std::string_view line) {
  std::vector<std::vector<std::string>> segments(1);
  bool redirected = false;
  std::string word;
  auto flush_word = [&] {
    if (!word.empty() && !redirected) segments.back().push_back(strip_quotes(word));
    word.clear();
  };
  auto next_segment = [&] {
    flush_word();
    segments.emplace_back();
    redirected = false;
  };
  char quote = 0;
  for (const char c : line) {
    if (quote) {
      word.push_back(c);
      if (c == quote) quote = 0;
      continue;
    }
    if (c == '"' || c == '\'') {
      quote = c;
      word.push_back(c);
    } else if (c == ';' || c == '|' || c == '&') {
      next_segment();
    } else if (c == '>' || c == '<') {
      flush_word();
      redirected = true;
    } else if (c == ' ' || c == '\t') {
      flush_word();
    } else if ((c == '(' || c == ')') && word.empty()) {
      // subshell grouping
    } else {
      word.push_back(c);
    }
  }
  flush_word();
  std::erase_if(segments, [](const auto& s) { return s.empty(); });
  return segments;
}

std::optional<TestCase> parse_invocation(std::vector<std::string> words,
                                         const std::set<std::string>& known) {
  std::size_t i = 0;
  while (i < words.size() && shell_prefix(words[i])) ++i;
  if (i >= words.size()) return std::nullopt;
  const auto cmd = basename_of(words[i]);
  if (!known.contains(cmd)) return std::nullopt;

  TestCase tc;
  tc.command = cmd;
  bool options_done = false;
  for (++i; i < words.size(); ++i) {
    const auto& w = words[i];
    if (!options_done && w == "--") {
      options_done = true;
    } else if (!options_done && w.size() > 1 && w[0] == '-') {
      tc.options.push_back(w);
      const bool short_opt = w.size() == 2 && w[1] != '-';
      if (short_opt && i + 1 < words.size() && mode_like(words[i + 1]))
        tc.options.push_back(words[++i]);
    } else {
      tc.inputs.push_back(w);
    }
  }
  return tc;
}

struct Found {
  TestCase tc;
  std::size_t position;
};

void scan_line(std::string_view line, const std::set<std::string>& known,
               std::vector<Found>& out, std::size_t& position) {
  for (auto& seg : shell_segments(line))
    if (auto tc = parse_invocation(std::move(seg), known)) out.push_back({std::move(*tc), position++});
}

std::string strip_prompt(const std::string& trimmed) {
  if (trimmed.size() >= 2 && (trimmed[0] == '$' || trimmed[0] == '%') &&
      (trimmed[1] == ' ' || trimmed[1] == '\t'))
    return trim(std::string_view(trimmed).substr(2));
  return {};
}

std::string key_of(const TestCase& tc) {
  return tc.command + '\x1f' + join(tc.options, '\x1e') + '\x1f' + join(tc.inputs, '\x1e');
}

// ---- TSL ---------------------------------------------------------------------

enum class Role { command, options, inputs, setup, other };

Role role_of(std::string_view category) {
  std::string c;
  for (const char ch : category) c.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  if (c == "command") return Role::command;
  if (c.starts_with("option")) return Role::options;
  if (c.starts_with("input") || c.starts_with("file") || c.starts_with("arg")) return Role::inputs;
  if (c.starts_with("setup") || c.starts_with("env")) return Role::setup;
  return Role::other;
}

bool none_value(std::string_view v) { return v.empty() || v == "none" || v == "-"; }

struct Ref {
  std::optional<std::size_t> category;  // absent for bare values
  std::string value;
};

Ref resolve_ref(const TslSpec& spec, const std::string& ref) {
  const auto dot = ref.find('.');
  if (dot != std::string::npos) {
    const auto cat = ref.substr(0, dot);
    const auto val = ref.substr(dot + 1);
    for (std::size_t c = 0; c < spec.categories.size(); ++c) {
      if (spec.categories[c].name != cat) continue;
      for (const auto& ch : spec.categories[c].choices)
        if (ch.value == val) return {c, val};
    }
  }
  return {std::nullopt, ref};
}

bool ref_declared(const TslSpec& spec, const Ref& r) {
  for (std::size_t c = 0; c < spec.categories.size(); ++c) {
    if (r.category && *r.category != c) continue;
    for (const auto& ch : spec.categories[c].choices)
      if (ch.value == r.value) return true;
  }
  return false;
}

std::string choice_label(const TslCategory& cat, const TslChoice& ch) {
  return cat.name + "=" + ch.value;
}

TestCase frame_to_case(const TslSpec& spec, const std::vector<std::size_t>& pick) {
  TestCase tc;
  for (std::size_t c = 0; c < spec.categories.size(); ++c) {
    const auto& cat = spec.categories[c];
    const auto& ch = cat.choices[pick[c]];
    tc.frame.push_back(choice_label(cat, ch));
    tc.expect_error = tc.expect_error || ch.error;
    switch (role_of(cat.name)) {
      case Role::command:
        tc.command = ch.value;
        break;
      case Role::options:
        if (!none_value(ch.value))
          for (auto& w : split_ws(ch.value)) tc.options.push_back(std::move(w));
        break;
      case Role::inputs:
        if (!none_value(ch.value))
          for (auto& w : split_ws(ch.value)) tc.inputs.push_back(std::move(w));
        break;
      case Role::setup:
        if (!none_value(ch.value)) tc.setup.push_back(ch.value);
        break;
      case Role::other:
        tc.setup.push_back(cat.name + "=" + ch.value);
        break;
    }
  }
  return tc;
}

std::string frame_text(const TslSpec& spec, const std::vector<std::size_t>& pick) {
  std::vector<std::string> parts;
  for (std::size_t c = 0; c < spec.categories.size(); ++c)
    parts.push_back(choice_label(spec.categories[c], spec.categories[c].choices[pick[c]]));
  return "{" + join(parts, ',') + "}";
}

// Report values take the place of the categories they fill.
TslSpec apply_overrides(TslSpec spec, const TestCase& partial) {
  bool options_done = false;
  bool inputs_done = false;
  for (auto& cat : spec.categories) {
    const auto role = role_of(cat.name);
    std::optional<std::string> value;
    if (role == Role::command && !partial.command.empty()) {
      value = partial.command;
    } else if (role == Role::options && !partial.options.empty()) {
      value = options_done ? "none" : join(partial.options);
      options_done = true;
    } else if (role == Role::inputs && !partial.inputs.empty()) {
      value = inputs_done ? "none" : join(partial.inputs);
      inputs_done = true;
    }
    if (value) cat.choices = {TslChoice{*value, false, false, {}, 0}};
  }
  return spec;
}

}  // namespace

std::string TestCase::command_line() const {
  std::vector<std::string> parts{command};
  parts.insert(parts.end(), options.begin(), options.end());
  parts.insert(parts.end(), inputs.begin(), inputs.end());
  return join(parts);
}

bool TestCase::same_invocation(const TestCase& o) const {
  return command == o.command && options == o.options && inputs == o.inputs && setup == o.setup;
}

std::vector<TestCase> extract_candidates(const BugReport& report,
                                         const std::vector<std::string>& known_commands) {
  const std::set<std::string> known(known_commands.begin(), known_commands.end());
  std::vector<Found> found;
  std::size_t position = 0;
  if (known.empty()) return {};

  static const std::regex inline_span(R"((["`])([^"`\n]+)\1)");
  bool fenced = false;
  for (const auto& raw : lines_of(report.subject + "\n" + report.body)) {
    const auto t = trim(raw);
    if (t.starts_with("```")) {
      fenced = !fenced;
      continue;
    }
    if (fenced) {
      const auto p = strip_prompt(t);
      scan_line(p.empty() ? t : p, known, found, position);
      continue;
    }
    if (const auto p = strip_prompt(t); !p.empty()) {
      scan_line(p, known, found, position);
      continue;
    }
    if (raw.starts_with("    ") || raw.starts_with("\t")) {
      scan_line(t, known, found, position);
      continue;
    }
    for (auto it = std::sregex_iterator(raw.begin(), raw.end(), inline_span);
         it != std::sregex_iterator(); ++it)
      scan_line((*it)[2].str(), known, found, position);
  }

  struct Group {
    TestCase tc;
    int frequency = 0;
    std::size_t first = 0;
  };
  std::map<std::string, Group> groups;
  for (auto& f : found) {
    auto [it, inserted] = groups.try_emplace(key_of(f.tc), Group{f.tc, 0, f.position});
    ++it->second.frequency;
  }
  std::vector<Group> ranked;
  for (auto& [k, g] : groups) ranked.push_back(std::move(g));
  std::sort(ranked.begin(), ranked.end(), [](const Group& a, const Group& b) {
    if (a.frequency != b.frequency) return a.frequency > b.frequency;
    const auto an = a.tc.options.size() + a.tc.inputs.size();
    const auto bn = b.tc.options.size() + b.tc.inputs.size();
    if (an != bn) return an > bn;
    return a.first < b.first;
  });
  std::vector<TestCase> out;
  for (auto& g : ranked) out.push_back(std::move(g.tc));
  return out;
}

TestCase extract_elements(const BugReport& report, const std::vector<std::string>& known_commands) {
  auto all = extract_candidates(report, known_commands);
  return all.empty() ? TestCase{} : std::move(all.front());
}

TslSpec parse_tsl(std::string_view text, const std::string& source) {
  TslSpec spec;
  static const std::regex category_re(R"(^category\s+(\S.*?)\s*:\s*$)");
  static const std::regex choice_re(R"(^choice\s+([^\[]*?)\s*((\[[^\]]*\]\s*)*)$)");
  static const std::regex tag_re(R"(\[\s*([^\]]*?)\s*\])");

  const auto lines = lines_of(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const int line_no = static_cast<int>(n) + 1;
    auto line = lines[n];
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const auto t = trim(line);
    if (t.empty()) continue;
    const auto where = "line " + std::to_string(line_no) + ": ";

    std::smatch m;
    if (std::regex_match(t, m, category_re)) {
      const auto name = m[1].str();
      for (const auto& c : spec.categories)
        if (c.name == name) throw ParseError(source, where + "duplicate category '" + name + "'");
      spec.categories.push_back({name, {}});
      continue;
    }
    if (std::regex_match(t, m, choice_re)) {
      if (spec.categories.empty())
        throw ParseError(source, where + "choice before any category");
      if (line.find_first_not_of(" \t") == 0)
        throw ParseError(source, where + "choice lines must be indented");
      TslChoice choice;
      choice.value = m[1].str();
      choice.line = line_no;
      if (choice.value.empty()) throw ParseError(source, where + "empty choice value");
      const auto tags = m[2].str();
      for (auto it = std::sregex_iterator(tags.begin(), tags.end(), tag_re);
           it != std::sregex_iterator(); ++it) {
        const auto tag = (*it)[1].str();
        if (tag == "error") {
          choice.error = true;
        } else if (tag == "single") {
          choice.single = true;
        } else if (tag.starts_with("if ") || tag.starts_with("if\t")) {
          const auto ref = trim(std::string_view(tag).substr(3));
          if (ref.empty()) throw ParseError(source, where + "empty [if] reference");
          choice.if_refs.push_back(ref);
        } else {
          throw ParseError(source, where + "unknown tag [" + tag + "]");
        }
      }
      spec.categories.back().choices.push_back(std::move(choice));
      continue;
    }
    throw ParseError(source, where + "expected 'category <name>:' or 'choice <value> [tags]'");
  }

  if (spec.categories.empty()) throw ParseError(source, "no categories");
  for (const auto& cat : spec.categories) {
    if (cat.choices.empty())
      throw ParseError(source, "category '" + cat.name + "' has no choices");
    for (const auto& ch : cat.choices)
      for (const auto& ref : ch.if_refs)
        if (!ref_declared(spec, resolve_ref(spec, ref)))
          throw ParseError(source, "line " + std::to_string(ch.line) + ": [if " + ref +
                                       "] does not name a declared choice");
  }
  return spec;
}

TslSpec load_tsl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open TSL spec: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_tsl(buf.str(), path);
}

std::vector<TestCase> expand_tsl(const TslSpec& original, const TestCase& partial) {
  const auto spec = apply_overrides(original, partial);
  const auto& cats = spec.categories;
  const std::size_t k = cats.size();

  // Resolve references once and reject self-contradictory ones.
  std::vector<std::vector<std::vector<Ref>>> refs(k);
  std::vector<std::optional<std::size_t>> defaults(k);
  for (std::size_t c = 0; c < k; ++c) {
    if (cats[c].choices.empty())
      throw InputError("category '" + cats[c].name + "' has no choices");
    refs[c].resize(cats[c].choices.size());
    for (std::size_t i = 0; i < cats[c].choices.size(); ++i) {
      const auto& ch = cats[c].choices[i];
      if (!defaults[c] && !ch.special() && ch.if_refs.empty()) defaults[c] = i;
      for (const auto& raw : ch.if_refs) {
        const auto r = resolve_ref(spec, raw);
        if (r.category == c)
          throw InputError("choice '" + choice_label(cats[c], ch) + "' has [if " + raw +
                           "] on its own category");
        for (std::size_t o = 0; o < k; ++o) {
          if (r.category && *r.category != o) continue;
          for (const auto& target : cats[o].choices)
            if (target.value == r.value && target.special())
              throw InputError("choice '" + choice_label(cats[c], ch) + "' has [if " + raw +
                               "] on special choice '" + choice_label(cats[o], target) + "'");
        }
        refs[c][i].push_back(r);
      }
    }
  }

  auto admissible = [&](const std::vector<std::size_t>& pick) {
    std::optional<std::size_t> special;
    for (std::size_t c = 0; c < k; ++c) {
      if (!cats[c].choices[pick[c]].special()) continue;
      if (special) return false;
      special = c;
    }
    if (special)
      for (std::size_t c = 0; c < k; ++c)
        if (c != *special && defaults[c] != pick[c]) return false;
    for (std::size_t c = 0; c < k; ++c) {
      for (const auto& r : refs[c][pick[c]]) {
        bool holds = false;
        for (std::size_t o = 0; o < k && !holds; ++o) {
          if (o == c || (r.category && *r.category != o)) continue;
          holds = cats[o].choices[pick[o]].value == r.value;
        }
        if (!holds) return false;
      }
    }
    return true;
  };

  std::vector<TestCase> out;
  std::vector<std::vector<std::size_t>> kept;
  std::vector<std::size_t> pick(k, 0);
  while (true) {
    if (admissible(pick)) {
      auto tc = frame_to_case(spec, pick);
      if (tc.command.empty()) tc.command = partial.command;
      if (tc.command.empty())
        throw InputError("frame " + frame_text(spec, pick) + " has no command");
      kept.push_back(pick);
      out.push_back(std::move(tc));
    }
    bool wrapped = true;
    for (std::size_t c = k; c-- > 0;) {
      if (++pick[c] < cats[c].choices.size()) {
        wrapped = false;
        break;
      }
      pick[c] = 0;
    }
    if (wrapped) break;
  }

  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t i = 0; i < cats[c].choices.size(); ++i) {
      if (!cats[c].choices[i].special()) continue;
      const bool present = std::any_of(kept.begin(), kept.end(),
                                       [&](const auto& p) { return p[c] == i; });
      if (!present)
        throw InputError("choice '" + choice_label(cats[c], cats[c].choices[i]) +
                         "' is marked special but no frame can hold it");
    }
  }
  if (out.empty()) throw InputError("constraints exclude every frame");

  const bool has_options = std::any_of(cats.begin(), cats.end(), [](const auto& c) {
    return role_of(c.name) == Role::options;
  });
  const bool has_inputs = std::any_of(cats.begin(), cats.end(), [](const auto& c) {
    return role_of(c.name) == Role::inputs;
  });
  for (auto& tc : out) {
    if (!has_options && !partial.options.empty()) tc.options = partial.options;
    if (!has_inputs && !partial.inputs.empty()) tc.inputs = partial.inputs;
  }
  return out;
}

std::vector<TestCase> expand_tsl(const TslSpec& spec, const std::vector<TestCase>& candidates) {
  if (candidates.empty()) return expand_tsl(spec, TestCase{});
  std::vector<TestCase> out;
  for (const auto& cand : candidates) {
    for (auto& tc : expand_tsl(spec, cand)) {
      const bool dup = std::any_of(out.begin(), out.end(),
                                   [&](const TestCase& o) { return o.same_invocation(tc); });
      if (!dup) out.push_back(std::move(tc));
    }
  }
  return out;
}

}  // namespace sysrepro
