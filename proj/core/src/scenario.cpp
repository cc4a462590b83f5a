#include "sysrepro/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "sysrepro/error.hpp"

namespace sysrepro {
namespace {

struct Arity {
  std::size_t min;
  std::size_t max;
};

Arity arity_of(OpKind kind) {
  switch (kind) {
    case OpKind::open:
      return {1, 3};
    case OpKind::write:
    case OpKind::rename:
    case OpKind::link:
    case OpKind::chmod:
      return {2, 2};
    case OpKind::mkdir:
    case OpKind::mknod:
      return {1, 2};
    case OpKind::close:
    case OpKind::read:
    case OpKind::unlink:
    case OpKind::stat:
      return {1, 1};
  }
  return {0, 0};
}

bool is_placeholder(std::string_view a) {
  return a.size() == 2 && a[0] == '$' && a[1] >= '1' && a[1] <= '9';
}

std::string substitute(const std::string& arg, const std::vector<std::string>& inputs, bool& missing) {
  if (!is_placeholder(arg)) return arg;
  const auto i = static_cast<std::size_t>(arg[1] - '1');
  if (i >= inputs.size()) {
    missing = true;
    return arg;
  }
  return inputs[i];
}

template <typename T>
T required(const nlohmann::json& j, const char* key, const std::string& source) {
  if (!j.contains(key)) throw ParseError(source, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(source, std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

std::string_view to_string(OpKind kind) {
  switch (kind) {
    case OpKind::open:
      return "open";
    case OpKind::close:
      return "close";
    case OpKind::read:
      return "read";
    case OpKind::write:
      return "write";
    case OpKind::unlink:
      return "unlink";
    case OpKind::rename:
      return "rename";
    case OpKind::link:
      return "link";
    case OpKind::mkdir:
      return "mkdir";
    case OpKind::mknod:
      return "mknod";
    case OpKind::chmod:
      return "chmod";
    case OpKind::stat:
      return "stat";
  }
  return "?";
}

OpKind op_kind_from_string(std::string_view text) {
  static const OpKind all[] = {OpKind::open,   OpKind::close, OpKind::read,  OpKind::write,
                               OpKind::unlink, OpKind::rename, OpKind::link, OpKind::mkdir,
                               OpKind::mknod,  OpKind::chmod, OpKind::stat};
  for (const auto k : all)
    if (to_string(k) == text) return k;
  throw InputError("unknown syscall op: " + std::string(text));
}

std::string_view to_string(OracleKind kind) {
  switch (kind) {
    case OracleKind::open_enoent:
      return "open_enoent";
    case OracleKind::mode_mismatch:
      return "mode_mismatch";
    case OracleKind::path_missing:
      return "path_missing";
    case OracleKind::content_mismatch:
      return "content_mismatch";
  }
  return "?";
}

void SyscallOp::validate() const {
  const auto [lo, hi] = arity_of(kind);
  if (args.size() < lo || args.size() > hi)
    throw InputError("wrong argument count for " + std::string(to_string(kind)) + ": " +
                     std::to_string(args.size()));
  auto check_mode = [](const std::string& m) {
    if (!is_placeholder(m)) parse_mode(m);
  };
  switch (kind) {
    case OpKind::open:
      if (args.size() >= 2 && args[1] != "creat")
        throw InputError("open flag must be 'creat', got '" + args[1] + "'");
      if (args.size() == 3) check_mode(args[2]);
      break;
    case OpKind::chmod:
      check_mode(args[1]);
      break;
    case OpKind::mkdir:
    case OpKind::mknod:
      if (args.size() == 2) check_mode(args[1]);
      break;
    default:
      break;
  }
}

std::string SyscallOp::text() const {
  std::string out(to_string(kind));
  out.push_back('(');
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ", ";
    out += args[i];
  }
  out.push_back(')');
  return out;
}

SyscallOp SyscallOp::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string kind;
  if (!(in >> kind)) throw InputError("empty op");
  SyscallOp op;
  op.kind = op_kind_from_string(kind);
  for (std::string a; in >> a;) op.args.push_back(a);
  op.validate();
  return op;
}

std::size_t Scenario::total_ops() const {
  std::size_t n = 0;
  for (const auto& p : processes) n += p.ops.size();
  return n;
}

bool Scenario::has_placeholders() const {
  for (const auto& p : processes)
    for (const auto& op : p.ops)
      for (const auto& a : op.args)
        if (is_placeholder(a)) return true;
  return is_placeholder(oracle.path);
}

std::optional<std::size_t> Scenario::process_index(std::string_view name) const {
  for (std::size_t i = 0; i < processes.size(); ++i)
    if (processes[i].name == name) return i;
  return std::nullopt;
}

const SrcMapEntry* Scenario::map_location(const SyscallLocation& loc) const {
  for (const auto& e : src_map)
    if (e.file == loc.file && e.function == loc.function && e.line == loc.line) return &e;
  return nullptr;
}

const SrcMapEntry* Scenario::map_op(std::size_t process, std::size_t op) const {
  for (const auto& e : src_map)
    if (e.process == process && e.op == op) return &e;
  return nullptr;
}

void Scenario::validate() const {
  if (processes.empty()) throw InputError("scenario " + id + " has no processes");
  std::set<std::string> names;
  for (const auto& p : processes) {
    if (!names.insert(p.name).second) throw InputError("duplicate process name: " + p.name);
    for (const auto& op : p.ops) op.validate();
  }
  std::set<std::string> paths;
  for (const auto& n : initial_fs)
    if (!paths.insert(n.path).second) throw InputError("duplicate initial path: " + n.path);
  for (const auto& e : src_map) {
    if (e.process >= processes.size() || e.op >= processes[e.process].ops.size())
      throw InputError("src_map entry " + e.file + ":" + e.function + ":" +
                       std::to_string(e.line) + " points outside the traces");
  }
}

Scenario scenario_from_json(const nlohmann::json& j, const std::string& source) {
  if (!j.is_object()) throw ParseError(source, "scenario must be a JSON object");
  Scenario s;
  s.id = j.value("id", std::string());
  s.command = j.value("command", std::string());
  try {
    for (const auto& p : required<nlohmann::json>(j, "processes", source)) {
      ProcessTrace trace;
      trace.name = required<std::string>(p, "name", source);
      for (const auto& op : required<nlohmann::json>(p, "ops", source))
        trace.ops.push_back(SyscallOp::parse(op.get<std::string>()));
      s.processes.push_back(std::move(trace));
    }
    for (const auto& n : j.value("initial_fs", nlohmann::json::array())) {
      InitialNode node;
      node.path = required<std::string>(n, "path", source);
      node.kind = node_kind_from_string(n.value("kind", std::string("file")));
      node.mode = parse_mode(n.value("mode", std::string(node.kind == NodeKind::dir ? "0755" : "0644")));
      node.content = n.value("content", std::string());
      s.initial_fs.push_back(std::move(node));
    }
    const auto o = required<nlohmann::json>(j, "oracle", source);
    const auto kind = required<std::string>(o, "kind", source);
    if (kind == "open_enoent") {
      s.oracle.kind = OracleKind::open_enoent;
    } else if (kind == "mode_mismatch") {
      s.oracle.kind = OracleKind::mode_mismatch;
    } else if (kind == "path_missing") {
      s.oracle.kind = OracleKind::path_missing;
    } else if (kind == "content_mismatch") {
      s.oracle.kind = OracleKind::content_mismatch;
    } else {
      throw ParseError(source, "unknown oracle kind '" + kind + "'");
    }
    s.oracle.path = required<std::string>(o, "path", source);
    s.oracle.expected = o.value("expected", std::string());
    if (s.oracle.kind == OracleKind::mode_mismatch) parse_mode(s.oracle.expected);

    for (const auto& e : j.value("src_map", nlohmann::json::array())) {
      SrcMapEntry entry;
      entry.file = required<std::string>(e, "file", source);
      entry.function = required<std::string>(e, "function", source);
      entry.line = required<int>(e, "line", source);
      const auto proc = required<std::string>(e, "process", source);
      const auto idx = s.process_index(proc);
      if (!idx) throw ParseError(source, "src_map names unknown process '" + proc + "'");
      entry.process = *idx;
      entry.op = required<std::size_t>(e, "op", source);
      s.src_map.push_back(std::move(entry));
    }
    s.validate();
  } catch (const InputError& e) {
    throw ParseError(source, e.what());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(source, e.what());
  }
  return s;
}

nlohmann::json to_json(const Scenario& s) {
  nlohmann::json j;
  j["schema"] = "sysrepro.scenario/1";
  j["id"] = s.id;
  if (!s.command.empty()) j["command"] = s.command;
  j["initial_fs"] = nlohmann::json::array();
  for (const auto& n : s.initial_fs)
    j["initial_fs"].push_back({{"path", n.path},
                               {"kind", std::string(to_string(n.kind))},
                               {"mode", format_mode(n.mode)},
                               {"content", n.content}});
  j["processes"] = nlohmann::json::array();
  for (const auto& p : s.processes) {
    nlohmann::json ops = nlohmann::json::array();
    for (const auto& op : p.ops) {
      std::string t(to_string(op.kind));
      for (const auto& a : op.args) t += " " + a;
      ops.push_back(t);
    }
    j["processes"].push_back({{"name", p.name}, {"ops", ops}});
  }
  j["oracle"] = {{"kind", std::string(to_string(s.oracle.kind))}, {"path", s.oracle.path}};
  if (!s.oracle.expected.empty()) j["oracle"]["expected"] = s.oracle.expected;
  j["src_map"] = nlohmann::json::array();
  for (const auto& e : s.src_map)
    j["src_map"].push_back({{"file", e.file},
                            {"function", e.function},
                            {"line", e.line},
                            {"process", s.processes[e.process].name},
                            {"op", e.op}});
  return j;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open scenario: " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string(), e.what());
  }
  auto s = scenario_from_json(j, path.string());
  if (s.id.empty()) s.id = path.stem().string();
  return s;
}

std::variant<Scenario, BindFailure> bind_scenario(const Scenario& scenario, const TestCase& tc) {
  if (!scenario.command.empty() && !tc.command.empty() && tc.command != scenario.command)
    return BindFailure{"test case runs '" + tc.command + "' but the scenario models '" +
                       scenario.command + "'"};
  Scenario bound = scenario;
  bool missing = false;
  for (auto& p : bound.processes)
    for (auto& op : p.ops)
      for (auto& a : op.args) a = substitute(a, tc.inputs, missing);
  bound.oracle.path = substitute(bound.oracle.path, tc.inputs, missing);
  if (missing)
    return BindFailure{"test case '" + tc.command_line() + "' lacks inputs for the scenario"};
  return bound;
}

}  // namespace sysrepro
