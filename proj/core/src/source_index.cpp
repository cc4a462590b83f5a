#include "sysrepro/source_index.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <fstream>
#include <sstream>

#include "sysrepro/c_scanner.hpp"
#include "sysrepro/error.hpp"
#include "sysrepro/serialize.hpp"

namespace sysrepro {
namespace fs = std::filesystem;
namespace {

bool is_c_file(const fs::path& p) {
  const auto ext = p.extension().string();
  return ext == ".c" || ext == ".h";
}

std::vector<fs::path> c_files(const fs::path& root) {
  std::vector<fs::path> files;
  for (const auto& item : fs::recursive_directory_iterator(root))
    if (item.is_regular_file() && is_c_file(item.path())) files.push_back(item.path());
  std::sort(files.begin(), files.end(), [&](const fs::path& a, const fs::path& b) {
    return a.lexically_relative(root).generic_string() < b.lexically_relative(root).generic_string();
  });
  return files;
}

std::optional<std::string> read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return buf.str();
}

std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out.push_back(' ');
    out += w;
  }
  return out;
}

}  // namespace

std::string_view to_string(DocField field) {
  switch (field) {
    case DocField::file_name:
      return "file_name";
    case DocField::function_names:
      return "function_names";
    case DocField::variable_names:
      return "variable_names";
    case DocField::full_text:
      return "full_text";
  }
  return "?";
}

bool CallGraph::has_edge(const std::string& caller, const std::string& callee) const {
  return edges.contains({caller, callee});
}

bool CallGraph::reaches(const std::string& from, const std::string& to) const {
  std::set<std::string> seen{from};
  std::deque<std::string> queue{from};
  while (!queue.empty()) {
    const auto cur = queue.front();
    queue.pop_front();
    for (auto it = edges.lower_bound({cur, std::string()}); it != edges.end() && it->first == cur;
         ++it) {
      if (it->second == to) return true;
      if (seen.insert(it->second).second) queue.push_back(it->second);
    }
  }
  return false;
}

SourceIndex::SourceIndex(std::vector<SourceDoc> docs, std::vector<FunctionRecord> functions,
                         std::vector<std::string> diagnostics, std::string content_hash)
    : docs_(std::move(docs)),
      functions_(std::move(functions)),
      diagnostics_(std::move(diagnostics)),
      hash_(std::move(content_hash)) {
  std::sort(docs_.begin(), docs_.end(),
            [](const SourceDoc& a, const SourceDoc& b) { return a.path < b.path; });
  std::stable_sort(functions_.begin(), functions_.end(), [](const auto& a, const auto& b) {
    return a.file != b.file ? a.file < b.file : a.start_line < b.start_line;
  });
  for (const auto& f : functions_) graph_.nodes.insert(f.name);
  std::size_t dropped = 0;
  for (const auto& f : functions_) {
    for (const auto& call : f.syscall_sites) {
      if (graph_.nodes.contains(call.syscall))
        graph_.edges.insert({f.name, call.syscall});
      else
        ++dropped;
    }
  }
  if (dropped > 0)
    graph_notes_.push_back("call graph: " + std::to_string(dropped) +
                           " call(s) to functions outside the tree not added as edges");
}

std::vector<std::string> SourceIndex::diagnostics() const {
  auto out = diagnostics_;
  out.insert(out.end(), graph_notes_.begin(), graph_notes_.end());
  return out;
}

const SourceDoc* SourceIndex::doc(std::string_view path) const {
  const auto it = std::lower_bound(docs_.begin(), docs_.end(), path,
                                   [](const SourceDoc& d, std::string_view p) { return d.path < p; });
  return it != docs_.end() && it->path == path ? &*it : nullptr;
}

std::vector<SiteRef> SourceIndex::find_syscall_sites(std::string_view syscall) const {
  std::vector<SiteRef> out;
  for (const auto& f : functions_)
    for (const auto& s : f.syscall_sites)
      if (s.syscall == syscall) out.push_back({f.file, f.name, s.line});
  std::sort(out.begin(), out.end(), [](const SiteRef& a, const SiteRef& b) {
    return a.file != b.file ? a.file < b.file : a.line < b.line;
  });
  return out;
}

std::vector<SiteRef> SourceIndex::find_syscall_sites(std::string_view syscall,
                                                     std::string_view file) const {
  auto all = find_syscall_sites(syscall);
  std::erase_if(all, [&](const SiteRef& s) { return s.file != file; });
  return all;
}

const FunctionRecord* SourceIndex::function_at(std::string_view file, int line) const {
  const FunctionRecord* best = nullptr;
  for (const auto& f : functions_) {
    if (f.file != file || line < f.start_line || line > f.end_line) continue;
    if (!best || f.start_line >= best->start_line) best = &f;
  }
  return best;
}

std::pair<SourceDoc, std::vector<FunctionRecord>> index_file(const std::string& rel_path,
                                                             std::string_view content) {
  const auto scan = scan_c(content);
  SourceDoc doc;
  doc.path = rel_path;

  const fs::path p(rel_path);
  const auto stemless = (p.parent_path() / p.stem()).generic_string();
  doc.field(DocField::file_name) = preprocess(stemless, TextMode::c_source, TokenOrigin::doc_field);

  std::vector<std::string> names;
  std::vector<FunctionRecord> functions;
  for (std::size_t i = 0; i < scan.functions.size(); ++i) {
    const auto& span = scan.functions[i];
    names.push_back(span.name);
    FunctionRecord rec{span.name, rel_path, span.start_line, span.end_line, {}};
    for (const auto& call : scan.calls[i]) rec.syscall_sites.push_back({call.callee, call.line});
    functions.push_back(std::move(rec));
  }
  doc.field(DocField::function_names) =
      preprocess(join(names), TextMode::c_source, TokenOrigin::doc_field);
  doc.field(DocField::variable_names) =
      preprocess(join(scan.variables), TextMode::c_source, TokenOrigin::doc_field);
  doc.field(DocField::full_text) = preprocess(content, TextMode::c_source, TokenOrigin::doc_field);
  return {std::move(doc), std::move(functions)};
}

SourceIndex index_tree(const fs::path& src_root) {
  std::error_code ec;
  if (!fs::is_directory(src_root, ec))
    throw InputError("source root is not a directory: " + src_root.string());

  std::vector<SourceDoc> docs;
  std::vector<FunctionRecord> functions;
  std::vector<std::string> diagnostics;
  for (const auto& file : c_files(src_root)) {
    const auto rel = file.lexically_relative(src_root).generic_string();
    const auto content = read_file(file);
    if (!content) {
      diagnostics.push_back("skipped unreadable file " + rel);
      continue;
    }
    auto [doc, funcs] = index_file(rel, *content);
    docs.push_back(std::move(doc));
    functions.insert(functions.end(), std::make_move_iterator(funcs.begin()),
                     std::make_move_iterator(funcs.end()));
  }
  if (docs.empty()) throw InputError("no .c/.h files under " + src_root.string());
  return SourceIndex(std::move(docs), std::move(functions), std::move(diagnostics),
                     tree_content_hash(src_root));
}

std::string tree_content_hash(const fs::path& src_root) {
  std::uint64_t h = 14695981039346656037ULL;
  auto mix = [&](std::string_view bytes) {
    for (const unsigned char c : bytes) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    h ^= 0xff;  // field separator
    h *= 1099511628211ULL;
  };
  for (const auto& file : c_files(src_root)) {
    mix(file.lexically_relative(src_root).generic_string());
    mix(read_file(file).value_or(std::string()));
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

SourceIndex index_tree_cached(const fs::path& src_root, const fs::path& cache_file) {
  const auto hash = tree_content_hash(src_root);
  if (const auto cached = read_file(cache_file)) {
    try {
      auto index = source_index_from_json(nlohmann::json::parse(*cached));
      if (index.content_hash() == hash) return index;
    } catch (const std::exception&) {
      // Stale or corrupt cache; rebuild below.
    }
  }
  auto index = index_tree(src_root);
  std::ofstream out(cache_file, std::ios::binary);
  if (out) out << to_json(index).dump(1) << '\n';
  return index;
}

}  // namespace sysrepro
