#include "sysrepro/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "sysrepro/error.hpp"
#include "sysrepro/text.hpp"

namespace sysrepro {
namespace {

std::vector<ManPageEntry> sorted_unique(std::vector<ManPageEntry> entries) {
  if (entries.empty()) throw InputError("syscall catalog is empty");
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.syscall_name < b.syscall_name; });
  for (std::size_t i = 1; i < entries.size(); ++i)
    if (entries[i].syscall_name == entries[i - 1].syscall_name)
      throw InputError("duplicate syscall in catalog: " + entries[i].syscall_name);
  return entries;
}

TfIdfIndex build_man_index(const std::vector<ManPageEntry>& entries) {
  std::vector<IndexedDoc> docs;
  docs.reserve(entries.size());
  for (const auto& e : entries)
    docs.push_back({e.syscall_name,
                    preprocess(e.name_section_text, TextMode::natural_language,
                               TokenOrigin::doc_field)});
  return TfIdfIndex::build(docs);
}

std::string rtrim(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ' ||
                        s.back() == '\t'))
    s.pop_back();
  return s;
}

std::vector<std::string> mentions(std::string_view text, const SyscallCatalog& catalog) {
  std::vector<std::string> out;
  for (const auto& word : split_words(text)) {
    auto lw = to_lower(word);
    if (catalog.contains(lw)) out.push_back(std::move(lw));
  }
  return out;
}

}  // namespace

std::string_view to_string(KeySource source) {
  return source == KeySource::direct ? "direct" : "derived";
}

std::vector<std::string> KeySystemCalls::names() const {
  std::vector<std::string> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.name);
  return out;
}

SyscallCatalog::SyscallCatalog(std::vector<ManPageEntry> entries)
    : entries_(sorted_unique(std::move(entries))), index_(build_man_index(entries_)) {}

SyscallCatalog SyscallCatalog::load(const std::filesystem::path& man_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(man_dir, ec))
    throw InputError("man-page directory not found: " + man_dir.string());
  std::vector<ManPageEntry> entries;
  for (const auto& item : fs::directory_iterator(man_dir)) {
    if (!item.is_regular_file() || item.path().extension() != ".txt") continue;
    std::ifstream in(item.path(), std::ios::binary);
    if (!in) throw InputError("cannot read man page: " + item.path().string());
    std::ostringstream buf;
    buf << in.rdbuf();
    auto text = rtrim(buf.str());
    if (text.empty()) throw InputError("empty man page: " + item.path().string());
    entries.push_back({item.path().stem().string(), std::move(text)});
  }
  if (entries.empty()) throw InputError("no man pages in " + man_dir.string());
  return SyscallCatalog(std::move(entries));
}

const ManPageEntry* SyscallCatalog::find(std::string_view name) const {
  const auto it = std::lower_bound(
      entries_.begin(), entries_.end(), name,
      [](const ManPageEntry& e, std::string_view n) { return e.syscall_name < n; });
  if (it == entries_.end() || it->syscall_name != name) return nullptr;
  return &*it;
}

bool SyscallCatalog::contains(std::string_view name) const { return find(name) != nullptr; }

KeySystemCalls extract_direct(const BugReport& report, const SyscallCatalog& catalog) {
  KeySystemCalls keys;
  keys.path = KeySource::direct;
  std::unordered_map<std::string, int> counts;
  std::vector<std::string> first_seen;
  auto tally = [&](const std::vector<std::string>& names) {
    for (const auto& n : names)
      if (counts[n]++ == 0) first_seen.push_back(n);
  };

  keys.subject_mentions = mentions(report.subject, catalog);
  tally(keys.subject_mentions);
  for (std::size_t i = 0; i < report.sentences.size(); ++i) {
    auto found = mentions(report.sentences[i], catalog);
    if (found.empty()) continue;
    tally(found);
    keys.by_sentence.emplace(i, std::move(found));
  }

  for (const auto& name : first_seen)
    keys.entries.push_back({name, counts[name], KeySource::direct, 0.0});
  std::sort(keys.entries.begin(), keys.entries.end(), [](const auto& a, const auto& b) {
    return a.count != b.count ? a.count > b.count : a.name < b.name;
  });
  return keys;
}

KeySystemCalls extract_derived(const BugReport& report, const SyscallCatalog& catalog, int n) {
  if (n < 1) throw InputError("n for derived extraction must be >= 1");
  KeySystemCalls keys;
  keys.path = KeySource::derived;
  const auto query = preprocess(report.subject + "\n" + report.body, TextMode::natural_language,
                                TokenOrigin::body);
  const auto scores = catalog.index().similarities(query);
  const auto& ids = catalog.index().doc_ids();

  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < scores.size(); ++i)
    if (scores[i] > 0.0) order.push_back(i);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] != scores[b] ? scores[a] > scores[b] : ids[a] < ids[b];
  });
  if (order.size() > static_cast<std::size_t>(n)) order.resize(static_cast<std::size_t>(n));
  for (const auto i : order) keys.entries.push_back({ids[i], 1, KeySource::derived, scores[i]});
  return keys;
}

KeySystemCalls extract(const BugReport& report, const SyscallCatalog& catalog, int n) {
  auto direct = extract_direct(report, catalog);
  if (!direct.empty()) return direct;
  return extract_derived(report, catalog, n);
}

}  // namespace sysrepro
