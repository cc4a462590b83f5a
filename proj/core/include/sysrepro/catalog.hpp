#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sysrepro/report.hpp"
#include "sysrepro/tfidf.hpp"

namespace sysrepro {

struct ManPageEntry {
  std::string syscall_name;
  std::string name_section_text;
};

enum class KeySource { direct, derived };

std::string_view to_string(KeySource source);

struct KeyEntry {
  std::string name;
  int count = 0;
  KeySource source = KeySource::direct;
  /// Similarity for derived entries, 0 for direct ones.
  double score = 0.0;
};

struct KeySystemCalls {
  KeySource path = KeySource::direct;
  std::vector<KeyEntry> entries;
  /// Body sentence index -> syscall names in mention order (with repeats).
  /// Only sentences with at least one mention appear.
  std::map<std::size_t, std::vector<std::string>> by_sentence;
  /// Mentions in the subject line, in order.
  std::vector<std::string> subject_mentions;

  bool empty() const noexcept { return entries.empty(); }
  std::vector<std::string> names() const;
};

/// The universe of syscall names with their manual NAME descriptions.
/// Immutable after construction; the man-page TF-IDF index is built once.
class SyscallCatalog {
 public:
  /// Throws InputError when `entries` is empty or has duplicate names.
  explicit SyscallCatalog(std::vector<ManPageEntry> entries);

  /// One entry per `<name>.txt` in `man_dir`. Throws InputError when the
  /// directory is missing or holds no such file.
  static SyscallCatalog load(const std::filesystem::path& man_dir);

  bool contains(std::string_view name) const;
  const ManPageEntry* find(std::string_view name) const;
  const std::vector<ManPageEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const TfIdfIndex& index() const noexcept { return index_; }

 private:
  std::vector<ManPageEntry> entries_;  // sorted by name
  TfIdfIndex index_;
};

/// Exact, case-insensitive token matches of catalog names in subject and
/// body. Entries ordered by count descending, then name.
KeySystemCalls extract_direct(const BugReport& report, const SyscallCatalog& catalog);

/// Top-n syscalls by similarity of the whole report to the NAME texts.
/// Zero-similarity syscalls are never returned. Throws InputError if n < 1.
KeySystemCalls extract_derived(const BugReport& report, const SyscallCatalog& catalog,
                               int n = 10);

/// Direct extraction when it finds anything, derived otherwise.
KeySystemCalls extract(const BugReport& report, const SyscallCatalog& catalog, int n = 10);

}  // namespace sysrepro
