#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sysrepro {

enum class NodeKind { file, dir, fifo };

std::string_view to_string(NodeKind kind);
NodeKind node_kind_from_string(std::string_view text);

enum class Errno { ok, enoent, eexist, eisdir, eperm, enotdir };

std::string_view to_string(Errno e);

struct NodeInfo {
  NodeKind kind = NodeKind::file;
  unsigned mode = 0644;
  std::string content;
  std::uint64_t inode = 0;
  int links = 1;

  friend bool operator==(const NodeInfo&, const NodeInfo&) = default;
};

/// In-memory filesystem with inode semantics: hard links share an inode,
/// rename replaces the target atomically, a name is dropped by unlink and
/// the inode disappears with its last link. Paths are plain strings; the
/// parent of "a/b" is "a", and names without '/' live in the root, which
/// always exists.
class Vfs {
 public:
  Errno create(std::string_view path, NodeKind kind, unsigned mode, std::string content = {});

  /// `create` makes a missing regular file (O_CREAT without O_EXCL).
  Errno open(std::string_view path, bool create, unsigned mode = 0644);
  Errno read(std::string_view path, std::string* content_out = nullptr) const;
  Errno write(std::string_view path, std::string content);
  Errno unlink(std::string_view path);
  Errno rename(std::string_view from, std::string_view to);
  Errno link(std::string_view existing, std::string_view new_path);
  Errno mkdir(std::string_view path, unsigned mode = 0755);
  Errno mknod(std::string_view path, unsigned mode = 0644);
  Errno chmod(std::string_view path, unsigned mode);
  std::optional<NodeInfo> stat(std::string_view path) const;

  bool exists(std::string_view path) const { return names_.contains(std::string(path)); }

  /// Sorted path -> node view, used for comparisons and dumps.
  std::map<std::string, NodeInfo> snapshot() const;

  friend bool operator==(const Vfs& a, const Vfs& b) { return a.snapshot() == b.snapshot(); }

 private:
  struct Inode {
    NodeKind kind;
    unsigned mode;
    std::string content;
    int links;
  };

  Errno check_parent(std::string_view path) const;
  void drop_link(std::uint64_t inode);

  std::map<std::string, std::uint64_t> names_;
  std::map<std::uint64_t, Inode> inodes_;
  std::uint64_t next_inode_ = 1;
};

std::string format_mode(unsigned mode);
/// Parses an octal mode such as "0644" or "755".
unsigned parse_mode(std::string_view text);

}  // namespace sysrepro
