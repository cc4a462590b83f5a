#include "sysrepro/vfs.hpp"

#include <cstdio>

#include "sysrepro/error.hpp"

namespace sysrepro {
namespace {

std::string parent_of(std::string_view path) {
  const auto slash = path.rfind('/');
  if (slash == std::string_view::npos || slash == 0) return {};
  return std::string(path.substr(0, slash));
}

bool under(std::string_view path, std::string_view dir) {
  return path.size() > dir.size() && path.substr(0, dir.size()) == dir && path[dir.size()] == '/';
}

}  // namespace

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::file:
      return "file";
    case NodeKind::dir:
      return "dir";
    case NodeKind::fifo:
      return "fifo";
  }
  return "?";
}

NodeKind node_kind_from_string(std::string_view text) {
  if (text == "file") return NodeKind::file;
  if (text == "dir") return NodeKind::dir;
  if (text == "fifo") return NodeKind::fifo;
  throw InputError("unknown node kind: " + std::string(text));
}

std::string_view to_string(Errno e) {
  switch (e) {
    case Errno::ok:
      return "ok";
    case Errno::enoent:
      return "ENOENT";
    case Errno::eexist:
      return "EEXIST";
    case Errno::eisdir:
      return "EISDIR";
    case Errno::eperm:
      return "EPERM";
    case Errno::enotdir:
      return "ENOTDIR";
  }
  return "?";
}

std::string format_mode(unsigned mode) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%04o", mode & 07777u);
  return buf;
}

unsigned parse_mode(std::string_view text) {
  if (text.empty() || text.size() > 5) throw InputError("bad mode: " + std::string(text));
  unsigned mode = 0;
  for (const char c : text) {
    if (c < '0' || c > '7') throw InputError("bad octal mode: " + std::string(text));
    mode = mode * 8 + static_cast<unsigned>(c - '0');
  }
  return mode & 07777u;
}

Errno Vfs::check_parent(std::string_view path) const {
  const auto parent = parent_of(path);
  if (parent.empty()) return Errno::ok;
  const auto it = names_.find(parent);
  if (it == names_.end()) return Errno::enoent;
  if (inodes_.at(it->second).kind != NodeKind::dir) return Errno::enotdir;
  return Errno::ok;
}

void Vfs::drop_link(std::uint64_t inode) {
  auto& node = inodes_.at(inode);
  if (--node.links == 0) inodes_.erase(inode);
}

Errno Vfs::create(std::string_view path, NodeKind kind, unsigned mode, std::string content) {
  if (path.empty()) return Errno::enoent;
  if (exists(path)) return Errno::eexist;
  if (const auto e = check_parent(path); e != Errno::ok) return e;
  const auto id = next_inode_++;
  inodes_.emplace(id, Inode{kind, mode & 07777u, std::move(content), 1});
  names_.emplace(std::string(path), id);
  return Errno::ok;
}

Errno Vfs::open(std::string_view path, bool create_missing, unsigned mode) {
  if (exists(path)) return Errno::ok;
  if (!create_missing) return Errno::enoent;
  return create(path, NodeKind::file, mode);
}

Errno Vfs::read(std::string_view path, std::string* content_out) const {
  const auto it = names_.find(std::string(path));
  if (it == names_.end()) return Errno::enoent;
  const auto& node = inodes_.at(it->second);
  if (node.kind == NodeKind::dir) return Errno::eisdir;
  if (content_out) *content_out = node.content;
  return Errno::ok;
}

Errno Vfs::write(std::string_view path, std::string content) {
  const auto it = names_.find(std::string(path));
  if (it == names_.end()) return Errno::enoent;
  auto& node = inodes_.at(it->second);
  if (node.kind == NodeKind::dir) return Errno::eisdir;
  node.content = std::move(content);
  return Errno::ok;
}

Errno Vfs::unlink(std::string_view path) {
  const auto it = names_.find(std::string(path));
  if (it == names_.end()) return Errno::enoent;
  if (inodes_.at(it->second).kind == NodeKind::dir) return Errno::eisdir;
  const auto id = it->second;
  names_.erase(it);
  drop_link(id);
  return Errno::ok;
}

Errno Vfs::rename(std::string_view from, std::string_view to) {
  const auto src = names_.find(std::string(from));
  if (src == names_.end()) return Errno::enoent;
  if (const auto e = check_parent(to); e != Errno::ok) return e;
  const auto id = src->second;
  const bool src_dir = inodes_.at(id).kind == NodeKind::dir;
  if (src_dir && under(to, from)) return Errno::eperm;

  if (const auto dst = names_.find(std::string(to)); dst != names_.end()) {
    if (dst->second == id) return Errno::ok;  // same inode: no-op
    const bool dst_dir = inodes_.at(dst->second).kind == NodeKind::dir;
    if (dst_dir && !src_dir) return Errno::eisdir;
    if (!dst_dir && src_dir) return Errno::enotdir;
    if (dst_dir) {
      for (const auto& [name, ino] : names_)
        if (under(name, to)) return Errno::eexist;  // ENOTEMPTY in POSIX
    }
    const auto old = dst->second;
    names_.erase(dst);
    drop_link(old);
  }

  std::vector<std::pair<std::string, std::uint64_t>> moved;
  if (src_dir) {
    for (auto it = names_.begin(); it != names_.end();) {
      if (under(it->first, from)) {
        moved.emplace_back(std::string(to) + it->first.substr(from.size()), it->second);
        it = names_.erase(it);
      } else {
        ++it;
      }
    }
  }
  names_.erase(std::string(from));
  names_.emplace(std::string(to), id);
  for (auto& m : moved) names_.insert(std::move(m));
  return Errno::ok;
}

Errno Vfs::link(std::string_view existing, std::string_view new_path) {
  const auto src = names_.find(std::string(existing));
  if (src == names_.end()) return Errno::enoent;
  if (inodes_.at(src->second).kind == NodeKind::dir) return Errno::eperm;
  if (exists(new_path)) return Errno::eexist;
  if (const auto e = check_parent(new_path); e != Errno::ok) return e;
  ++inodes_.at(src->second).links;
  names_.emplace(std::string(new_path), src->second);
  return Errno::ok;
}

Errno Vfs::mkdir(std::string_view path, unsigned mode) {
  return create(path, NodeKind::dir, mode);
}

Errno Vfs::mknod(std::string_view path, unsigned mode) {
  return create(path, NodeKind::fifo, mode);
}

Errno Vfs::chmod(std::string_view path, unsigned mode) {
  const auto it = names_.find(std::string(path));
  if (it == names_.end()) return Errno::enoent;
  inodes_.at(it->second).mode = mode & 07777u;
  return Errno::ok;
}

std::optional<NodeInfo> Vfs::stat(std::string_view path) const {
  const auto it = names_.find(std::string(path));
  if (it == names_.end()) return std::nullopt;
  const auto& node = inodes_.at(it->second);
  return NodeInfo{node.kind, node.mode, node.content, it->second, node.links};
}

std::map<std::string, NodeInfo> Vfs::snapshot() const {
  std::map<std::string, NodeInfo> out;
  for (const auto& [name, id] : names_) out.emplace(name, *stat(name));
  return out;
}

}  // namespace sysrepro
