#include "sysrepro/locate.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <tuple>

#include "sysrepro/error.hpp"

namespace sysrepro {
namespace {

SyscallLocation at_site(const std::string& syscall, const SiteRef& s) {
  return {syscall, s.file, s.function, s.line};
}

class Emitter {
 public:
  void add(InstrumentationPoint p) {
    auto key = std::make_tuple(p.at.syscall, p.at.file, p.at.line, p.placement,
                               p.partner ? p.partner->line : 0,
                               p.partner ? p.partner->syscall : std::string());
    if (!seen_.insert(std::move(key)).second) return;
    p.rank = static_cast<int>(points_.size()) + 1;
    points_.push_back(std::move(p));
  }

  void singleton(const std::string& syscall, const std::vector<SiteRef>& sites) {
    for (const auto& s : sites) {
      add({0, at_site(syscall, s), std::nullopt, Placement::before});
      add({0, at_site(syscall, s), std::nullopt, Placement::after});
    }
  }

  std::vector<InstrumentationPoint> take() { return std::move(points_); }

 private:
  std::vector<InstrumentationPoint> points_;
  std::set<std::tuple<std::string, std::string, int, Placement, int, std::string>> seen_;
};

struct SitePair {
  SiteRef a;
  SiteRef b;
};

// Closest pair of sites, optionally restricted to one function; ties go to
// the pair whose earlier line is smallest.
std::optional<SitePair> closest(const std::vector<SiteRef>& as, const std::vector<SiteRef>& bs,
                                bool same_function) {
  std::optional<SitePair> best;
  auto key = [](const SitePair& p) {
    return std::make_pair(std::abs(p.a.line - p.b.line), std::min(p.a.line, p.b.line));
  };
  for (const auto& a : as) {
    for (const auto& b : bs) {
      if (same_function && a.function != b.function) continue;
      SitePair cand{a, b};
      if (!best || key(cand) < key(*best)) best = cand;
    }
  }
  return best;
}

}  // namespace

std::string_view to_string(Placement placement) {
  switch (placement) {
    case Placement::between_pair:
      return "between-pair";
    case Placement::before:
      return "before";
    case Placement::after:
      return "after";
  }
  return "?";
}

Placement placement_from_string(std::string_view text) {
  if (text == "between-pair") return Placement::between_pair;
  if (text == "before") return Placement::before;
  if (text == "after") return Placement::after;
  throw InputError("unknown placement: " + std::string(text));
}

LocateResult locate(const PairRanking& ranking, const RankedFiles& files, const SourceIndex& index,
                    int top_files, const SyscallCatalog* catalog) {
  if (top_files < 1) throw InputError("top_files must be >= 1");
  if (ranking.enumerate_all && !catalog)
    throw InputError("enumerate-all locating needs the syscall catalog");

  LocateResult result;
  Emitter emit;
  const auto limit = std::min(files.entries.size(), static_cast<std::size_t>(top_files));
  const auto& graph = index.call_graph();

  for (std::size_t fi = 0; fi < limit; ++fi) {
    const auto& file = files.entries[fi].path;

    if (ranking.enumerate_all) {
      std::vector<SyscallLocation> sites;
      for (const auto& f : index.functions())
        if (f.file == file)
          for (const auto& s : f.syscall_sites)
            if (catalog->contains(s.syscall)) sites.push_back({s.syscall, f.file, f.name, s.line});
      std::sort(sites.begin(), sites.end(), [](const auto& x, const auto& y) {
        return std::tie(x.line, x.syscall) < std::tie(y.line, y.syscall);
      });
      for (const auto& s : sites) {
        emit.add({0, s, std::nullopt, Placement::before});
        emit.add({0, s, std::nullopt, Placement::after});
      }
      continue;
    }

    for (const auto& entry : ranking.entries) {
      if (entry.items.size() == 1) {
        emit.singleton(entry.items[0], index.find_syscall_sites(entry.items[0], file));
        continue;
      }
      const auto& na = entry.items[0];
      const auto& nb = entry.items[1];
      const auto as = index.find_syscall_sites(na, file);
      const auto bs = index.find_syscall_sites(nb, file);
      if (as.empty() || bs.empty()) continue;

      if (const auto p = closest(as, bs, true)) {
        const bool a_first = p->a.line <= p->b.line;
        const auto first = a_first ? at_site(na, p->a) : at_site(nb, p->b);
        const auto second = a_first ? at_site(nb, p->b) : at_site(na, p->a);
        emit.add({0, first, second, Placement::between_pair});
        continue;
      }

      const auto p = *closest(as, bs, false);
      auto first = at_site(na, p.a);
      auto second = at_site(nb, p.b);
      if (graph.reaches(first.function, second.function)) {
        // caller first
      } else if (graph.reaches(second.function, first.function)) {
        std::swap(first, second);
      } else {
        if (second.line < first.line) std::swap(first, second);
        result.diagnostics.push_back("no call path between " + first.function + " and " +
                                     second.function + " in " + file + "; using line order");
      }
      emit.add({0, first, second, Placement::between_pair});
    }
  }

  result.points = emit.take();
  if (result.points.empty())
    result.diagnostics.push_back("no syscall sites found in the top " + std::to_string(limit) +
                                 " ranked file(s)");
  return result;
}

std::vector<SyscallLocation> ranked_locations(const std::vector<InstrumentationPoint>& points) {
  std::vector<SyscallLocation> out;
  std::set<SyscallLocation> seen;
  auto push = [&](const SyscallLocation& l) {
    if (seen.insert(l).second) out.push_back(l);
  };
  for (const auto& p : points) {
    push(p.at);
    if (p.partner) push(*p.partner);
  }
  return out;
}

}  // namespace sysrepro
