#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sysrepro/catalog.hpp"
#include "sysrepro/miner.hpp"
#include "sysrepro/ranking.hpp"
#include "sysrepro/source_index.hpp"

namespace sysrepro {

enum class Placement { between_pair, before, after };

std::string_view to_string(Placement placement);
Placement placement_from_string(std::string_view text);

struct SyscallLocation {
  std::string syscall;
  std::string file;
  std::string function;
  int line = 0;

  friend auto operator<=>(const SyscallLocation&, const SyscallLocation&) = default;
};

struct InstrumentationPoint {
  int rank = 0;
  SyscallLocation at;
  /// Present exactly for between-pair points: the call that runs second.
  std::optional<SyscallLocation> partner;
  Placement placement = Placement::before;

  friend bool operator==(const InstrumentationPoint&, const InstrumentationPoint&) = default;
};

struct LocateResult {
  std::vector<InstrumentationPoint> points;
  std::vector<std::string> diagnostics;
};

inline constexpr int kDefaultTopFiles = 10;

/// Resolves ranked itemsets to call sites in the top `top_files` files.
/// In enumerate-all mode every call of a `catalog` name is visited, so the
/// catalog is then required (InputError otherwise).
LocateResult locate(const PairRanking& ranking, const RankedFiles& files, const SourceIndex& index,
                    int top_files = kDefaultTopFiles, const SyscallCatalog* catalog = nullptr);

/// Anchors then partners in point order, without repeats; the ranked list
/// that localization metrics are computed over.
std::vector<SyscallLocation> ranked_locations(const std::vector<InstrumentationPoint>& points);

}  // namespace sysrepro
