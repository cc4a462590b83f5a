#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sysrepro/locate.hpp"
#include "sysrepro/scenario.hpp"
#include "sysrepro/testcase.hpp"
#include "sysrepro/vfs.hpp"

namespace sysrepro {

struct ScheduleStep {
  std::size_t process = 0;
  std::size_t op = 0;

  friend auto operator<=>(const ScheduleStep&, const ScheduleStep&) = default;
};

struct InjectedDelay {
  std::size_t process = 0;
  std::size_t op = 0;
  Placement placement = Placement::before;

  friend bool operator==(const InjectedDelay&, const InjectedDelay&) = default;
};

struct InterleavingSchedule {
  std::vector<ScheduleStep> steps;
  std::vector<InjectedDelay> injected_delays;

  /// Equality of the step order only.
  bool same_steps(const InterleavingSchedule& other) const { return steps == other.steps; }
  friend bool operator==(const InterleavingSchedule&, const InterleavingSchedule&) = default;
};

enum class Verdict { pass, fail };

std::string_view to_string(Verdict v);

struct Event {
  std::size_t process = 0;
  std::size_t op = 0;
  SyscallOp call;
  Errno result = Errno::ok;
  /// Observed mode or content for stat/read.
  std::string detail;

  friend bool operator==(const Event&, const Event&) = default;
};

struct RunOutcome {
  Vfs fs;
  std::vector<Event> log;
  Verdict verdict = Verdict::pass;
  std::string reason;
};

Vfs initial_state(const Scenario& scn);

/// Throws InputError unless every op of every process appears exactly once
/// and in program order.
void check_schedule(const Scenario& scn, const InterleavingSchedule& sched);

RunOutcome run_schedule(const Scenario& scn, const InterleavingSchedule& sched);

/// Verdict of the oracle over a finished run.
Verdict evaluate_oracle(const OraclePredicate& oracle, const Vfs& fs,
                        const std::vector<Event>& log, std::string* reason = nullptr);

/// Processes one after another in scenario order.
InterleavingSchedule default_schedule(const Scenario& scn);

/// The delayed process runs up to its delay site, every other process then
/// runs to completion in scenario order, and the delayed process finishes
/// last. Delay sites: before op k, after op k, and after the anchor op for
/// between-pair points. Throws InputError when the point has no src_map
/// entry.
InterleavingSchedule schedule_with_delay(const Scenario& scn, const InstrumentationPoint& point);

/// `<proc>:<syscall>(<args>) @ <file>:<function>:<line>`, "@ -" for
/// unmapped ops.
std::vector<std::string> schedule_lines(const Scenario& scn, const InterleavingSchedule& sched);

inline constexpr int kDefaultMaxAttempts = 100;
inline constexpr std::size_t kDefaultEnumerationBound = 12;

struct ReproOptions {
  int max_attempts = kDefaultMaxAttempts;
  /// With no points, run the undelayed schedule once instead of giving up.
  bool enumerate_all = false;
};

struct ReproResult {
  bool reproduced = false;
  int attempts = 0;
  std::optional<InterleavingSchedule> schedule;
  std::vector<std::string> schedule_text;
  std::optional<InstrumentationPoint> point_used;
  std::optional<TestCase> test_case;
  double wall_time_ms = 0.0;
  std::vector<std::string> diagnostics;
};

/// Tries points in rank order and, for scenarios with input placeholders,
/// each test case per point. A binding failure still costs an attempt.
/// Stops at the first failing verdict or when the budget is spent.
ReproResult reproduce(const Scenario& scn, const std::vector<InstrumentationPoint>& points,
                      std::span<const TestCase> tests = {}, const ReproOptions& options = {});

struct EnumeratedRun {
  InterleavingSchedule schedule;
  Verdict verdict;
};

/// Every program-order interleaving, in lexicographic order of process
/// index sequences. Throws InputError above `bound` total ops.
std::vector<EnumeratedRun> enumerate_interleavings(const Scenario& scn,
                                                   std::size_t bound = kDefaultEnumerationBound);

/// Uniformly random interleavings without delays until the oracle fails
/// or `budget_runs` runs are spent.
ReproResult random_baseline(const Scenario& scn, int budget_runs, std::uint64_t seed);

}  // namespace sysrepro
