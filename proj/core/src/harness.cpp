#include "sysrepro/harness.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>

#include "sysrepro/error.hpp"
#include "sysrepro/rng.hpp"

namespace sysrepro {
namespace {

Event execute(Vfs& fs, std::size_t process, std::size_t index, const SyscallOp& op) {
  Event ev{process, index, op, Errno::ok, {}};
  const auto& a = op.args;
  switch (op.kind) {
    case OpKind::open: {
      const bool creat = a.size() >= 2;
      const unsigned mode = a.size() == 3 ? parse_mode(a[2]) : 0644;
      ev.result = fs.open(a[0], creat, mode);
      break;
    }
    case OpKind::close:
      break;
    case OpKind::read:
      ev.result = fs.read(a[0], &ev.detail);
      break;
    case OpKind::write:
      ev.result = fs.write(a[0], a[1]);
      break;
    case OpKind::unlink:
      ev.result = fs.unlink(a[0]);
      break;
    case OpKind::rename:
      ev.result = fs.rename(a[0], a[1]);
      break;
    case OpKind::link:
      ev.result = fs.link(a[0], a[1]);
      break;
    case OpKind::mkdir:
      ev.result = fs.mkdir(a[0], a.size() == 2 ? parse_mode(a[1]) : 0755);
      break;
    case OpKind::mknod:
      ev.result = fs.mknod(a[0], a.size() == 2 ? parse_mode(a[1]) : 0644);
      break;
    case OpKind::chmod:
      ev.result = fs.chmod(a[0], parse_mode(a[1]));
      break;
    case OpKind::stat:
      if (const auto info = fs.stat(a[0]))
        ev.detail = format_mode(info->mode);
      else
        ev.result = Errno::enoent;
      break;
  }
  return ev;
}

// Runs `process` from `from` up to (excluding) `to`.
void append_range(InterleavingSchedule& s, std::size_t process, std::size_t from, std::size_t to) {
  for (std::size_t i = from; i < to; ++i) s.steps.push_back({process, i});
}

RunOutcome run_checked(const Scenario& scn, const InterleavingSchedule& sched) {
  RunOutcome out;
  out.fs = initial_state(scn);
  for (const auto& step : sched.steps)
    out.log.push_back(execute(out.fs, step.process, step.op, scn.processes[step.process].ops[step.op]));
  out.verdict = evaluate_oracle(scn.oracle, out.fs, out.log, &out.reason);
  return out;
}

}  // namespace

std::string_view to_string(Verdict v) { return v == Verdict::pass ? "pass" : "fail"; }

Vfs initial_state(const Scenario& scn) {
  Vfs fs;
  // Parents before children regardless of listing order.
  std::vector<const InitialNode*> nodes;
  for (const auto& n : scn.initial_fs) nodes.push_back(&n);
  std::stable_sort(nodes.begin(), nodes.end(), [](const InitialNode* a, const InitialNode* b) {
    return std::count(a->path.begin(), a->path.end(), '/') <
           std::count(b->path.begin(), b->path.end(), '/');
  });
  for (const auto* n : nodes) {
    const auto e = fs.create(n->path, n->kind, n->mode, n->content);
    if (e != Errno::ok)
      throw InputError("initial_fs entry " + n->path + ": " + std::string(to_string(e)));
  }
  return fs;
}

void check_schedule(const Scenario& scn, const InterleavingSchedule& sched) {
  std::vector<std::size_t> next(scn.processes.size(), 0);
  for (const auto& step : sched.steps) {
    if (step.process >= scn.processes.size())
      throw InputError("invalid schedule: unknown process " + std::to_string(step.process));
    if (step.op != next[step.process])
      throw InputError("invalid schedule: " + scn.processes[step.process].name + " op " +
                       std::to_string(step.op) + " out of program order");
    ++next[step.process];
  }
  for (std::size_t p = 0; p < scn.processes.size(); ++p)
    if (next[p] != scn.processes[p].ops.size())
      throw InputError("invalid schedule: " + scn.processes[p].name + " does not run to completion");
}

RunOutcome run_schedule(const Scenario& scn, const InterleavingSchedule& sched) {
  check_schedule(scn, sched);
  return run_checked(scn, sched);
}

Verdict evaluate_oracle(const OraclePredicate& oracle, const Vfs& fs,
                        const std::vector<Event>& log, std::string* reason) {
  auto fail = [&](std::string why) {
    if (reason) *reason = std::move(why);
    return Verdict::fail;
  };
  switch (oracle.kind) {
    case OracleKind::open_enoent:
      for (const auto& ev : log)
        if (ev.call.kind == OpKind::open && ev.call.args[0] == oracle.path &&
            ev.result == Errno::enoent)
          return fail("open(" + oracle.path + ") failed with ENOENT");
      break;
    case OracleKind::mode_mismatch: {
      const auto info = fs.stat(oracle.path);
      if (!info) return fail(oracle.path + " is missing");
      if (info->mode != parse_mode(oracle.expected))
        return fail(oracle.path + " has mode " + format_mode(info->mode) + ", expected " +
                    format_mode(parse_mode(oracle.expected)));
      break;
    }
    case OracleKind::path_missing:
      if (!fs.exists(oracle.path)) return fail(oracle.path + " is missing");
      break;
    case OracleKind::content_mismatch: {
      const auto info = fs.stat(oracle.path);
      if (!info) return fail(oracle.path + " is missing");
      if (info->content != oracle.expected)
        return fail(oracle.path + " holds '" + info->content + "', expected '" + oracle.expected + "'");
      break;
    }
  }
  if (reason) reason->clear();
  return Verdict::pass;
}

InterleavingSchedule default_schedule(const Scenario& scn) {
  InterleavingSchedule s;
  for (std::size_t p = 0; p < scn.processes.size(); ++p)
    append_range(s, p, 0, scn.processes[p].ops.size());
  return s;
}

InterleavingSchedule schedule_with_delay(const Scenario& scn, const InstrumentationPoint& point) {
  const auto* entry = scn.map_location(point.at);
  if (!entry)
    throw InputError("no src_map entry for " + point.at.file + ":" + point.at.function + ":" +
                     std::to_string(point.at.line) + " (" + point.at.syscall + ")");
  const auto p = entry->process;
  const auto k = entry->op;
  const std::size_t cut = point.placement == Placement::before ? k : k + 1;

  InterleavingSchedule s;
  s.injected_delays.push_back({p, k, point.placement});
  append_range(s, p, 0, cut);
  for (std::size_t q = 0; q < scn.processes.size(); ++q)
    if (q != p) append_range(s, q, 0, scn.processes[q].ops.size());
  append_range(s, p, cut, scn.processes[p].ops.size());
  return s;
}

std::vector<std::string> schedule_lines(const Scenario& scn, const InterleavingSchedule& sched) {
  std::vector<std::string> out;
  for (const auto& step : sched.steps) {
    std::string line = scn.processes[step.process].name + ":" +
                       scn.processes[step.process].ops[step.op].text() + " @ ";
    if (const auto* e = scn.map_op(step.process, step.op))
      line += e->file + ":" + e->function + ":" + std::to_string(e->line);
    else
      line += "-";
    out.push_back(std::move(line));
  }
  return out;
}

ReproResult reproduce(const Scenario& scn, const std::vector<InstrumentationPoint>& points,
                      std::span<const TestCase> tests, const ReproOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  ReproResult result;
  auto finish = [&]() -> ReproResult {
    result.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return std::move(result);
  };

  const bool bind = scn.has_placeholders() && !tests.empty();
  if (scn.has_placeholders() && tests.empty())
    result.diagnostics.push_back("scenario has input placeholders but no test cases were given");

  std::vector<std::optional<InstrumentationPoint>> units(points.begin(), points.end());
  if (units.empty() && options.enumerate_all) units.emplace_back();

  const std::size_t per_point = bind ? tests.size() : 1;
  for (const auto& point : units) {
    for (std::size_t t = 0; t < per_point; ++t) {
      if (result.attempts >= options.max_attempts) return finish();
      ++result.attempts;

      Scenario bound_storage;
      const Scenario* run_scn = &scn;
      if (bind) {
        auto bound = bind_scenario(scn, tests[t]);
        if (auto* failure = std::get_if<BindFailure>(&bound)) {
          result.diagnostics.push_back("attempt " + std::to_string(result.attempts) + ": " +
                                       failure->reason);
          continue;
        }
        bound_storage = std::move(std::get<Scenario>(bound));
        run_scn = &bound_storage;
      }

      InterleavingSchedule sched;
      if (point && run_scn->map_location(point->at)) {
        sched = schedule_with_delay(*run_scn, *point);
      } else {
        if (point)
          result.diagnostics.push_back("attempt " + std::to_string(result.attempts) + ": point " +
                                       std::to_string(point->rank) +
                                       " has no src_map entry; running undelayed");
        sched = default_schedule(*run_scn);
      }
      const auto run = run_checked(*run_scn, sched);
      if (run.verdict == Verdict::fail) {
        result.reproduced = true;
        result.schedule_text = schedule_lines(*run_scn, sched);
        result.schedule = std::move(sched);
        result.point_used = point;
        if (bind) result.test_case = tests[t];
        result.diagnostics.push_back(run.reason);
        return finish();
      }
    }
  }
  return finish();
}

std::vector<EnumeratedRun> enumerate_interleavings(const Scenario& scn, std::size_t bound) {
  const auto total = scn.total_ops();
  if (total > bound)
    throw InputError("scenario has " + std::to_string(total) + " ops; enumeration bound is " +
                     std::to_string(bound));
  std::vector<EnumeratedRun> out;
  std::vector<std::size_t> next(scn.processes.size(), 0);
  InterleavingSchedule current;
  std::function<void()> walk = [&] {
    if (current.steps.size() == total) {
      out.push_back({current, run_checked(scn, current).verdict});
      return;
    }
    for (std::size_t p = 0; p < scn.processes.size(); ++p) {
      if (next[p] == scn.processes[p].ops.size()) continue;
      current.steps.push_back({p, next[p]++});
      walk();
      --next[p];
      current.steps.pop_back();
    }
  };
  walk();
  return out;
}

ReproResult random_baseline(const Scenario& scn, int budget_runs, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(seed);
  ReproResult result;
  for (int run = 0; run < budget_runs; ++run) {
    ++result.attempts;
    std::vector<std::size_t> remaining;
    std::size_t left = 0;
    for (const auto& p : scn.processes) {
      remaining.push_back(p.ops.size());
      left += p.ops.size();
    }
    std::vector<std::size_t> next(scn.processes.size(), 0);
    InterleavingSchedule sched;
    // Choosing a process with probability proportional to its remaining ops
    // draws every interleaving with equal probability.
    while (left > 0) {
      auto r = uniform_below(rng, left);
      std::size_t p = 0;
      while (r >= remaining[p]) r -= remaining[p++];
      sched.steps.push_back({p, next[p]++});
      --remaining[p];
      --left;
    }
    const auto outcome = run_checked(scn, sched);
    if (outcome.verdict == Verdict::fail) {
      result.reproduced = true;
      result.schedule_text = schedule_lines(scn, sched);
      result.schedule = std::move(sched);
      result.diagnostics.push_back(outcome.reason);
      break;
    }
  }
  result.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace sysrepro
