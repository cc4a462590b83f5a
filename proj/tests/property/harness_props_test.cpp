#include <gtest/gtest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "gen.hpp"
#include "sysrepro/error.hpp"
#include "sysrepro/harness.hpp"

namespace sysrepro {
namespace {

const std::vector<std::string> kPaths{"a", "b", "c"};

SyscallOp random_op(testing::Gen& g) {
  const auto& p = g.pick(kPaths);
  const auto& q = g.pick(kPaths);
  switch (g.below(9)) {
    case 0: return SyscallOp::parse("open " + p);
    case 1: return SyscallOp::parse("open " + p + " creat 0600");
    case 2: return SyscallOp::parse("unlink " + p);
    case 3: return SyscallOp::parse("rename " + p + " " + q);
    case 4: return SyscallOp::parse("link " + p + " " + q);
    case 5: return SyscallOp::parse("chmod " + p + (g.coin() ? " 0600" : " 0644"));
    case 6: return SyscallOp::parse("write " + p + " t" + std::to_string(g.below(3)));
    case 7: return SyscallOp::parse("read " + p);
    default: return SyscallOp::parse("stat " + p);
  }
}

Scenario random_scenario(testing::Gen& g, std::size_t max_ops = 7) {
  Scenario s;
  s.id = "random";
  for (const auto& p : kPaths)
    if (g.coin(60)) s.initial_fs.push_back({p, NodeKind::file, g.coin() ? 0600u : 0644u, "t0"});
  const int procs = g.between(2, 3);
  std::size_t budget = max_ops;
  for (int i = 0; i < procs; ++i) {
    ProcessTrace t;
    t.name = "p" + std::to_string(i);
    const auto room = budget - static_cast<std::size_t>(procs - i - 1);
    const auto n = 1 + g.below(std::min<std::size_t>(room, 4));
    for (std::size_t k = 0; k < n; ++k) {
      t.ops.push_back(random_op(g));
      if (g.coin(70))
        s.src_map.push_back({"s.c", t.name, 10 * (i + 1) + static_cast<int>(k),
                             static_cast<std::size_t>(i), k});
    }
    budget -= n;
    s.processes.push_back(std::move(t));
  }
  const auto& target = g.pick(kPaths);
  switch (g.below(4)) {
    case 0: s.oracle = {OracleKind::open_enoent, target, ""}; break;
    case 1: s.oracle = {OracleKind::mode_mismatch, target, "0600"}; break;
    case 2: s.oracle = {OracleKind::path_missing, target, ""}; break;
    default: s.oracle = {OracleKind::content_mismatch, target, "t0"}; break;
  }
  s.validate();
  return s;
}

std::vector<InstrumentationPoint> all_points(const Scenario& s, testing::Gen& g) {
  std::vector<InstrumentationPoint> out;
  for (const auto& e : s.src_map) {
    InstrumentationPoint p;
    p.rank = static_cast<int>(out.size()) + 1;
    p.at = {s.processes[e.process].ops[e.op].text(), e.file, e.function, e.line};
    p.placement = static_cast<Placement>(g.below(3));
    if (p.placement == Placement::between_pair) p.partner = p.at;
    out.push_back(std::move(p));
  }
  return out;
}

std::size_t multinomial(const Scenario& s) {
  std::size_t total = 0;
  std::size_t result = 1;
  for (const auto& p : s.processes) {
    for (std::size_t k = 1; k <= p.ops.size(); ++k) {
      ++total;
      result = result * total / k;
    }
  }
  return result;
}

bool in_program_order(const Scenario& s, const InterleavingSchedule& sched) {
  try {
    check_schedule(s, sched);
    return true;
  } catch (const InputError&) {
    return false;
  }
}

TEST(HarnessProps, EveryScheduleKeepsProgramOrder) {
  testing::Gen g(501);
  for (int c = 0; c < testing::kCases; ++c) {
    const auto s = random_scenario(g);
    const auto runs = enumerate_interleavings(s);
    ASSERT_EQ(runs.size(), multinomial(s));
    for (const auto& r : runs) ASSERT_TRUE(in_program_order(s, r.schedule));
    for (std::size_t i = 1; i < runs.size(); ++i) ASSERT_LT(runs[i - 1].schedule.steps, runs[i].schedule.steps);
    ASSERT_TRUE(in_program_order(s, default_schedule(s)));
    for (const auto& p : all_points(s, g)) ASSERT_TRUE(in_program_order(s, schedule_with_delay(s, p)));
    const auto rb = random_baseline(s, 3, static_cast<std::uint64_t>(c));
    if (rb.schedule) ASSERT_TRUE(in_program_order(s, *rb.schedule));
  }
}

TEST(HarnessProps, ReplayIsDeterministic) {
  testing::Gen g(502);
  for (int c = 0; c < testing::kCases; ++c) {
    const auto s = random_scenario(g);
    const auto runs = enumerate_interleavings(s);
    const auto& sched = runs[g.below(runs.size())].schedule;
    const auto a = run_schedule(s, sched);
    const auto b = run_schedule(s, sched);
    ASSERT_EQ(a.log, b.log);
    ASSERT_TRUE(a.fs == b.fs);
    ASSERT_EQ(a.verdict, b.verdict);
    ASSERT_EQ(a.reason, b.reason);
    ASSERT_EQ(schedule_lines(s, sched), schedule_lines(s, sched));
  }
}

TEST(HarnessProps, ReproducedSchedulesAreEnumeratedFailures) {
  testing::Gen g(503);
  int reproduced = 0;
  for (int c = 0; c < testing::kCases; ++c) {
    const auto s = random_scenario(g);
    const auto points = all_points(s, g);
    ReproOptions opt;
    opt.max_attempts = g.between(1, 10);
    opt.enumerate_all = g.coin();
    const auto r = reproduce(s, points, {}, opt);
    ASSERT_LE(r.attempts, opt.max_attempts);
    if (!r.reproduced) {
      ASSERT_FALSE(r.schedule);
      continue;
    }
    ++reproduced;
    ASSERT_TRUE(r.schedule);
    const auto runs = enumerate_interleavings(s);
    const bool listed = std::any_of(runs.begin(), runs.end(), [&](const EnumeratedRun& e) {
      return e.verdict == Verdict::fail && e.schedule.same_steps(*r.schedule);
    });
    ASSERT_TRUE(listed) << "case " << c;
    ASSERT_EQ(run_schedule(s, *r.schedule).verdict, Verdict::fail);
  }
  EXPECT_GT(reproduced, 0);
}

TEST(HarnessProps, RandomBaselineIsSeededAndSound) {
  testing::Gen g(504);
  for (int c = 0; c < testing::kCases; ++c) {
    const auto s = random_scenario(g);
    const auto seed = static_cast<std::uint64_t>(g.below(1000));
    const auto a = random_baseline(s, 5, seed);
    const auto b = random_baseline(s, 5, seed);
    ASSERT_EQ(a.attempts, b.attempts);
    ASSERT_EQ(a.schedule, b.schedule);
    if (a.reproduced) ASSERT_EQ(run_schedule(s, *a.schedule).verdict, Verdict::fail);
  }
}

Vfs random_fs(testing::Gen& g) {
  Vfs fs;
  for (const auto& p : kPaths)
    if (g.coin(70)) fs.create(p, NodeKind::file, g.coin() ? 0600u : 0644u, g.word());
  if (g.coin(30) && fs.exists("a")) fs.link("a", "d");
  return fs;
}

TEST(VfsLaws, RenameThenStatSucceeds) {
  testing::Gen g(505);
  for (int c = 0; c < testing::kCases; ++c) {
    auto fs = random_fs(g);
    const auto& from = g.pick(kPaths);
    const auto& to = g.pick(kPaths);
    const auto src = fs.stat(from);
    if (fs.rename(from, to) != Errno::ok) {
      ASSERT_FALSE(src);
      continue;
    }
    ASSERT_TRUE(fs.stat(to));
    ASSERT_EQ(fs.stat(to)->inode, src->inode);
    ASSERT_EQ(fs.stat(to)->content, src->content);
    if (from != to) ASSERT_FALSE(fs.exists(from));
  }
}

TEST(VfsLaws, UnlinkThenOpenFails) {
  testing::Gen g(506);
  for (int c = 0; c < testing::kCases; ++c) {
    auto fs = random_fs(g);
    const auto& p = g.pick(kPaths);
    const bool existed = fs.exists(p);
    ASSERT_EQ(fs.unlink(p) == Errno::ok, existed);
    ASSERT_EQ(fs.open(p, false), Errno::enoent);
  }
}

TEST(VfsLaws, ChmodOnlyChangesMode) {
  testing::Gen g(507);
  for (int c = 0; c < testing::kCases; ++c) {
    auto fs = random_fs(g);
    const auto before = fs.snapshot();
    const auto& p = g.pick(kPaths);
    const unsigned mode = static_cast<unsigned>(g.below(01000));
    if (fs.chmod(p, mode) != Errno::ok) {
      ASSERT_EQ(fs.snapshot(), before);
      continue;
    }
    const auto after = fs.snapshot();
    ASSERT_EQ(after.size(), before.size());
    const auto inode = before.at(p).inode;
    for (const auto& [name, info] : after) {
      auto expected = before.at(name);
      if (expected.inode == inode) expected.mode = mode;
      ASSERT_EQ(info, expected) << name;
    }
  }
}

}  // namespace
}  // namespace sysrepro
