#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "sysrepro/locate.hpp"
#include "sysrepro/report.hpp"

namespace sysrepro {

struct GroundTruth {
  std::string bug_id;
  std::vector<std::string> files;
  std::vector<SyscallLocation> syscalls;
};

/// Mean over relevant items of precision at the item's rank; relevant
/// items absent from `ranked` contribute 0. Throws InputError when
/// `relevant` is empty.
double average_precision(const std::vector<std::string>& ranked, const std::set<std::string>& relevant);

/// Throws InputError on an empty list.
double mean_average_precision(const std::vector<double>& aps);

inline constexpr int kDefaultRecallK = 20;

/// |relevant ∩ top-k| / |relevant|. Throws InputError for k < 1 or empty
/// `relevant`.
double recall_at_k(const std::vector<std::string>& ranked, const std::set<std::string>& relevant,
                   int k = kDefaultRecallK);

/// agreements / total. Throws InputError unless 0 <= agreements <= total
/// and total > 0.
double annotator_agreement(int agreements, int total);

/// Identifier used to match located syscalls against ground truth.
std::string location_key(const SyscallLocation& loc);

/// 1-based ranks of each ground-truth syscall within `ranked`; 0 when
/// missing.
std::vector<int> truth_ranks(const std::vector<SyscallLocation>& ranked, const GroundTruth& truth);

/// Removes floor(fraction * N) of the N whitespace-separated body words,
/// chosen uniformly by a generator seeded with `seed`. Whitespace between
/// surviving words is kept; the subject is untouched.
BugReport perturb_report(const BugReport& report, double fraction, std::uint64_t seed);

/// Number of words perturb_report removes for `word_count` words.
std::size_t words_to_remove(std::size_t word_count, double fraction);

}  // namespace sysrepro
