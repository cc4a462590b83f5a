#include "sysrepro/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sysrepro/error.hpp"
#include "sysrepro/rng.hpp"

namespace sysrepro {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

}  // namespace

double average_precision(const std::vector<std::string>& ranked, const std::set<std::string>& relevant) {
  if (relevant.empty()) throw InputError("average precision needs at least one relevant item");
  double sum = 0.0;
  int hits = 0;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    if (!relevant.contains(ranked[i]) || !seen.insert(ranked[i]).second) continue;
    ++hits;
    sum += static_cast<double>(hits) / static_cast<double>(i + 1);
  }
  return sum / static_cast<double>(relevant.size());
}

double mean_average_precision(const std::vector<double>& aps) {
  if (aps.empty()) throw InputError("MAP over zero queries");
  double sum = 0.0;
  for (const double ap : aps) sum += ap;
  return sum / static_cast<double>(aps.size());
}

double recall_at_k(const std::vector<std::string>& ranked, const std::set<std::string>& relevant, int k) {
  if (k < 1) throw InputError("recall@k needs k >= 1");
  if (relevant.empty()) throw InputError("recall needs at least one relevant item");
  std::set<std::string> found;
  const auto limit = std::min(ranked.size(), static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < limit; ++i)
    if (relevant.contains(ranked[i])) found.insert(ranked[i]);
  return static_cast<double>(found.size()) / static_cast<double>(relevant.size());
}

double annotator_agreement(int agreements, int total) {
  if (total <= 0) throw InputError("agreement needs total > 0");
  if (agreements < 0 || agreements > total) throw InputError("agreements must lie in [0, total]");
  return static_cast<double>(agreements) / static_cast<double>(total);
}

std::string location_key(const SyscallLocation& loc) {
  return loc.syscall + "@" + loc.file + ":" + loc.function + ":" + std::to_string(loc.line);
}

std::vector<int> truth_ranks(const std::vector<SyscallLocation>& ranked, const GroundTruth& truth) {
  std::vector<int> out;
  for (const auto& t : truth.syscalls) {
    const auto it = std::find(ranked.begin(), ranked.end(), t);
    out.push_back(it == ranked.end() ? 0 : static_cast<int>(it - ranked.begin()) + 1);
  }
  return out;
}

std::size_t words_to_remove(std::size_t word_count, double fraction) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw InputError("fraction must lie in [0, 1]");
  // The epsilon keeps products such as 0.1 * 30 from flooring to 2.
  const auto n = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(word_count) + 1e-9));
  return std::min(n, word_count);
}

BugReport perturb_report(const BugReport& report, double fraction, std::uint64_t seed) {
  struct Span {
    std::size_t begin;
    std::size_t end;
  };
  const auto& body = report.body;
  std::vector<Span> words;
  for (std::size_t i = 0; i < body.size();) {
    while (i < body.size() && is_space(body[i])) ++i;
    const auto b = i;
    while (i < body.size() && !is_space(body[i])) ++i;
    if (i > b) words.push_back({b, i});
  }

  const auto remove = words_to_remove(words.size(), fraction);
  std::vector<std::size_t> order(words.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < remove; ++i) {
    const auto j = i + uniform_below(rng, order.size() - i);
    std::swap(order[i], order[j]);
  }
  std::vector<bool> dropped(words.size(), false);
  for (std::size_t i = 0; i < remove; ++i) dropped[order[i]] = true;

  std::string out;
  if (remove < words.size()) {
    std::size_t pos = 0;
    for (std::size_t w = 0; w < words.size(); ++w) {
      out.append(body, pos, words[w].begin - pos);
      if (!dropped[w]) out.append(body, words[w].begin, words[w].end - words[w].begin);
      pos = words[w].end;
    }
    out.append(body, pos, std::string::npos);
  }
  return make_report(report.id, report.subject, std::move(out));
}

}  // namespace sysrepro
