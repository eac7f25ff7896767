#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "vforge/factored.hpp"
#include "vforge/theorems.hpp"
#include "vforge/valuation.hpp"

namespace vforge {

// Per-n outcome of the 4^n bound scan.  slack_bits encloses
// 2n - log2(f-product); its lower bound is positive for every passing
// record.  escalated marks records whose interval test was inconclusive
// and fell back to the exact big-integer comparison.
struct ScanRecord {
  std::uint64_t n = 0;
  Interval log2_f_product;
  Interval slack_bits;
  bool escalated = false;
  enum class Status { Pass, Fail, Tie } status = Status::Pass;
};

// One JSON object: {"n":..,"slack_bits_lo":..,"slack_bits_hi":..,
// "escalated":..,"status":".."} — fixed field order, %.17g doubles, so
// identical runs are byte-identical.
std::string to_json_line(const ScanRecord& rec);

// Persistent scan state.  Line-oriented text:
//   vforge-checkpoint v1
//   n_done=<int>
//   p=<prime> e=<exponent>      (one line per prime of the f-product)
//   crc=<hex CRC32 of all preceding bytes>
// Only exact integers are stored; every derived quantity (log enclosures,
// the h-product v2) is recomputed on load, which is what makes a resumed
// run bit-identical to an uninterrupted one.
struct Checkpoint {
  std::uint64_t n_done = 0;
  FactoredRational f_exponents;

  std::string serialize() const;
  static Checkpoint parse(const std::string& text);  // throws CheckpointIoError

  void save(const std::string& path) const;          // atomic replace
  static Checkpoint load(const std::string& path);
};

struct ScanOptions {
  std::uint64_t n_max = 1;
  std::uint64_t checkpoint_every = 10000;
  std::string checkpoint_path;  // empty: no checkpointing
  bool resume = false;
  int jobs = 1;  // > 1 partitions the range into closed-form-seeded blocks
};

struct ScanSummary {
  std::uint64_t records = 0;
  std::uint64_t escalations = 0;
  bool failed = false;           // bound violated or exact tie found
  std::uint64_t failure_n = 0;
  std::string witness;           // exact-comparison transcript on failure
};

using RecordSink = std::function<void(const ScanRecord&)>;

// Scans n = resume-point+1 .. n_max, emitting one record per n in index
// order.  jobs == 1 is the serial reference; jobs > 1 runs OpenMP blocks
// whose start states are seeded from the factorial-quotient closed form.
// Both paths emit identical streams.  Halts at the first failure or tie.
ScanSummary scan_conjecture(const ScanOptions& opt, const SpfSieve& sieve,
                            const Log2Table& logs, const RecordSink& emit);

using VerdictSink = std::function<void(const Verdict&)>;

// Single incremental pass over n = 1..n_max evaluating the selected
// checkers per index; verdicts appear in index order, theorems in the id
// order above.  Returns true iff every verdict passed.  thm2/thm4 touch
// every prime <= n per index, so ranges in the few thousands are the
// intended scale for those two.
bool scan_theorems(std::uint64_t n_max, const std::set<std::string>& which,
                   const SpfSieve& sieve, const Log2Table& logs,
                   const VerdictSink& emit);

// Convergence monitoring of the n-th roots of both products, sampled at
// powers of two and at 2^m - 1.  No convergence-rate assertion is made;
// the h-root is checked against c exactly at every index and the running
// argmax of the h-root is tracked.
struct MonitorSample {
  std::uint64_t n = 0;
  Interval root_f;
  Interval root_h;
};

struct MonitorResult {
  std::vector<MonitorSample> samples;
  std::uint64_t max_root_n = 0;   // first index attaining the running max
  bool h_bounded_by_c = true;
  std::uint64_t escalations = 0;
};

MonitorResult limit_monitor(std::uint64_t n_max, const SpfSieve& sieve,
                            const Log2Table& logs);

}  // namespace vforge
