#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <string>

#include <CLI11.hpp>

#include "vforge/functions.hpp"
#include "vforge/products.hpp"
#include "vforge/scanner.hpp"
#include "vforge/theorems.hpp"

namespace {

// Exit contract: 0 pass, 1 mathematical failure/counterexample, 2 usage
// error, 3 I/O error.
constexpr int kExitPass = 0;
constexpr int kExitMathFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct CliIoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Plain decimal digits only; no sign, no scientific notation.
std::uint64_t parse_u64_strict(const std::string& s, const char* what) {
  if (s.empty() || s.size() > 19)
    throw UsageError(std::string(what) + ": expected a decimal integer");
  std::uint64_t v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw UsageError(std::string(what) + ": expected a decimal integer, got '" + s + "'");
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

constexpr std::uint32_t kMaxSieveLimit = 2000000000;

// Default sieve size is whatever the command needs; VFORGE_SIEVE_LIMIT
// overrides it (and must still cover the need).
std::uint32_t sieve_limit_for(std::uint64_t needed) {
  needed = std::max<std::uint64_t>(needed, 2);
  if (const char* env = std::getenv("VFORGE_SIEVE_LIMIT")) {
    std::uint64_t v = parse_u64_strict(env, "VFORGE_SIEVE_LIMIT");
    if (v < needed)
      throw UsageError("VFORGE_SIEVE_LIMIT=" + std::string(env) +
                       " is below the required limit " + std::to_string(needed));
    needed = v;
  }
  if (needed > kMaxSieveLimit)
    throw UsageError("sieve limit " + std::to_string(needed) + " too large");
  return static_cast<std::uint32_t>(needed);
}

struct OutputFile {
  std::ostream* os = &std::cout;
  std::unique_ptr<std::ofstream> file;

  explicit OutputFile(const std::string& path) {
    if (path == "-") return;
    file = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
    if (!*file) throw CliIoError("cannot open output file " + path);
    os = file.get();
  }
};

std::string format_value(const vforge::FactoredRational& v) {
  if (v.is_one()) return "1";
  return v.to_fraction_string() + " = " + v.to_factored_string();
}

// --- eval ----------------------------------------------------------------

struct EvalArgs {
  std::string fn;
  std::string arg;
  std::string route = "closed";
};

int run_eval(const EvalArgs& a) {
  if (a.fn == "g") {
    std::uint64_t num, den = 1;
    auto slash = a.arg.find('/');
    if (slash == std::string::npos) {
      num = parse_u64_strict(a.arg, "g argument");
    } else {
      num = parse_u64_strict(a.arg.substr(0, slash), "g numerator");
      den = parse_u64_strict(a.arg.substr(slash + 1), "g denominator");
    }
    if (num == 0 || den == 0) throw UsageError("g argument must be positive");
    std::cout << vforge::g_value(num, den) << "\n";
    return kExitPass;
  }
  std::uint64_t r = parse_u64_strict(a.arg, "argument");
  if (r == 0) throw UsageError("argument must be >= 1");
  vforge::SpfSieve sieve(sieve_limit_for(r));
  vforge::FactoredRational value;
  if (a.fn == "f") {
    value = a.route == "definitional" ? vforge::f_from_h(r, sieve)
                                      : vforge::f_value(r, sieve);
  } else if (a.fn == "h") {
    value = a.route == "definitional" ? vforge::h_definitional(r, sieve)
                                      : vforge::h_closed(r, sieve);
  } else {
    throw UsageError("unknown function '" + a.fn + "' (expected f, g or h)");
  }
  std::cout << format_value(value) << "\n";
  return kExitPass;
}

// --- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::string id;
  std::string n_str;
  std::string range_str;
  std::string p_str;
  bool json = false;
};

void print_verdict(const vforge::Verdict& v, bool json, std::ostream& os) {
  if (json) {
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "{\"theorem\":\"%s\",\"n\":%llu,\"p\":%llu,\"passed\":%s,"
                  "\"margin_lo\":%.17g,\"margin_hi\":%.17g,\"tie\":%s,"
                  "\"witness\":\"%s\"}",
                  v.theorem.c_str(), static_cast<unsigned long long>(v.n),
                  static_cast<unsigned long long>(v.p),
                  v.passed ? "true" : "false", v.margin_lo, v.margin_hi,
                  v.tie ? "true" : "false", v.witness.c_str());
    os << buf << "\n";
    return;
  }
  os << v.theorem << " n=" << v.n;
  if (v.p != 0) os << " p=" << v.p;
  os << (v.passed ? " PASS" : " FAIL");
  if (v.tie) os << " TIE";
  char buf[64];
  std::snprintf(buf, sizeof(buf), " margin=[%g,%g]", v.margin_lo, v.margin_hi);
  os << buf;
  if (!v.witness.empty()) os << " witness: " << v.witness;
  os << "\n";
}

int run_verify(const VerifyArgs& a) {
  static const std::set<std::string> ids{"thm1", "thm2", "thm3", "thm4",
                                         "thm5", "cor1", "eq9"};
  if (!ids.contains(a.id))
    throw UsageError("unknown theorem id '" + a.id + "'");
  if (a.n_str.empty() == a.range_str.empty())
    throw UsageError("give exactly one of --n or --range");

  std::uint64_t lo, hi;
  if (!a.n_str.empty()) {
    lo = hi = parse_u64_strict(a.n_str, "--n");
  } else {
    auto dots = a.range_str.find("..");
    if (dots == std::string::npos)
      throw UsageError("--range expects a..b");
    lo = parse_u64_strict(a.range_str.substr(0, dots), "--range start");
    hi = parse_u64_strict(a.range_str.substr(dots + 2), "--range end");
  }
  if (lo < 1 || hi < lo) throw UsageError("empty or invalid range");

  std::optional<std::uint64_t> p;
  if (!a.p_str.empty()) {
    if (a.id != "thm4") throw UsageError("--p applies to thm4 only");
    p = parse_u64_strict(a.p_str, "--p");
  }

  std::uint64_t need = hi;
  if (a.id == "thm3" || a.id == "cor1") need = std::max<std::uint64_t>(need, 1023);
  vforge::SpfSieve sieve(sieve_limit_for(need));

  std::uint64_t checked = 0, passed = 0;
  auto sink = [&](const vforge::Verdict& v) {
    if (v.n < lo) return;
    ++checked;
    if (v.passed) ++passed;
    print_verdict(v, a.json, std::cout);
  };

  if (a.id == "thm4" && p) {
    for (std::uint64_t n = lo; n <= hi; ++n) sink(vforge::check_thm4(n, *p));
  } else {
    vforge::Log2Table logs(sieve.primes(), sieve.limit());
    vforge::scan_theorems(hi, {a.id}, sieve, logs, sink);
  }
  if (!a.json)
    std::cout << a.id << ": " << passed << "/" << checked << " passed\n";
  return passed == checked ? kExitPass : kExitMathFailure;
}

// --- scan ----------------------------------------------------------------

struct ScanArgs {
  std::string n_max_str;
  std::string checkpoint;
  std::string out = "-";
  std::uint64_t checkpoint_every = 10000;
  int jobs = 1;
  bool resume = false;
};

int run_scan(const ScanArgs& a) {
  vforge::ScanOptions opt;
  opt.n_max = parse_u64_strict(a.n_max_str, "n_max");
  if (opt.n_max < 1) throw UsageError("n_max must be >= 1");
  opt.checkpoint_path = a.checkpoint;
  opt.checkpoint_every = a.checkpoint_every;
  opt.resume = a.resume;
  opt.jobs = a.jobs;
  if (opt.resume && opt.checkpoint_path.empty())
    throw UsageError("--resume requires --checkpoint");
  if (opt.jobs < 1) throw UsageError("--jobs must be >= 1");

  vforge::SpfSieve sieve(sieve_limit_for(opt.n_max));
  vforge::Log2Table logs(sieve.primes(), sieve.limit());
  OutputFile out(a.out);

  vforge::ScanSummary summary = vforge::scan_conjecture(
      opt, sieve, logs,
      [&](const vforge::ScanRecord& rec) { *out.os << to_json_line(rec) << "\n"; });
  out.os->flush();
  if (out.file && !*out.file) throw CliIoError("write to " + a.out + " failed");

  std::cerr << "scan: " << summary.records << " records, "
            << summary.escalations << " escalations\n";
  if (summary.failed) {
    std::cerr << "scan: FAILURE at n=" << summary.failure_n << "\n"
              << summary.witness << "\n";
    return kExitMathFailure;
  }
  return kExitPass;
}

// --- constant-c ------------------------------------------------------------

int run_constant(bool exact) {
  vforge::SpfSieve sieve(sieve_limit_for(1023));
  vforge::ConstantC c = vforge::constant_c(sieve);
  std::string lo12 = c.decimal_lo(12), hi12 = c.decimal_hi(12);
  std::cout << "c = " << c.decimal_lo(10) << "... (n=1023)\n";
  std::cout << "enclosure = [" << lo12 << ", " << hi12 << "]\n";
  if (exact)
    std::cout << "P(1023) = " << c.exact_rep.to_factored_string() << "\n";
  return kExitPass;
}

// --- report ----------------------------------------------------------------

struct ReportArgs {
  std::uint64_t n_max = 100000;
  std::string out = "-";
};

int run_report(const ReportArgs& a) {
  if (a.n_max < 4) throw UsageError("--n-max must be >= 4");
  vforge::SpfSieve sieve(sieve_limit_for(a.n_max));
  vforge::Log2Table logs(sieve.primes(), sieve.limit());
  vforge::MonitorResult mon = vforge::limit_monitor(a.n_max, sieve, logs);

  OutputFile out(a.out);
  *out.os << "n,root_f_lo,root_f_hi,root_h_lo,root_h_hi\n";
  for (const auto& s : mon.samples) {
    char buf[192];
    std::snprintf(buf, sizeof(buf), "%llu,%.17g,%.17g,%.17g,%.17g\n",
                  static_cast<unsigned long long>(s.n), s.root_f.lo,
                  s.root_f.hi, s.root_h.lo, s.root_h.hi);
    *out.os << buf;
  }
  out.os->flush();
  if (out.file && !*out.file) throw CliIoError("write to " + a.out + " failed");

  if (!mon.h_bounded_by_c) {
    std::cerr << "report: h-root exceeded c\n";
    return kExitMathFailure;
  }
  if (a.n_max >= 1023 && mon.max_root_n != 1023) {
    std::cerr << "report: running max of the h-root at n=" << mon.max_root_n
              << ", expected 1023\n";
    return kExitMathFailure;
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vforge: exact verification of the f/g/h product bounds"};
  app.require_subcommand(1);

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "evaluate f, g or h exactly");
  eval->add_option("function", eval_args.fn, "one of f, g, h")->required();
  eval->add_option("argument", eval_args.arg,
                   "positive integer (or rational a/b for g)")->required();
  eval->add_option("--route", eval_args.route, "definitional or closed")
      ->check(CLI::IsMember({"definitional", "closed"}));

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "check a theorem on n or a range");
  verify->add_option("theorem", verify_args.id,
                     "thm1 thm2 thm3 thm4 thm5 cor1 eq9")->required();
  verify->add_option("--n", verify_args.n_str, "single index");
  verify->add_option("--range", verify_args.range_str, "inclusive range a..b");
  verify->add_option("--p", verify_args.p_str, "odd prime (thm4)");
  verify->add_flag("--json", verify_args.json, "one JSON object per verdict");

  ScanArgs scan_args;
  auto* scan = app.add_subcommand("scan", "scan the 4^n bound up to n_max");
  scan->add_option("n_max", scan_args.n_max_str, "scan upper bound")->required();
  scan->add_option("--checkpoint", scan_args.checkpoint, "checkpoint file");
  scan->add_option("--checkpoint-every", scan_args.checkpoint_every,
                   "checkpoint cadence in indices");
  scan->add_flag("--resume", scan_args.resume, "resume from the checkpoint");
  scan->add_option("--jobs", scan_args.jobs, "worker count (block-parallel)");
  scan->add_option("--out", scan_args.out, "records file, - for stdout");

  bool constant_exact = false;
  auto* constant = app.add_subcommand("constant-c", "print the sharp constant");
  constant->add_flag("--exact", constant_exact, "dump factored P(1023)");

  ReportArgs report_args;
  auto* report = app.add_subcommand("report", "emit the limit-monitor CSV");
  report->add_option("--n-max", report_args.n_max, "monitor upper bound");
  report->add_option("--out", report_args.out, "CSV file, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*eval) return run_eval(eval_args);
    if (*verify) return run_verify(verify_args);
    if (*scan) return run_scan(scan_args);
    if (*constant) return run_constant(constant_exact);
    if (*report) return run_report(report_args);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const vforge::CheckpointIoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const CliIoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitMathFailure;
  }
  return kExitUsage;
}
