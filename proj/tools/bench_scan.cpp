// Times the serial reference scan against the block-parallel one on the
// same range, plus the closed-form random-access path, and prints a small
// table.  Wall time only; correctness equivalence is covered by the tests.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "vforge/products.hpp"
#include "vforge/scanner.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t n_max = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 100000;
  if (n_max < 1) n_max = 100000;

  std::printf("building sieve and log table to %llu...\n",
              static_cast<unsigned long long>(n_max));
  auto t0 = std::chrono::steady_clock::now();
  vforge::SpfSieve sieve(static_cast<std::uint32_t>(std::max<std::uint64_t>(n_max, 1023)));
  vforge::Log2Table logs(sieve.primes(), sieve.limit());
  std::printf("  setup: %.3f s\n\n", seconds_since(t0));

  int hw = 1;
#ifdef _OPENMP
  hw = omp_get_max_threads();
#endif
  std::vector<int> jobs{1};
  for (int j = 2; j <= hw; j *= 2) jobs.push_back(j);
  if (jobs.back() != hw) jobs.push_back(hw);

  std::printf("%-28s %10s %14s\n", "configuration", "time [s]", "ns/index");
  double serial_time = 0;
  for (int j : jobs) {
    vforge::ScanOptions opt;
    opt.n_max = n_max;
    opt.checkpoint_every = n_max;  // no mid-run checkpoints
    opt.jobs = j;
    std::uint64_t records = 0;
    t0 = std::chrono::steady_clock::now();
    vforge::ScanSummary s = vforge::scan_conjecture(
        opt, sieve, logs, [&](const vforge::ScanRecord&) { ++records; });
    double dt = seconds_since(t0);
    if (j == 1) serial_time = dt;
    char label[64];
    std::snprintf(label, sizeof(label), "conjecture scan, jobs=%d", j);
    std::printf("%-28s %10.3f %14.1f", label, dt, dt / double(n_max) * 1e9);
    if (j > 1 && serial_time > 0) std::printf("   speedup %.2fx", serial_time / dt);
    if (s.failed || records != n_max) std::printf("   [UNEXPECTED OUTCOME]");
    std::printf("\n");
  }

  // Closed-form random access, for scale: one full product per call.
  const std::uint64_t probes = std::min<std::uint64_t>(n_max, 200);
  t0 = std::chrono::steady_clock::now();
  for (std::uint64_t i = 1; i <= probes; ++i) {
    std::uint64_t n = n_max - (i - 1) * (n_max / probes);
    vforge::FactoredRational p = vforge::product_f(std::max<std::uint64_t>(n, 1), sieve);
    if (p.term_count() == 0 && n > 2) std::printf("  [empty product?]\n");
  }
  double dt = seconds_since(t0);
  std::printf("%-28s %10.3f %14.1f\n", "closed form, per call", dt,
              dt / double(probes) * 1e9);
  return 0;
}
