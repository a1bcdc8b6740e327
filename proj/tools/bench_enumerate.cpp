// Compares the serial reference kernel with the OpenMP kernel on the same
// consistency queries and checks that they agree.

#include <cstdio>
#include <string>

#include "toelab/enumerate.hpp"

#ifdef _OPENMP
#include <omp.h>
#else
#include <chrono>
#endif

namespace {

double now() {
#ifdef _OPENMP
  return omp_get_wtime();
#else
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
#endif
}

}  // namespace

int main(int argc, char** argv) {
  unsigned max_len = argc > 1 ? static_cast<unsigned>(std::stoul(argv[1])) : 16;
  toe::Bits target = toe::bits_from_string(argc > 2 ? argv[2] : "10");
  toe::ConsistencyQuery query{target, max_len,
                              toe::default_budget(max_len, target.size())};

  std::printf("L=%u target=%s programs=%llu steps/run<=%llu\n", max_len,
              toe::bits_to_string(target).c_str(),
              static_cast<unsigned long long>(toe::program_count_upto(max_len)),
              static_cast<unsigned long long>(query.budget.max_steps));

  double t0 = now();
  toe::QSet serial = toe::consistent_set(query, toe::Exec::Serial);
  double t1 = now();
  toe::QSet parallel = toe::consistent_set(query, toe::Exec::Parallel);
  double t2 = now();

  std::printf("serial:   %8.3fs  count=%llu undecided=%llu\n", t1 - t0,
              static_cast<unsigned long long>(serial.count),
              static_cast<unsigned long long>(serial.undecided));
  std::printf("parallel: %8.3fs  count=%llu undecided=%llu  speedup=%.2fx\n",
              t2 - t1, static_cast<unsigned long long>(parallel.count),
              static_cast<unsigned long long>(parallel.undecided),
              (t1 - t0) / (t2 - t1));

  bool same = serial.count == parallel.count &&
              serial.undecided == parallel.undecided &&
              serial.q_min == parallel.q_min &&
              serial.members_sample == parallel.members_sample;
  std::printf("kernels agree: %s\n", same ? "yes" : "NO");
  return same ? 0 : 1;
}
