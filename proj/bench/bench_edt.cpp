// Serial reference vs OpenMP estimate_edt, and guided vs plain radius lookup.
//
//   bench_edt [runs]
#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <vector>

#include "smallworld/router.hpp"
#include "smallworld/sampler.hpp"

using namespace smallworld;

namespace {

template <class F>
double time_it(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void bench_edt(std::int64_t runs) {
  std::printf("%-10s %-5s %-8s %-10s %-10s %-8s %s\n", "n", "r", "runs", "serial_s", "omp_s", "speedup",
              "same");
  const GridParams cases[] = {{1 << 10, 2.0, 1, 1}, {1 << 14, 1.0, 1, 1}, {1 << 17, 2.0, 1, 1},
                              {1 << 20, 2.0, 1, 1}, {8500, 2.0, 1, 600}};
  for (const GridParams& g : cases) {
    const EstimateConfig config{runs, 2024, 0};
    EdtEstimate serial, parallel;
    const double ts = time_it([&] { serial = estimate_edt_serial(g, config); });
    const double tp = time_it([&] { parallel = estimate_edt(g, config); });
    std::printf("%-10lld %-5.2g %-8lld %-10.3f %-10.3f %-8.2f %s\n", static_cast<long long>(g.n), g.r,
                static_cast<long long>(runs), ts, tp, ts / tp,
                serial.mean_hops == parallel.mean_hops ? "yes" : "NO");
  }
}

void bench_radius_lookup() {
  std::printf("\n%-10s %-5s %-14s %-14s\n", "n", "r", "guided_ns", "upper_bound_ns");
  constexpr int draws = 5'000'000;
  for (std::int64_t n : {std::int64_t{1} << 10, std::int64_t{1} << 17, std::int64_t{1} << 22}) {
    for (double r : {1.0, 2.0, 3.5}) {
      const RadiusWeights w(n, r);
      std::mt19937_64 rng(1);
      std::uniform_real_distribution<double> mass(0.0, w.total());
      std::vector<double> masses(draws);
      for (auto& m : masses) m = mass(rng);
      std::int64_t sink = 0;
      const double tg = time_it([&] {
        for (double m : masses) sink += w.radius_at(m);
      });
      const auto cum = w.cumulative();
      const double tb = time_it([&] {
        for (double m : masses) sink += std::upper_bound(cum.begin(), cum.end(), m) - cum.begin() + 1;
      });
      std::printf("%-10lld %-5.2g %-14.2f %-14.2f%s\n", static_cast<long long>(n), r, tg / draws * 1e9,
                  tb / draws * 1e9, sink == 42 ? " " : "");
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  const std::int64_t runs = argc > 1 ? std::atoll(argv[1]) : 10'000;
  std::printf("OpenMP threads: %d\n\n", omp_get_max_threads());
  bench_edt(runs);
  bench_radius_lookup();
}
