// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance            run every criterion
//   acceptance 3 9        run criteria 3 and 9 only
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "smallworld/experiments.hpp"
#include "smallworld/router.hpp"
#include "smallworld/sampler.hpp"

using namespace smallworld;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double lattice_mean(std::int64_t n) {
  const auto nd = static_cast<double>(n);
  return 2.0 * (nd * nd - 1.0) / (3.0 * nd);
}

// Criteria 1 and 2 share the same 60 sampler runs.
struct SamplerSweep {
  double max_tv = 0.0;
  std::string worst_tv;
  double min_accept = 1.0;
  std::string worst_accept;
  double max_r0_z = 0.0;
  bool tv_ok = true;
  bool accept_ok = true;
  bool r0_ok = true;
  double seconds = 0.0;
};

const SamplerSweep& sampler_sweep() {
  static const SamplerSweep sweep = [] {
    SamplerSweep s;
    const auto start = std::chrono::steady_clock::now();
    std::uint64_t key = 0;
    for (std::int64_t n : {2, 4, 8, 16}) {
      const std::vector<Coord> origins{{0, 0}, {n / 2, 0}, {n / 2, n / 2}};
      for (const Coord u : origins) {
        for (double r : {0.0, 0.5, 1.0, 2.0, 3.0}) {
          const auto oracle = oracle_shortcut_distribution(u, n, r);
          const std::int64_t samples = noise_calibrated_samples(oracle, 0.005);
          const SamplerCheck c = check_sampler(u, n, r, samples, derive_seed(1, key++));
          const std::string where = fmt("n=%lld u=(%lld,%lld) r=%.1f", static_cast<long long>(n),
                                        static_cast<long long>(u.x), static_cast<long long>(u.y), r);
          if (c.tv >= 0.005) s.tv_ok = false;
          if (c.tv > s.max_tv) s.max_tv = c.tv, s.worst_tv = where;
          if (c.acceptance_rate <= 0.125) s.accept_ok = false;
          if (c.acceptance_rate < s.min_accept) s.min_accept = c.acceptance_rate, s.worst_accept = where;
          if (r == 0.0) {
            const auto nd = static_cast<double>(n);
            const double ratio = (nd * nd - 1.0) / (4.0 * (nd - 1.0) * (2.0 * nd - 1.0));
            const double z = std::abs(c.acceptance_rate - ratio) / c.acceptance_std_error;
            s.max_r0_z = std::max(s.max_r0_z, z);
            if (z > 3.0) s.r0_ok = false;
          }
        }
      }
    }
    s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return s;
  }();
  return sweep;
}

Verdict sampler_oracle_equivalence() {
  const SamplerSweep& s = sampler_sweep();
  return {s.tv_ok && s.seconds < 120.0,
          fmt("max TV %.5f at %s (limit 0.005), 60 configs in %.1f s (limit 120 s)", s.max_tv,
              s.worst_tv.c_str(), s.seconds)};
}

Verdict acceptance_lower_bound() {
  const SamplerSweep& s = sampler_sweep();
  return {s.accept_ok && s.r0_ok,
          fmt("min acceptance %.4f at %s (limit > 0.125); r=0 max deviation %.2f SE from "
              "(n^2-1)/(4(n-1)(2n-1)) (limit 3)",
              s.min_accept, s.worst_accept.c_str(), s.max_r0_z)};
}

Verdict acceptance_during_routing() {
  const EstimateConfig config{10'000, 3, 0};
  const double a1 = estimate_edt({1 << 14, 1.0, 1, 1}, config).acceptance_rate;
  const double a2 = estimate_edt({1 << 14, 2.0, 1, 1}, config).acceptance_rate;
  const double a25 = estimate_edt({1 << 14, 2.5, 1, 1}, config).acceptance_rate;
  const bool pass = std::abs(a1 - 0.29) <= 0.02 && std::abs(a2 - 0.86) <= 0.02 && a25 > 0.99;
  return {pass, fmt("n=2^14: r=1 %.4f (0.29+-0.02), r=2 %.4f (0.86+-0.02), r=2.5 %.4f (>0.99)", a1, a2, a25)};
}

Verdict pure_lattice_regime() {
  const auto start = std::chrono::steady_clock::now();
  const EdtEstimate e = estimate_edt({1024, 3.5, 1, 1}, {10'000, 4, 0});
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const double expected = lattice_mean(1024);
  const double rel = std::abs(e.mean_hops - expected) / expected;
  return {rel <= 0.02 && seconds < 60.0,
          fmt("n=1024 r=3.5: mean %.2f +- %.2f vs 2(n^2-1)/(3n) = %.2f, rel. error %.4f (limit 0.02), %.1f s",
              e.mean_hops, e.std_error, expected, rel, seconds)};
}

Verdict robustness_sweep_n20000() {
  const auto r_values = value_grid(0.0, 3.0, 0.1);
  const auto rows = sweep_over_r(20'000, r_values, 1, 1, {10'000, 5, 0});
  const auto best = std::min_element(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return a.estimate.mean_hops < b.estimate.mean_hops;
  });
  const bool all_ok = std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.ok(); });
  const double m = best->estimate.mean_hops;
  const bool pass = all_ok && m >= 119.0 && m <= 161.0 && best->x >= 1.5 - 1e-9 && best->x <= 2.0 + 1e-9;
  return {pass, fmt("n=20000: minimum %.2f (limit [119, 161]) at r=%.1f (limit [1.5, 2.0])", m, best->x)};
}

Verdict delivery_exponents() {
  const EstimateConfig config{10'000, 6, 0};
  const double a1 = estimate_exponent(1.0, 1 << 14, 1 << 18, config);
  const double a25 = estimate_exponent(2.5, 1 << 14, 1 << 18, config);
  const double a35 = estimate_exponent(3.5, 1 << 14, 1 << 18, config);
  const bool pass = std::abs(a1 - 0.5) <= 0.07 && std::abs(a25 - 0.5) <= 0.07 && std::abs(a35 - 1.0) <= 0.05;
  return {pass, fmt("[2^14, 2^18]: alpha(r=1) %.4f (0.50+-0.07), alpha(r=2.5) %.4f (0.50+-0.07), "
                    "alpha(r=3.5) %.4f (1.00+-0.05)",
                    a1, a25, a35)};
}

Verdict robustness_n2048() {
  const EstimateConfig config{10'000, 7, 0};
  const double e2 = estimate_edt({2048, 2.0, 1, 1}, config).mean_hops;
  bool pass = true;
  std::string detail = fmt("n=2^11, e_2=%.2f, budget %.2f:", e2, 2 * e2);
  for (double r : {0.0, 0.5, 1.0, 1.5, 2.0, 2.3}) {
    const double e = estimate_edt({2048, r, 1, 1}, config).mean_hops;
    pass = pass && e <= 2 * e2;
    detail += fmt(" r=%.1f %.2f", r, e);
  }
  return {pass, detail};
}

Verdict six_degrees() {
  const std::vector<double> r_values{1.5, 2.0};
  const auto sweeps = six_degrees_scenarios({10'000, 8, 0}, r_values, six_degrees_default_scenarios());
  const double shortcut = sweeps[0].rows[1].estimate.mean_hops;
  const double balanced = sweeps[1].rows[1].estimate.mean_hops;
  const double local = sweeps[2].rows[0].estimate.mean_hops;
  const auto in_range = [](double v) { return v >= 4.5 && v <= 6.5; };
  return {in_range(shortcut) && in_range(balanced) && in_range(local),
          fmt("n=8500: (1,600) r=2 %.3f, (10,380) r=2 %.3f, (15,120) r=1.5 %.3f (limit [4.5, 6.5])", shortcut,
              balanced, local)};
}

Verdict determinism_across_workers() {
  const GridParams g{4096, 2.0, 1, 1};
  const EdtEstimate serial = estimate_edt_serial(g, {10'000, 9, 1});
  bool pass = true;
  std::string detail = fmt("serial mean %.17g;", serial.mean_hops);
  for (int workers : {1, 4, 8}) {
    const EdtEstimate e = estimate_edt(g, {10'000, 9, workers});
    const bool same = e.mean_hops == serial.mean_hops && e.std_error == serial.std_error &&
                      e.proposed == serial.proposed && e.accepted == serial.accepted;
    pass = pass && same;
    detail += fmt(" workers=%d %s", workers, same ? "identical" : "DIFFERENT");
  }
  return {pass, detail};
}

Verdict performance_envelope() {
  const EstimateConfig config{10'000, 10, 0};
  std::vector<double> per_hop;
  std::string detail;
  double t20 = 0.0;
  for (int k : {14, 17, 20}) {
    // Best of three damps scheduler noise on shared machines.
    EdtEstimate e;
    double best = INFINITY;
    for (int rep = 0; rep < 3; ++rep) {
      e = estimate_edt({std::int64_t{1} << k, 2.0, 1, 1}, config);
      best = std::min(best, e.wall_time_seconds);
    }
    per_hop.push_back(best / static_cast<double>(e.total_hops) * 1e9);
    if (k == 20) t20 = best;
    detail += fmt("n=2^%d %.1f ns/hop (e_2=%.1f); ", k, per_hop.back(), e.mean_hops);
  }
  const double ratio = *std::max_element(per_hop.begin(), per_hop.end()) /
                       *std::min_element(per_hop.begin(), per_hop.end());
  // O(log n) allows 20/14 ~ 1.43 between the ends; 2.0 leaves room for cache effects.
  return {t20 < 600.0 && ratio <= 2.0,
          detail + fmt("e_2(2^20) in %.2f s (limit 600 s), per-hop max/min %.2f (limit 2.0)", t20, ratio)};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Verdict()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "sampler oracle equivalence", sampler_oracle_equivalence},
      {2, "acceptance lower bound", acceptance_lower_bound},
      {3, "acceptance rate during routing", acceptance_during_routing},
      {4, "pure-lattice regime", pure_lattice_regime},
      {5, "robustness sweep at n=20000", robustness_sweep_n20000},
      {6, "delivery exponents", delivery_exponents},
      {7, "robustness at n=2^11", robustness_n2048},
      {8, "six degrees scenarios", six_degrees},
      {9, "determinism across workers", determinism_across_workers},
      {10, "performance envelope", performance_envelope},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  C%-2d %s: %s [%.1f s]\n", v.pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str(), seconds);
    std::fflush(stdout);
    failures += !v.pass;
  }
  std::printf("%d failed\n", failures);
  return failures == 0 ? 0 : 1;
}
