#include "smallworld/experiments.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

namespace smallworld {

namespace {

double edt_at(const GridParams& base, double r, const EstimateConfig& config) {
  GridParams params = base;
  params.r = r;
  return estimate_edt(params, config).mean_hops;
}

void check_bracket(double r_lo, double r_hi, const SearchLimits& limits) {
  if (!(r_lo < r_hi)) throw std::invalid_argument("search interval must satisfy r_lo < r_hi");
  if (!(limits.tol > 0.0)) throw std::invalid_argument("search tolerance must be positive");
}

bool is_power_of_two(std::int64_t v) { return v > 0 && std::has_single_bit(static_cast<std::uint64_t>(v)); }

}  // namespace

std::vector<double> value_grid(double from, double to, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("grid step must be positive");
  if (to < from) throw std::invalid_argument("grid end must not precede its start");
  const auto count = static_cast<std::int64_t>(std::floor((to - from) / step + 1e-9)) + 1;
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) values.push_back(from + static_cast<double>(i) * step);
  return values;
}

std::vector<SweepRow> sweep_over_r(std::int64_t n, std::span<const double> r_values,
                                   std::int64_t p, std::int64_t q, const EstimateConfig& config) {
  std::vector<SweepRow> rows;
  rows.reserve(r_values.size());
  for (std::size_t i = 0; i < r_values.size(); ++i) {
    SweepRow row;
    row.x = r_values[i];
    EstimateConfig point = config;
    point.seed = derive_seed(config.seed, i);
    try {
      row.estimate = estimate_edt({n, r_values[i], p, q}, point);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<SweepRow> sweep_over_n(double r, std::span<const std::int64_t> n_values,
                                   std::int64_t p, std::int64_t q, const EstimateConfig& config) {
  std::vector<SweepRow> rows;
  rows.reserve(n_values.size());
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    SweepRow row;
    row.x = static_cast<double>(n_values[i]);
    EstimateConfig point = config;
    point.seed = derive_seed(config.seed, i);
    try {
      row.estimate = estimate_edt({n_values[i], r, p, q}, point);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

double golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                               SearchLimits limits) {
  check_bracket(lo, hi, limits);
  const double inv_phi = 1.0 / std::numbers::phi;
  double a = lo;
  double b = hi;
  double c = b - (b - a) * inv_phi;
  double d = a + (b - a) * inv_phi;
  std::optional<double> fc;
  std::optional<double> fd;
  for (int it = 0; it < limits.max_iterations; ++it) {
    if (b - a <= limits.tol * (1.0 + 1e-9)) return 0.5 * (a + b);
    if (!fc) fc = f(c);
    if (!fd) fd = f(d);
    if (*fc <= *fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) * inv_phi;
      fc.reset();
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) * inv_phi;
      fd.reset();
    }
  }
  throw SearchError("golden-section search did not narrow below tol within " +
                    std::to_string(limits.max_iterations) + " iterations");
}

double bisect_crossing(const std::function<bool(double)>& predicate, bool rising, double lo,
                       double hi, SearchLimits limits) {
  check_bracket(lo, hi, limits);
  if (predicate(lo) == rising || predicate(hi) != rising)
    throw SearchError("predicate does not change value on [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  for (int it = 0; it < limits.max_iterations; ++it) {
    if (hi - lo <= limits.tol * (1.0 + 1e-9)) return 0.5 * (lo + hi);
    const double mid = 0.5 * (lo + hi);
    if (predicate(mid) == rising)
      hi = mid;
    else
      lo = mid;
  }
  throw SearchError("bisection did not narrow below tol within " +
                    std::to_string(limits.max_iterations) + " iterations");
}

double find_r_opt(const GridParams& base, double r_lo, double r_hi, SearchLimits limits,
                  const EstimateConfig& config) {
  return golden_section_minimize([&](double r) { return edt_at(base, r, config); }, r_lo, r_hi,
                                 limits);
}

double find_threshold(const GridParams& base, double budget, Side side, double r_lo, double r_hi,
                      SearchLimits limits, const EstimateConfig& config) {
  if (!(budget > 0.0)) throw std::invalid_argument("budget must be positive");
  return bisect_crossing([&](double r) { return edt_at(base, r, config) <= budget; },
                         side == Side::left, r_lo, r_hi, limits);
}

ThresholdResult compute_thresholds(const GridParams& base, const ThresholdOptions& options,
                                   const EstimateConfig& config) {
  ThresholdResult result;
  result.n = base.n;
  result.e2_reference = edt_at(base, 2.0, config);
  result.r_opt = find_r_opt(base, options.opt_lo, options.opt_hi, {options.opt_tol, 200}, config);

  const SearchLimits limits{options.tol, 200};
  const double e2 = result.e2_reference;
  const double twice = 2.0 * e2;

  // e_2 <= budget holds at r = 2 for both budgets, so only the outer end can
  // fail to bracket; a bound that already holds there is reported as that end.
  const auto left_bound = [&](double budget, bool& clamped) {
    if (edt_at(base, options.r_lo, config) <= budget) {
      clamped = true;
      return options.r_lo;
    }
    return find_threshold(base, budget, Side::left, options.r_lo, 2.0, limits, config);
  };
  result.r_min_e2 = left_bound(e2, result.r_min_e2_clamped);
  result.r_min_2e2 = left_bound(twice, result.r_min_2e2_clamped);
  if (edt_at(base, options.r_hi, config) <= twice) {
    result.r_max_2e2_clamped = true;
    result.r_max_2e2 = options.r_hi;
  } else {
    result.r_max_2e2 =
        find_threshold(base, twice, Side::right, 2.0, options.r_hi, limits, config);
  }
  return result;
}

double log_slope(double e_low, double e_high, std::int64_t n_low, std::int64_t n_high) {
  return (std::log2(e_high) - std::log2(e_low)) /
         std::log2(static_cast<double>(n_high) / static_cast<double>(n_low));
}

double estimate_exponent(double r, std::int64_t n_low, std::int64_t n_high,
                         const EstimateConfig& config, std::int64_t p, std::int64_t q) {
  if (!is_power_of_two(n_low) || !is_power_of_two(n_high))
    throw std::invalid_argument("exponent endpoints must be powers of two");
  if (!(n_low < n_high)) throw std::invalid_argument("exponent endpoints must satisfy n_low < n_high");
  const double low = estimate_edt({n_low, r, p, q}, config).mean_hops;
  const double high = estimate_edt({n_high, r, p, q}, config).mean_hops;
  return log_slope(low, high, n_low, n_high);
}

ExponentEstimate estimate_exponents(double r, std::int64_t n_low, std::int64_t n_mid,
                                    std::int64_t n_high, const EstimateConfig& config,
                                    std::int64_t p, std::int64_t q) {
  for (std::int64_t v : {n_low, n_mid, n_high})
    if (!is_power_of_two(v)) throw std::invalid_argument("exponent endpoints must be powers of two");
  if (!(n_low < n_mid && n_mid < n_high))
    throw std::invalid_argument("exponent endpoints must be increasing");
  ExponentEstimate out;
  out.r = r;
  out.n_points = {n_low, n_mid, n_high};
  for (std::int64_t n : out.n_points) out.delivery.push_back(estimate_edt({n, r, p, q}, config).mean_hops);
  out.alpha_low_scale = log_slope(out.delivery[0], out.delivery[1], n_low, n_mid);
  out.alpha_high_scale = log_slope(out.delivery[1], out.delivery[2], n_mid, n_high);
  return out;
}

double conjectured_exponent(double r) {
  if (!(r >= 0.0)) throw std::invalid_argument("conjectured_exponent: r must be >= 0");
  if (r < 2.0) return (2.0 - r) / (3.0 - r);
  if (r < 3.0) return r - 2.0;
  return 1.0;
}

std::vector<Scenario> six_degrees_default_scenarios() { return {{1, 600}, {10, 380}, {15, 120}}; }

std::vector<ScenarioSweep> six_degrees_scenarios(const EstimateConfig& config,
                                                 std::span<const double> r_values,
                                                 std::span<const Scenario> scenarios,
                                                 std::int64_t n) {
  std::vector<ScenarioSweep> out;
  out.reserve(scenarios.size());
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    EstimateConfig scenario_config = config;
    scenario_config.seed = derive_seed(config.seed, 1000 + i);
    out.push_back({scenarios[i], sweep_over_r(n, r_values, scenarios[i].p, scenarios[i].q,
                                              scenario_config)});
  }
  return out;
}

}  // namespace smallworld
