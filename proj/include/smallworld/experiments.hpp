#ifndef SMALLWORLD_EXPERIMENTS_HPP
#define SMALLWORLD_EXPERIMENTS_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "smallworld/router.hpp"

namespace smallworld {

/// One point of a sweep. `x` is the swept value (r or n). A row whose
/// estimate failed keeps the message in `error` and a default estimate.
struct SweepRow {
  double x = 0.0;
  EdtEstimate estimate;
  std::string error;

  bool ok() const { return error.empty(); }
};

/// Evenly spaced values from..to (inclusive, up to rounding) with the given step.
std::vector<double> value_grid(double from, double to, double step);

/// Row i is estimated with seed derive_seed(config.seed, i).
std::vector<SweepRow> sweep_over_r(std::int64_t n, std::span<const double> r_values,
                                   std::int64_t p, std::int64_t q, const EstimateConfig& config);

std::vector<SweepRow> sweep_over_n(double r, std::span<const std::int64_t> n_values,
                                   std::int64_t p, std::int64_t q, const EstimateConfig& config);

/// Raised by the searches below when they cannot produce an answer.
class SearchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SearchLimits {
  double tol = 0.02;
  int max_iterations = 200;
};

/// Golden-section search for the minimum of a function assumed unimodal on
/// [lo, hi]. Returns the bracket midpoint once the width is at most tol.
double golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                               SearchLimits limits);

/// Bisection for the point where `predicate` changes value on [lo, hi].
/// `rising` selects false-to-true (true) or true-to-false (false) as x grows.
double bisect_crossing(const std::function<bool(double)>& predicate, bool rising, double lo,
                       double hi, SearchLimits limits);

/// Golden-section minimization of r -> e_r(n) over [r_lo, r_hi]. Every
/// evaluation reuses config.seed, so the search runs over one fixed random
/// realization. Returns the bracket midpoint once its width drops below tol.
/// `base` supplies n, p and q; its r is ignored.
double find_r_opt(const GridParams& base, double r_lo, double r_hi, SearchLimits limits,
                  const EstimateConfig& config);

enum class Side {
  left,   ///< e_r(n) <= budget becomes true as r increases
  right,  ///< e_r(n) <= budget becomes false as r increases
};

/// Bisection for the r where e_r(n) crosses `budget`, with common random
/// numbers across evaluations. Throws SearchError when the interval ends do
/// not bracket a crossing.
double find_threshold(const GridParams& base, double budget, Side side, double r_lo, double r_hi,
                      SearchLimits limits, const EstimateConfig& config);

struct ThresholdResult {
  std::int64_t n = 0;
  double e2_reference = 0.0;
  double r_opt = 0.0;
  double r_min_e2 = 0.0;
  double r_min_2e2 = 0.0;
  double r_max_2e2 = 0.0;
  /// Set when e_r(n) <= 2 e_2(n) already holds at the end of the search range,
  /// in which case the reported bound is that end.
  bool r_min_2e2_clamped = false;
  bool r_max_2e2_clamped = false;
  bool r_min_e2_clamped = false;
};

struct ThresholdOptions {
  double r_lo = 0.0;
  double r_hi = 3.0;
  double opt_lo = 0.5;
  double opt_hi = 2.5;
  double opt_tol = 0.02;
  double tol = 0.01;
};

/// r_opt, r_min(e_2), r_min(2 e_2) and r_max(2 e_2) for one grid size, all
/// evaluated with config.seed.
ThresholdResult compute_thresholds(const GridParams& base, const ThresholdOptions& options,
                                   const EstimateConfig& config);

/// (log2 e_high - log2 e_low) / log2(n_high / n_low).
double log_slope(double e_low, double e_high, std::int64_t n_low, std::int64_t n_high);

/// Slope of log2 e_r(n) against log2 n between two powers of two.
double estimate_exponent(double r, std::int64_t n_low, std::int64_t n_high,
                         const EstimateConfig& config, std::int64_t p = 1, std::int64_t q = 1);

/// Slopes measured at two consecutive scales [n_low, n_mid] and [n_mid, n_high].
struct ExponentEstimate {
  double r = 0.0;
  double alpha_low_scale = 0.0;
  double alpha_high_scale = 0.0;
  std::vector<std::int64_t> n_points;
  std::vector<double> delivery;
};

ExponentEstimate estimate_exponents(double r, std::int64_t n_low, std::int64_t n_mid,
                                    std::int64_t n_high, const EstimateConfig& config,
                                    std::int64_t p = 1, std::int64_t q = 1);

/// Conjectured delivery exponent: (2-r)/(3-r) below 2, r-2 on [2, 3), 1 beyond.
double conjectured_exponent(double r);

struct Scenario {
  std::int64_t p = 1;
  std::int64_t q = 1;
};

struct ScenarioSweep {
  Scenario scenario;
  std::vector<SweepRow> rows;
};

/// Neighborhoods of about 600 contacts split between locals and shortcuts.
std::vector<Scenario> six_degrees_default_scenarios();

/// One sweep_over_r per scenario at side length n (8,500 by default).
std::vector<ScenarioSweep> six_degrees_scenarios(const EstimateConfig& config,
                                                 std::span<const double> r_values,
                                                 std::span<const Scenario> scenarios,
                                                 std::int64_t n = 8'500);

}  // namespace smallworld

#endif
