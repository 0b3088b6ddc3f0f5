#include "smallworld/cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "smallworld/experiments.hpp"
#include "smallworld/router.hpp"
#include "smallworld/sampler.hpp"
#include "smallworld/table.hpp"

namespace smallworld {

namespace {

constexpr std::int64_t kMaxInt = std::numeric_limits<std::int64_t>::max();

struct CommonOptions {
  std::int64_t p = 1;
  std::int64_t q = 1;
  std::int64_t runs = 10'000;
  std::uint64_t seed = 0;
  int workers = 0;
  std::string out;
  CLI::Option* seed_option = nullptr;
  CLI::Option* p_option = nullptr;
  CLI::Option* q_option = nullptr;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  o.p_option = cmd->add_option("--p", o.p, "Local link radius")->check(CLI::Range(std::int64_t{1}, kMaxInt));
  o.q_option = cmd->add_option("--q", o.q, "Shortcuts per node")->check(CLI::Range(std::int64_t{1}, kMaxInt));
  cmd->add_option("--runs", o.runs, "Routing runs per estimate")->check(CLI::Range(std::int64_t{1}, kMaxInt));
  o.seed_option = cmd->add_option("--seed", o.seed, "Master seed (default: clock-derived, echoed)");
  cmd->add_option("--workers", o.workers, "Worker threads (default: all)")->check(CLI::Range(1, 4096));
  cmd->add_option("--out", o.out, "Write the table to FILE instead of standard output");
}

std::uint64_t clock_seed() {
  const auto ticks = std::chrono::system_clock::now().time_since_epoch().count();
  return derive_seed(static_cast<std::uint64_t>(ticks), 0);
}

EstimateConfig make_config(CommonOptions& o) {
  if (o.seed_option->count() == 0) o.seed = clock_seed();
  EstimateConfig config;
  config.runs = o.runs;
  config.seed = o.seed;
  config.workers = o.workers;
  return config;
}

void echo_common(OutputTable& table, const std::string& command, const CommonOptions& o,
                 bool with_pq = true) {
  table.add_metadata("command", command);
  if (with_pq) {
    table.add_metadata("p", std::to_string(o.p));
    table.add_metadata("q", std::to_string(o.q));
  }
  table.add_metadata("runs", std::to_string(o.runs));
  table.add_metadata("seed", std::to_string(o.seed));
  table.add_metadata("workers", std::to_string(o.workers > 0 ? o.workers : omp_get_max_threads()));
}

void require_local_fits(std::int64_t p, std::int64_t n) {
  if (p >= n) throw CLI::ValidationError("--p", "must be smaller than --n (" + std::to_string(n) + ")");
}

void write(const OutputTable& table, const CommonOptions& o, std::ostream& out) {
  if (o.out.empty())
    emit_tsv(table, out);
  else
    emit_tsv(table, o.out);
}

// Numeric columns of a sweep row; failed rows get NaN and an error note.
void note_failures(OutputTable& table, const std::vector<SweepRow>& rows, std::ostream& err) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].ok()) continue;
    table.add_metadata("error.row" + std::to_string(i), rows[i].error);
    err << "warning: row " << i << " failed: " << rows[i].error << '\n';
  }
}

double or_nan(const SweepRow& row, double v) {
  return row.ok() ? v : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Greedy routing simulator for augmented n x n grids", "smallworld"};
  app.require_subcommand(1);
  std::function<void()> action;

  // edt
  auto* edt = app.add_subcommand("edt", "Estimate the expected delivery time e_r(n)");
  CommonOptions edt_o;
  std::int64_t edt_n = 0;
  double edt_r = 0.0;
  edt->add_option("--n", edt_n, "Grid side length")->required()->check(CLI::Range(std::int64_t{2}, kMaxInt));
  edt->add_option("--r", edt_r, "Shortcut exponent")->required()->check(CLI::NonNegativeNumber);
  add_common(edt, edt_o);
  edt->callback([&] {
    require_local_fits(edt_o.p, edt_n);
    action = [&] {
      const EstimateConfig config = make_config(edt_o);
      const EdtEstimate e = estimate_edt({edt_n, edt_r, edt_o.p, edt_o.q}, config);
      OutputTable table({"n", "r", "p", "q", "runs", "delivery", "stderr", "accept_rate", "time"});
      echo_common(table, "edt", edt_o);
      table.add_metadata("n", std::to_string(edt_n));
      table.add_metadata("r", format_real(edt_r));
      table.add_row({edt_n, edt_r, edt_o.p, edt_o.q, e.runs, e.mean_hops, e.std_error,
                     e.acceptance_rate, e.wall_time_seconds});
      write(table, edt_o, out);
    };
  });

  // sweep-r
  auto* sweep_r = app.add_subcommand("sweep-r", "Sweep e_r(n) over a range of exponents");
  CommonOptions sr_o;
  std::int64_t sr_n = 0;
  double sr_from = 0.0, sr_to = 3.0, sr_step = 0.1;
  sweep_r->add_option("--n", sr_n, "Grid side length")->required()->check(CLI::Range(std::int64_t{2}, kMaxInt));
  sweep_r->add_option("--r-from", sr_from, "First exponent")->check(CLI::NonNegativeNumber);
  sweep_r->add_option("--r-to", sr_to, "Last exponent")->check(CLI::NonNegativeNumber);
  sweep_r->add_option("--r-step", sr_step, "Exponent step")->check(CLI::PositiveNumber);
  add_common(sweep_r, sr_o);
  sweep_r->callback([&] {
    require_local_fits(sr_o.p, sr_n);
    if (sr_to < sr_from) throw CLI::ValidationError("--r-to", "must not be below --r-from");
    action = [&] {
      const EstimateConfig config = make_config(sr_o);
      const auto r_values = value_grid(sr_from, sr_to, sr_step);
      const auto rows = sweep_over_r(sr_n, r_values, sr_o.p, sr_o.q, config);
      OutputTable table({"r", "delivery", "stderr", "accept_rate", "overhead"});
      echo_common(table, "sweep-r", sr_o);
      table.add_metadata("n", std::to_string(sr_n));
      table.add_metadata("r_range", format_real(sr_from) + ":" + format_real(sr_step) + ":" +
                                        format_real(sr_to));
      note_failures(table, rows, err);
      for (const auto& row : rows) {
        const auto& e = row.estimate;
        table.add_row({row.x, or_nan(row, e.mean_hops), or_nan(row, e.std_error),
                       or_nan(row, e.acceptance_rate), or_nan(row, 1.0 / e.acceptance_rate)});
      }
      write(table, sr_o, out);
    };
  });

  // sweep-n
  auto* sweep_n = app.add_subcommand("sweep-n", "Sweep e_r(n) over grid sizes");
  CommonOptions sn_o;
  double sn_r = 0.0;
  std::vector<std::int64_t> sn_list;
  sweep_n->add_option("--r", sn_r, "Shortcut exponent")->required()->check(CLI::NonNegativeNumber);
  sweep_n->add_option("--n-list", sn_list, "Comma-separated side lengths")
      ->required()
      ->delimiter(',')
      ->check(CLI::Range(std::int64_t{2}, kMaxInt));
  add_common(sweep_n, sn_o);
  sweep_n->callback([&] {
    action = [&] {
      const EstimateConfig config = make_config(sn_o);
      const auto rows = sweep_over_n(sn_r, sn_list, sn_o.p, sn_o.q, config);
      OutputTable table({"n", "time", "delivery", "stderr", "accept_rate"});
      echo_common(table, "sweep-n", sn_o);
      table.add_metadata("r", format_real(sn_r));
      note_failures(table, rows, err);
      for (const auto& row : rows) {
        const auto& e = row.estimate;
        table.add_row({static_cast<std::int64_t>(row.x), or_nan(row, e.wall_time_seconds),
                       or_nan(row, e.mean_hops), or_nan(row, e.std_error),
                       or_nan(row, e.acceptance_rate)});
      }
      write(table, sn_o, out);
    };
  });

  // ropt
  auto* ropt = app.add_subcommand("ropt", "Golden-section search for the exponent minimizing e_r(n)");
  CommonOptions ro_o;
  ro_o.runs = 100'000;
  std::int64_t ro_n = 0;
  double ro_from = 0.5, ro_to = 2.5, ro_tol = 0.02;
  ropt->add_option("--n", ro_n, "Grid side length")->required()->check(CLI::Range(std::int64_t{2}, kMaxInt));
  ropt->add_option("--r-from", ro_from, "Search interval start")->check(CLI::NonNegativeNumber);
  ropt->add_option("--r-to", ro_to, "Search interval end")->check(CLI::NonNegativeNumber);
  ropt->add_option("--tol", ro_tol, "Bracket width at which to stop")->check(CLI::PositiveNumber);
  add_common(ropt, ro_o);
  ropt->callback([&] {
    require_local_fits(ro_o.p, ro_n);
    if (!(ro_from < ro_to)) throw CLI::ValidationError("--r-to", "must exceed --r-from");
    action = [&] {
      const EstimateConfig config = make_config(ro_o);
      const auto start = std::chrono::steady_clock::now();
      const double r_opt = find_r_opt({ro_n, 2.0, ro_o.p, ro_o.q}, ro_from, ro_to, {ro_tol, 200}, config);
      const double seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      OutputTable table({"n", "r_opt", "time"});
      echo_common(table, "ropt", ro_o);
      table.add_metadata("interval", format_real(ro_from) + ":" + format_real(ro_to));
      table.add_metadata("tol", format_real(ro_tol));
      table.add_row({ro_n, r_opt, seconds});
      write(table, ro_o, out);
    };
  });

  // thresholds
  auto* thresholds = app.add_subcommand("thresholds", "r_opt and the range of r within e_2(n) and 2 e_2(n)");
  CommonOptions th_o;
  std::int64_t th_n = 0;
  ThresholdOptions th;
  thresholds->add_option("--n", th_n, "Grid side length")->required()->check(CLI::Range(std::int64_t{2}, kMaxInt));
  thresholds->add_option("--tol", th.tol, "Bisection tolerance")->check(CLI::PositiveNumber);
  thresholds->add_option("--r-from", th.r_lo, "Lower end of the r range")->check(CLI::NonNegativeNumber);
  thresholds->add_option("--r-to", th.r_hi, "Upper end of the r range")->check(CLI::NonNegativeNumber);
  add_common(thresholds, th_o);
  thresholds->callback([&] {
    require_local_fits(th_o.p, th_n);
    if (!(th.r_lo < 2.0)) throw CLI::ValidationError("--r-from", "must be below 2");
    if (!(th.r_hi > 2.0)) throw CLI::ValidationError("--r-to", "must be above 2");
    action = [&] {
      const EstimateConfig config = make_config(th_o);
      const ThresholdResult t = compute_thresholds({th_n, 2.0, th_o.p, th_o.q}, th, config);
      OutputTable table({"n", "e2", "r_opt", "r_min_e2", "r_min_2e2", "r_max_2e2"});
      echo_common(table, "thresholds", th_o);
      table.add_metadata("tol", format_real(th.tol));
      table.add_metadata("r_range", format_real(th.r_lo) + ":" + format_real(th.r_hi));
      if (t.r_min_e2_clamped) table.add_metadata("r_min_e2", "clamped to --r-from");
      if (t.r_min_2e2_clamped) table.add_metadata("r_min_2e2", "clamped to --r-from");
      if (t.r_max_2e2_clamped) table.add_metadata("r_max_2e2", "clamped to --r-to");
      table.add_row({th_n, t.e2_reference, t.r_opt, t.r_min_e2, t.r_min_2e2, t.r_max_2e2});
      write(table, th_o, out);
    };
  });

  // exponent
  auto* exponent = app.add_subcommand("exponent", "Delivery exponent from e_r at powers of two");
  CommonOptions ex_o;
  double ex_r = 0.0;
  std::vector<std::int64_t> ex_list{32768, 1048576};
  exponent->add_option("--r", ex_r, "Shortcut exponent")->required()->check(CLI::NonNegativeNumber);
  exponent->add_option("--n-list", ex_list, "Two or three increasing powers of two")
      ->delimiter(',')
      ->check(CLI::Range(std::int64_t{2}, kMaxInt));
  add_common(exponent, ex_o);
  exponent->callback([&] {
    if (ex_list.size() != 2 && ex_list.size() != 3)
      throw CLI::ValidationError("--n-list", "expects two or three values");
    action = [&] {
      const EstimateConfig config = make_config(ex_o);
      const double conjecture = conjectured_exponent(ex_r);
      if (ex_list.size() == 2) {
        const double alpha = estimate_exponent(ex_r, ex_list[0], ex_list[1], config, ex_o.p, ex_o.q);
        OutputTable table({"r", "n_low", "n_high", "alpha", "conjectured"});
        echo_common(table, "exponent", ex_o);
        table.add_row({ex_r, ex_list[0], ex_list[1], alpha, conjecture});
        write(table, ex_o, out);
      } else {
        const ExponentEstimate e =
            estimate_exponents(ex_r, ex_list[0], ex_list[1], ex_list[2], config, ex_o.p, ex_o.q);
        OutputTable table({"r", "n_low", "n_mid", "n_high", "alpha_low", "alpha_high", "conjectured"});
        echo_common(table, "exponent", ex_o);
        table.add_row({ex_r, ex_list[0], ex_list[1], ex_list[2], e.alpha_low_scale,
                       e.alpha_high_scale, conjecture});
        write(table, ex_o, out);
      }
    };
  });

  // sixdeg
  auto* sixdeg = app.add_subcommand("sixdeg", "Delivery time for neighborhoods of about 600 contacts");
  CommonOptions sd_o;
  std::int64_t sd_n = 8'500;
  double sd_from = 0.0, sd_to = 3.0, sd_step = 0.1;
  sixdeg->add_option("--n", sd_n, "Grid side length")->check(CLI::Range(std::int64_t{2}, kMaxInt));
  sixdeg->add_option("--r-from", sd_from, "First exponent")->check(CLI::NonNegativeNumber);
  sixdeg->add_option("--r-to", sd_to, "Last exponent")->check(CLI::NonNegativeNumber);
  sixdeg->add_option("--r-step", sd_step, "Exponent step")->check(CLI::PositiveNumber);
  add_common(sixdeg, sd_o);
  sixdeg->callback([&] {
    if (sd_to < sd_from) throw CLI::ValidationError("--r-to", "must not be below --r-from");
    if ((sd_o.p_option->count() == 0) != (sd_o.q_option->count() == 0))
      throw CLI::ValidationError("--p", "--p and --q must be given together to override the scenarios");
    action = [&] {
      const EstimateConfig config = make_config(sd_o);
      std::vector<Scenario> scenarios = six_degrees_default_scenarios();
      if (sd_o.p_option->count() > 0) scenarios = {{sd_o.p, sd_o.q}};
      for (const auto& s : scenarios) require_local_fits(s.p, sd_n);
      const auto r_values = value_grid(sd_from, sd_to, sd_step);
      const auto sweeps = six_degrees_scenarios(config, r_values, scenarios, sd_n);
      OutputTable table({"p", "q", "r", "delivery", "stderr", "accept_rate"});
      echo_common(table, "sixdeg", sd_o, false);
      table.add_metadata("n", std::to_string(sd_n));
      for (const auto& sweep : sweeps) {
        note_failures(table, sweep.rows, err);
        for (const auto& row : sweep.rows)
          table.add_row({sweep.scenario.p, sweep.scenario.q, row.x, or_nan(row, row.estimate.mean_hops),
                         or_nan(row, row.estimate.std_error), or_nan(row, row.estimate.acceptance_rate)});
      }
      write(table, sd_o, out);
    };
  });

  // validate-sampler
  auto* validate = app.add_subcommand("validate-sampler", "Compare the shortcut sampler with exact enumeration");
  std::int64_t va_n = 8;
  double va_r = 2.0;
  std::int64_t va_samples = 0;
  double va_threshold = 0.005;
  std::uint64_t va_seed = 0;
  std::string va_out;
  validate->add_option("--n", va_n, "Grid side length")->check(CLI::Range(std::int64_t{2}, std::int64_t{64}));
  validate->add_option("--r", va_r, "Shortcut exponent")->check(CLI::NonNegativeNumber);
  validate->add_option("--samples", va_samples,
                       "Shortcuts per position (default: enough for sampling noise below half the threshold, at least 1e6)")
      ->check(CLI::Range(std::int64_t{1}, kMaxInt));
  validate->add_option("--threshold", va_threshold, "Maximum total-variation distance")->check(CLI::PositiveNumber);
  auto* va_seed_opt = validate->add_option("--seed", va_seed, "Seed (default: clock-derived, echoed)");
  validate->add_option("--out", va_out, "Write the table to FILE instead of standard output");
  int validate_status = 0;
  validate->callback([&] {
    action = [&] {
      if (va_seed_opt->count() == 0) va_seed = clock_seed();
      OutputTable table({"n", "r", "ux", "uy", "samples", "tv", "accept_rate", "expected_accept", "pass"});
      table.add_metadata("command", "validate-sampler");
      table.add_metadata("seed", std::to_string(va_seed));
      table.add_metadata("threshold", format_real(va_threshold));
      const std::vector<Coord> origins{{0, 0}, {va_n / 2, 0}, {va_n / 2, va_n / 2}};
      for (std::size_t i = 0; i < origins.size(); ++i) {
        const Coord u = origins[i];
        const std::int64_t samples =
            va_samples > 0 ? va_samples
                           : noise_calibrated_samples(oracle_shortcut_distribution(u, va_n, va_r), va_threshold);
        const SamplerCheck c = check_sampler(u, va_n, va_r, samples, derive_seed(va_seed, i));
        const bool pass = c.tv < va_threshold && c.acceptance_rate > 0.125;
        if (!pass) validate_status = 1;
        table.add_row({va_n, va_r, u.x, u.y, c.samples, c.tv, c.acceptance_rate,
                       c.expected_acceptance, std::int64_t{pass ? 1 : 0}});
      }
      if (va_out.empty())
        emit_tsv(table, out);
      else
        emit_tsv(table, va_out);
    };
  });

  std::vector<const char*> argv{"smallworld"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    action();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return validate_status;
}

}  // namespace smallworld
