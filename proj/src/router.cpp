#include "smallworld/router.hpp"

#include <omp.h>

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace smallworld {

namespace {

struct RunOutcome {
  std::int64_t hops = 0;
  std::uint64_t proposed = 0;
  std::uint64_t accepted = 0;
};

void check_inputs(const GridParams& params, const EstimateConfig& config) {
  params.validate();
  if (config.runs < 1) throw std::invalid_argument("runs must be at least 1");
  if (config.workers < 0) throw std::invalid_argument("workers must be non-negative");
}

RunOutcome simulate_run(const GridParams& params, const RadiusWeights& weights,
                        std::uint64_t seed, std::int64_t run) {
  ShortcutStream stream(weights, seed, static_cast<std::uint64_t>(run));
  const Coord source = stream.uniform_node();
  const Coord target = stream.uniform_node();
  const std::int64_t hops = route_once(params, source, target, stream);
  return {hops, stream.proposed(), stream.accepted()};
}

// Folds run outcomes in index order.
class Accumulator {
 public:
  void add(const RunOutcome& run) {
    ++count_;
    const auto hops = static_cast<double>(run.hops);
    const double delta = hops - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (hops - mean_);
    total_hops_ += static_cast<std::uint64_t>(run.hops);
    proposed_ += run.proposed;
    accepted_ += run.accepted;
  }

  EdtEstimate finish(double seconds) const {
    EdtEstimate e;
    e.runs = count_;
    e.mean_hops = static_cast<double>(total_hops_) / static_cast<double>(count_);
    e.std_error = count_ > 1 ? std::sqrt(m2_ / static_cast<double>(count_ - 1) /
                                         static_cast<double>(count_))
                             : 0.0;
    e.total_hops = total_hops_;
    e.proposed = proposed_;
    e.accepted = accepted_;
    e.acceptance_rate =
        proposed_ > 0 ? static_cast<double>(accepted_) / static_cast<double>(proposed_) : 1.0;
    e.wall_time_seconds = seconds;
    return e;
  }

 private:
  std::int64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  std::uint64_t total_hops_ = 0;
  std::uint64_t proposed_ = 0;
  std::uint64_t accepted_ = 0;
};

inline ShortcutChoice first_closest(std::span<const Coord> candidates, Coord target) {
  ShortcutChoice best{candidates.front(), manhattan(candidates.front(), target)};
  for (const Coord& c : candidates.subspan(1)) {
    const std::int64_t d = manhattan(c, target);
    if (d < best.distance) best = {c, d};
  }
  return best;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

ShortcutChoice best_shortcut(std::span<const Coord> candidates, Coord target) {
  if (candidates.empty()) throw std::invalid_argument("best_shortcut: no candidates");
  return first_closest(candidates, target);
}

std::int64_t route_once(const GridParams& params, Coord source, Coord target,
                        ShortcutStream& stream) {
  std::vector<Coord> candidates(static_cast<std::size_t>(params.q));
  Coord current = source;
  std::int64_t distance = manhattan(current, target);
  std::int64_t hops = 0;
  while (distance > 0) {
    for (auto& c : candidates) c = stream.draw_shortcut(current);
    const ShortcutChoice best = first_closest(candidates, target);
    if (best.distance < distance - params.p) {
      current = best.node;
      distance = best.distance;
    } else {
      current = local_step(current, target, params.p);
      distance = manhattan(current, target);
    }
    ++hops;
  }
  return hops;
}

EdtEstimate estimate_edt(const GridParams& params, const EstimateConfig& config) {
  check_inputs(params, config);
  const auto start = std::chrono::steady_clock::now();
  const RadiusWeights weights(params.n, params.r);

  std::vector<RunOutcome> outcomes(static_cast<std::size_t>(config.runs));
  const int workers = config.workers > 0 ? config.workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 16) num_threads(workers)
  for (std::int64_t run = 0; run < config.runs; ++run)
    outcomes[static_cast<std::size_t>(run)] = simulate_run(params, weights, config.seed, run);

  Accumulator acc;
  for (const auto& outcome : outcomes) acc.add(outcome);
  return acc.finish(seconds_since(start));
}

EdtEstimate estimate_edt_serial(const GridParams& params, const EstimateConfig& config) {
  check_inputs(params, config);
  const auto start = std::chrono::steady_clock::now();
  const RadiusWeights weights(params.n, params.r);
  Accumulator acc;
  for (std::int64_t run = 0; run < config.runs; ++run)
    acc.add(simulate_run(params, weights, config.seed, run));
  return acc.finish(seconds_since(start));
}

}  // namespace smallworld
