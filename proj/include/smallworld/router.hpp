#ifndef SMALLWORLD_ROUTER_HPP
#define SMALLWORLD_ROUTER_HPP

#include <cstdint>
#include <span>

#include "smallworld/lattice.hpp"
#include "smallworld/sampler.hpp"

namespace smallworld {

struct EstimateConfig {
  std::int64_t runs = 10'000;
  std::uint64_t seed = 0;
  /// Worker threads for the run loop; 0 uses the OpenMP default.
  int workers = 0;
};

/// Monte Carlo estimate of the expected delivery time e_r(n).
struct EdtEstimate {
  double mean_hops = 0.0;
  double std_error = 0.0;
  std::int64_t runs = 0;
  double acceptance_rate = 1.0;
  double wall_time_seconds = 0.0;
  std::uint64_t total_hops = 0;
  std::uint64_t proposed = 0;
  std::uint64_t accepted = 0;
};

struct ShortcutChoice {
  Coord node;
  std::int64_t distance = 0;
};

/// Earliest candidate with the smallest distance to `target`. Requires at
/// least one candidate.
ShortcutChoice best_shortcut(std::span<const Coord> candidates, Coord target);

/// Greedy routing of one message. Each visited node draws q fresh shortcuts;
/// the best one is taken only if it is strictly closer than the best local
/// neighbor (distance d - p), otherwise a local hop is made. Returns the hop count.
std::int64_t route_once(const GridParams& params, Coord source, Coord target,
                        ShortcutStream& stream);

/// Averages route_once over config.runs runs in parallel. Run i draws its
/// source, target and shortcuts from the stream keyed by (seed, i), and the
/// reduction is ordered by run index, so the result does not depend on the
/// worker count.
EdtEstimate estimate_edt(const GridParams& params, const EstimateConfig& config);

/// Single-threaded reference for estimate_edt. Same runs, same streams, same
/// result bit for bit.
EdtEstimate estimate_edt_serial(const GridParams& params, const EstimateConfig& config);

}  // namespace smallworld

#endif
