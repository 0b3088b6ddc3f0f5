#ifndef SMALLWORLD_SAMPLER_HPP
#define SMALLWORLD_SAMPLER_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "smallworld/lattice.hpp"

namespace smallworld {

/// Generator behind every shortcut stream. Changing it changes every
/// seeded result, so it is fixed for the build.
using Engine = std::mt19937_64;

/// Mixes a master seed with a key (run index, sweep index, ...) into an
/// independent 64-bit seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t key);

/// Cumulative radius law over the virtual ball of radius 2(n-1) around a node.
///
/// Radius i carries weight 4i * i^-r = 4 * i^(1-r) (4i lattice points at L1
/// distance i, each with weight i^-r); the common factor 4 is dropped. A guide
/// table over the cumulative sums narrows each lookup to a bucket, which is
/// then binary-searched, so a lookup is O(1) expected and O(log n) worst case.
class RadiusWeights {
 public:
  RadiusWeights(std::int64_t n, double r);

  std::int64_t n() const { return n_; }
  double r() const { return r_; }
  /// Number of radii, 2(n-1).
  std::size_t size() const { return cumulative_.size(); }
  double total() const { return cumulative_.back(); }
  /// cumulative()[i - 1] = sum of k^(1-r) for k in 1..i.
  std::span<const double> cumulative() const { return cumulative_; }
  /// Probability of radius i in 1..2(n-1).
  double probability(std::int64_t radius) const;

  /// Smallest radius i with cumulative()[i - 1] > mass, for mass in [0, total()).
  std::int64_t radius_at(double mass) const;

 private:
  std::size_t bucket_of(double mass) const;

  std::int64_t n_;
  double r_;
  std::vector<double> cumulative_;
  std::vector<std::uint32_t> guide_;
  double guide_scale_ = 0.0;
};

/// Offset of the angle-th point on the L1 circle of the given radius, for
/// angle in [-2*radius, 2*radius - 1]. Over that range this is a bijection
/// onto the 4*radius points at distance `radius`. Throws on a bad angle.
Offset offset_from_angle(std::int64_t radius, std::int64_t angle);

/// Default radius buffer capacity for an n x n grid: n clamped to [64, 2^20].
std::size_t default_bulk_size(std::int64_t n);

/// Stateful shortcut source for one worker or one run.
///
/// Radii are drawn into a buffer in chunks. The first chunk holds 64 radii and
/// each refill doubles the chunk up to bulk_size, so short-lived streams do
/// not pay for a full bulk of n draws.
class ShortcutStream {
 public:
  ShortcutStream(const RadiusWeights& weights, std::uint64_t seed, std::uint64_t key,
                 std::size_t bulk_size = 0);

  /// Radius in 1..2(n-1) with probability proportional to i^(1-r).
  std::int64_t draw_radius();

  /// A node of G other than `origin`, with probability proportional to
  /// manhattan(origin, v)^-r. Candidates from the virtual ball that fall
  /// outside the grid are rejected and redrawn.
  Coord draw_shortcut(Coord origin);

  /// Uniform node of the grid, drawn from the same engine.
  Coord uniform_node();

  std::uint64_t proposed() const { return proposed_; }
  std::uint64_t accepted() const { return accepted_; }
  std::size_t bulk_size() const { return bulk_size_; }
  /// accepted / proposed; throws std::logic_error before the first draw.
  double acceptance_rate() const;

  const RadiusWeights& weights() const { return *weights_; }

 private:
  void refill();

  const RadiusWeights* weights_;
  Engine engine_;
  std::vector<std::int64_t> radii_;
  std::size_t next_ = 0;
  std::size_t chunk_ = 64;
  std::size_t bulk_size_;
  std::uint64_t proposed_ = 0;
  std::uint64_t accepted_ = 0;
};

/// Dense row-major (index y * n + x) distribution of a shortcut from `origin`
/// computed by enumerating every node: P(v) = d(origin, v)^-r / sum over w != origin.
/// Meant for small grids.
std::vector<double> oracle_shortcut_distribution(Coord origin, std::int64_t n, double r);

/// Probability that a candidate drawn from the virtual ball lands in the grid,
/// by enumeration of the grid and the closed form 4 * sum i^(1-r) for the ball.
double exact_acceptance_probability(Coord origin, std::int64_t n, double r);

double total_variation(std::span<const double> a, std::span<const double> b);

/// Sample count at which the expected total-variation distance of an empirical
/// histogram from `probabilities`, caused by sampling noise alone, is at most
/// threshold / 2. Never below `floor`.
std::int64_t noise_calibrated_samples(std::span<const double> probabilities, double threshold,
                                      std::int64_t floor = 1'000'000);

struct SamplerCheck {
  Coord origin;
  std::int64_t n = 0;
  double r = 0.0;
  std::int64_t samples = 0;
  double tv = 0.0;
  double acceptance_rate = 0.0;
  double expected_acceptance = 0.0;
  /// Binomial standard error of acceptance_rate around expected_acceptance.
  double acceptance_std_error = 0.0;
};

/// Draws `samples` shortcuts from `origin` and compares their histogram with
/// the enumeration oracle.
SamplerCheck check_sampler(Coord origin, std::int64_t n, double r, std::int64_t samples,
                           std::uint64_t seed);

}  // namespace smallworld

#endif
