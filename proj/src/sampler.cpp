#include "smallworld/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace smallworld {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Uniform in [0, 1) with 53 random bits.
double uniform01(Engine& engine) { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }

// Unbiased integer in [0, bound) by multiply-and-reject (Lemire).
std::int64_t uniform_below(Engine& engine, std::int64_t bound) {
  const auto range = static_cast<std::uint64_t>(bound);
  auto product = static_cast<unsigned __int128>(engine()) * range;
  if (static_cast<std::uint64_t>(product) < range) {
    const std::uint64_t floor = -range % range;
    while (static_cast<std::uint64_t>(product) < floor)
      product = static_cast<unsigned __int128>(engine()) * range;
  }
  return static_cast<std::int64_t>(product >> 64);
}

constexpr std::size_t kGuideSpan = 8;

constexpr std::int64_t sign(std::int64_t v) { return (v > 0) - (v < 0); }

// offset_from_angle without the range check.
constexpr Offset circle_point(std::int64_t radius, std::int64_t angle) {
  const std::int64_t a = angle < 0 ? -angle : angle;
  const std::int64_t rest = radius - a;
  return {rest, sign(angle) * (radius - (rest < 0 ? -rest : rest))};
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t key) {
  return splitmix64(splitmix64(seed) ^ (key * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL));
}

RadiusWeights::RadiusWeights(std::int64_t n, double r) : n_(n), r_(r) {
  if (n < 2) throw std::invalid_argument("RadiusWeights: n must be at least 2");
  if (!(r >= 0.0) || !std::isfinite(r))
    throw std::invalid_argument("RadiusWeights: r must be a finite value >= 0");

  const auto m = static_cast<std::size_t>(diameter(n));
  cumulative_.resize(m);
  double sum = 0.0;
  for (std::size_t i = 1; i <= m; ++i) {
    sum += std::exp((1.0 - r) * std::log(static_cast<double>(i)));
    cumulative_[i - 1] = sum;
  }

  // guide_[j] is the first index whose cumulative sum falls in bucket j or
  // later, using the same bucket function as radius_at. A mass in bucket j
  // then resolves to an index in [guide_[j], guide_[j + 1]].
  // One bucket per kGuideSpan entries keeps the guide small enough to stay
  // cached at large n.
  const std::size_t buckets = std::max<std::size_t>(1, m / kGuideSpan);
  guide_.resize(buckets);
  guide_scale_ = static_cast<double>(buckets) / sum;
  std::size_t idx = 0;
  for (std::size_t j = 0; j < buckets; ++j) {
    while (idx + 1 < m && bucket_of(cumulative_[idx]) < j) ++idx;
    guide_[j] = static_cast<std::uint32_t>(idx);
  }
}

std::size_t RadiusWeights::bucket_of(double mass) const {
  return std::min(guide_.size() - 1, static_cast<std::size_t>(mass * guide_scale_));
}

double RadiusWeights::probability(std::int64_t radius) const {
  if (radius < 1 || radius > static_cast<std::int64_t>(size())) return 0.0;
  return std::exp((1.0 - r_) * std::log(static_cast<double>(radius))) / total();
}

std::int64_t RadiusWeights::radius_at(double mass) const {
  const std::size_t m = cumulative_.size();
  const std::size_t bucket = bucket_of(mass);
  const std::size_t lo = guide_[bucket];
  if (cumulative_[lo] > mass) return static_cast<std::int64_t>(lo) + 1;
  const std::size_t hi = bucket + 1 < guide_.size() ? guide_[bucket + 1] : m - 1;
  const auto first = cumulative_.begin();
  auto idx = static_cast<std::size_t>(std::upper_bound(first + lo + 1, first + hi + 1, mass) - first);
  // Only reachable when mass rounds up to total().
  if (idx == m) idx = m - 1;
  return static_cast<std::int64_t>(idx) + 1;
}

Offset offset_from_angle(std::int64_t radius, std::int64_t angle) {
  if (radius < 1) throw std::invalid_argument("offset_from_angle: radius must be positive");
  if (angle < -2 * radius || angle >= 2 * radius)
    throw std::invalid_argument("offset_from_angle: angle " + std::to_string(angle) +
                                " outside [-2r, 2r) for r = " + std::to_string(radius));
  return circle_point(radius, angle);
}

std::size_t default_bulk_size(std::int64_t n) {
  return static_cast<std::size_t>(std::clamp<std::int64_t>(n, 64, std::int64_t{1} << 20));
}

ShortcutStream::ShortcutStream(const RadiusWeights& weights, std::uint64_t seed,
                               std::uint64_t key, std::size_t bulk_size)
    : weights_(&weights),
      engine_(derive_seed(seed, key)),
      bulk_size_(bulk_size == 0 ? default_bulk_size(weights.n()) : bulk_size) {
  chunk_ = std::min<std::size_t>(64, bulk_size_);
}

void ShortcutStream::refill() {
  radii_.resize(chunk_);
  const double total = weights_->total();
  for (auto& radius : radii_) radius = weights_->radius_at(uniform01(engine_) * total);
  next_ = 0;
  chunk_ = std::min(chunk_ * 2, bulk_size_);
}

std::int64_t ShortcutStream::draw_radius() {
  if (next_ == radii_.size()) refill();
  return radii_[next_++];
}

Coord ShortcutStream::draw_shortcut(Coord origin) {
  const std::int64_t n = weights_->n();
  for (;;) {
    const std::int64_t radius = draw_radius();
    const std::int64_t angle = uniform_below(engine_, 4 * radius) - 2 * radius;
    const Coord candidate = origin + circle_point(radius, angle);
    ++proposed_;
    if (in_grid(candidate, n)) {
      ++accepted_;
      return candidate;
    }
  }
}

Coord ShortcutStream::uniform_node() {
  const std::int64_t n = weights_->n();
  const std::int64_t x = uniform_below(engine_, n);
  return {x, uniform_below(engine_, n)};
}

double ShortcutStream::acceptance_rate() const {
  if (proposed_ == 0) throw std::logic_error("acceptance_rate: no shortcut has been drawn");
  return static_cast<double>(accepted_) / static_cast<double>(proposed_);
}

std::vector<double> oracle_shortcut_distribution(Coord origin, std::int64_t n, double r) {
  if (n < 2) throw std::invalid_argument("oracle_shortcut_distribution: n must be at least 2");
  if (!in_grid(origin, n)) throw std::invalid_argument("oracle_shortcut_distribution: origin off grid");
  std::vector<double> probabilities(static_cast<std::size_t>(n * n), 0.0);
  double norm = 0.0;
  for (std::int64_t y = 0; y < n; ++y) {
    for (std::int64_t x = 0; x < n; ++x) {
      const std::int64_t d = manhattan(origin, {x, y});
      if (d == 0) continue;
      const double w = std::pow(static_cast<double>(d), -r);
      probabilities[static_cast<std::size_t>(y * n + x)] = w;
      norm += w;
    }
  }
  for (auto& p : probabilities) p /= norm;
  return probabilities;
}

double exact_acceptance_probability(Coord origin, std::int64_t n, double r) {
  double in_grid_mass = 0.0;
  for (std::int64_t y = 0; y < n; ++y)
    for (std::int64_t x = 0; x < n; ++x)
      if (const std::int64_t d = manhattan(origin, {x, y}); d > 0)
        in_grid_mass += std::pow(static_cast<double>(d), -r);
  double ball_mass = 0.0;
  for (std::int64_t i = 1; i <= diameter(n); ++i)
    ball_mass += 4.0 * static_cast<double>(i) * std::pow(static_cast<double>(i), -r);
  return in_grid_mass / ball_mass;
}

double total_variation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("total_variation: size mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return 0.5 * sum;
}

std::int64_t noise_calibrated_samples(std::span<const double> probabilities, double threshold,
                                      std::int64_t floor) {
  // E|p_hat - p| ~ sqrt(2 p (1 - p) / (pi N)) per cell.
  double spread = 0.0;
  for (double p : probabilities) spread += std::sqrt(p * (1.0 - p));
  const double needed = 2.0 * spread * spread / (std::numbers::pi * threshold * threshold);
  return std::max(floor, static_cast<std::int64_t>(std::ceil(needed)));
}

SamplerCheck check_sampler(Coord origin, std::int64_t n, double r, std::int64_t samples,
                           std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("check_sampler: samples must be positive");
  const RadiusWeights weights(n, r);
  ShortcutStream stream(weights, seed, 0);
  std::vector<double> histogram(static_cast<std::size_t>(n * n), 0.0);
  for (std::int64_t s = 0; s < samples; ++s) {
    const Coord v = stream.draw_shortcut(origin);
    histogram[static_cast<std::size_t>(v.y * n + v.x)] += 1.0;
  }
  for (auto& h : histogram) h /= static_cast<double>(samples);

  SamplerCheck check;
  check.origin = origin;
  check.n = n;
  check.r = r;
  check.samples = samples;
  check.tv = total_variation(histogram, oracle_shortcut_distribution(origin, n, r));
  check.acceptance_rate = stream.acceptance_rate();
  check.expected_acceptance = exact_acceptance_probability(origin, n, r);
  check.acceptance_std_error =
      std::sqrt(check.expected_acceptance * (1.0 - check.expected_acceptance) /
                static_cast<double>(stream.proposed()));
  return check;
}

}  // namespace smallworld
