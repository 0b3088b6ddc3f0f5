#ifndef SMALLWORLD_LATTICE_HPP
#define SMALLWORLD_LATTICE_HPP

#include <cstdint>
#include <cstdlib>

namespace smallworld {

/// Parameters of one augmented-grid family: an n x n lattice, local links to
/// every node within Manhattan distance p, and q shortcuts per node drawn with
/// probability proportional to d^-r.
struct GridParams {
  std::int64_t n = 2;
  double r = 2.0;
  std::int64_t p = 1;
  std::int64_t q = 1;

  /// Throws std::invalid_argument naming the first offending field.
  void validate() const;
};

struct Coord {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend constexpr bool operator==(const Coord&, const Coord&) = default;
  friend constexpr auto operator<=>(const Coord&, const Coord&) = default;
};

/// Displacement of a shortcut endpoint relative to its origin.
struct Offset {
  std::int64_t dx = 0;
  std::int64_t dy = 0;

  friend constexpr bool operator==(const Offset&, const Offset&) = default;
  friend constexpr auto operator<=>(const Offset&, const Offset&) = default;
};

constexpr Coord operator+(Coord c, Offset o) { return {c.x + o.dx, c.y + o.dy}; }

constexpr std::int64_t manhattan(Coord a, Coord b) {
  const std::int64_t dx = a.x > b.x ? a.x - b.x : b.x - a.x;
  const std::int64_t dy = a.y > b.y ? a.y - b.y : b.y - a.y;
  return dx + dy;
}

constexpr bool in_grid(Coord c, std::int64_t n) {
  return c.x >= 0 && c.x < n && c.y >= 0 && c.y < n;
}

/// Largest Manhattan distance between two nodes of an n x n grid.
constexpr std::int64_t diameter(std::int64_t n) { return 2 * (n - 1); }

/// One local hop from `current` toward `target` using links of radius p.
/// The x gap is consumed before the y gap. When the target is within p it is
/// returned directly. Requires current != target.
constexpr Coord local_step(Coord current, Coord target, std::int64_t p) {
  if (manhattan(current, target) <= p) return target;
  const std::int64_t gap_x = target.x - current.x;
  const std::int64_t gap_y = target.y - current.y;
  const std::int64_t abs_x = gap_x < 0 ? -gap_x : gap_x;
  const std::int64_t step_x = p < abs_x ? p : abs_x;
  const std::int64_t step_y = p - step_x;  // < |gap_y| since the distance exceeds p
  return {current.x + step_x * ((gap_x > 0) - (gap_x < 0)),
          current.y + step_y * ((gap_y > 0) - (gap_y < 0))};
}

/// Number of contacts of a node away from the border: 2p(p+1) locals plus q shortcuts.
constexpr std::int64_t neighborhood_size(std::int64_t p, std::int64_t q) {
  return 2 * p * (p + 1) + q;
}

}  // namespace smallworld

#endif
