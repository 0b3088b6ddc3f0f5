#include "smallworld/lattice.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace smallworld {

void GridParams::validate() const {
  if (n < 2) throw std::invalid_argument("n must be at least 2, got " + std::to_string(n));
  if (!(r >= 0.0) || !std::isfinite(r))
    throw std::invalid_argument("r must be a finite value >= 0");
  if (p < 1) throw std::invalid_argument("p must be at least 1, got " + std::to_string(p));
  if (p >= n) throw std::invalid_argument("p must be smaller than n");
  if (q < 1) throw std::invalid_argument("q must be at least 1, got " + std::to_string(q));
}

}  // namespace smallworld
