#include "council/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace council {

std::vector<NodeSpec> random_placement(std::size_t count, double side, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coord(0.0, side);
  std::vector<NodeSpec> nodes;
  nodes.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    double x = coord(rng);
    double y = coord(rng);
    nodes.push_back({static_cast<NodeId>(i + 1), {x, y}});
  }
  return nodes;
}

Topology random_connected_unit_disk(std::size_t count, double radius, std::mt19937_64& rng,
                                    double density) {
  const double side = std::max(radius, density * radius * std::sqrt(static_cast<double>(count)));
  for (;;) {
    auto nodes = random_placement(count, side, rng);
    Topology t = Topology::from_positions(nodes, radius);
    if (is_connected(t)) return t;
  }
}

std::vector<Point> random_walk(Point start, std::size_t steps, double leg, double side,
                               std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<Point> out;
  out.reserve(steps);
  Point at = start;
  for (std::size_t i = 0; i < steps; ++i) {
    double a = angle(rng);
    at.x = std::clamp(at.x + leg * std::cos(a), 0.0, side);
    at.y = std::clamp(at.y + leg * std::sin(a), 0.0, side);
    out.push_back(at);
  }
  return out;
}

}  // namespace council
