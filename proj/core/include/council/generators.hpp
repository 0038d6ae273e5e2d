#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "council/graph.hpp"

namespace council {

/// `count` nodes (NIDs 1..count) placed uniformly in [0, side]^2.
std::vector<NodeSpec> random_placement(std::size_t count, double side, std::mt19937_64& rng);

/// Rejection-samples placements until the unit-disk graph is connected.
/// The side length is chosen so a random placement is connected reasonably
/// often; `density` scales it (larger = sparser).
Topology random_connected_unit_disk(std::size_t count, double radius, std::mt19937_64& rng,
                                    double density = 0.9);

/// Random-walk waypoint list: `steps` legs of length `leg` from `start`,
/// clamped to [0, side]^2.
std::vector<Point> random_walk(Point start, std::size_t steps, double leg, double side,
                               std::mt19937_64& rng);

}  // namespace council
