#pragma once

#include <cstdint>

#include "gsrm/map_io.hpp"

namespace gsrm {

/// Procedural stand-ins for the evaluation maps. All are 300x300 and deterministic.

/// Open square without obstacles.
OccupancyGrid make_plain_map();

/// Four rooms joined by 26 px corridors; the lower pair is joined by a curved one.
OccupancyGrid make_rooms_map();

/// Cave-like map: thresholded smooth noise opened with a 12 px disk so no
/// passage is narrower than 24 px; only the largest free component is kept.
OccupancyGrid make_den_map(std::uint64_t seed = 7);

/// Apartment floor plan with thin walls, doors, furniture and unknown space
/// outside the building, in the style of a SLAM occupancy map.
OccupancyGrid make_slam_map(std::uint64_t seed = 11);

}  // namespace gsrm
