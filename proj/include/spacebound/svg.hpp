#pragma once

#include <string>
#include <vector>

#include "spacebound/time_order.hpp"
#include "spacebound/transforms.hpp"

namespace spacebound {

/// Static plot: one row per time index, boxes to scale, one colour per
/// component. 3D spaces are drawn as x-t and y-t projections side by side.
/// Only boxes are drawn as <rect>; axes are lines and the legend uses circles.
std::string render_svg(const std::vector<TimedSpace>& spaces, const TimeOrder& order);

}  // namespace spacebound
