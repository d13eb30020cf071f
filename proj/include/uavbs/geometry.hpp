// Copyright 2026 The uavbs Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <compare>

namespace uavbs {

/// Ground-plane point in meters.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

/// Aerial base-station position; `h` is the altitude above ground in meters.
struct UavPosition {
  double x = 0.0;
  double y = 0.0;
  double h = 0.0;

  friend bool operator==(const UavPosition&, const UavPosition&) = default;
  friend auto operator<=>(const UavPosition&, const UavPosition&) = default;
};

/// Rectangular service area anchored at the origin.
struct AreaSpec {
  double width = 1000.0;
  double height = 1000.0;

  bool contains(Vec2 p) const {
    return p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= height;
  }
  double area_km2() const { return width * height / 1e6; }
};

inline double distance(const UavPosition& a, const UavPosition& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dh = a.h - b.h;
  return std::sqrt(dx * dx + dy * dy + dh * dh);
}

}  // namespace uavbs
