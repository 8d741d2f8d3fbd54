/*
Copyright 2026 The Clarity Bench Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef CLARITY_COMMON_GEOMETRY_H_
#define CLARITY_COMMON_GEOMETRY_H_

#include <array>
#include <cmath>

namespace clarity {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double Dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double Norm() const { return std::sqrt(Dot(*this)); }
  bool operator==(const Vec3&) const = default;
};

// Direction of arrival. Azimuth is counter-clockwise from +x seen from above
// (+y is to the left of a listener facing +x); elevation is up from the
// horizontal plane. Radians.
struct Direction {
  double azimuth = 0.0;
  double elevation = 0.0;

  Vec3 UnitVector() const {
    const double ce = std::cos(elevation);
    return {ce * std::cos(azimuth), ce * std::sin(azimuth),
            std::sin(elevation)};
  }

  static Direction FromVector(const Vec3& v) {
    const double r = v.Norm();
    return {std::atan2(v.y, v.x), std::asin(v.z / r)};
  }

  bool operator==(const Direction&) const = default;
};

}  // namespace clarity

#endif  // CLARITY_COMMON_GEOMETRY_H_
