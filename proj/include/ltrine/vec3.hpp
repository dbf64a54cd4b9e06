// Copyright 2026 The ltrine Authors
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

#include <algorithm>
#include <array>
#include <cmath>

namespace ltrine {

/// Real amplitude vector in three dimensions.
struct RealVec3 {
    double x{};
    double y{};
    double z{};

    [[nodiscard]] double norm() const { return std::sqrt(x * x + y * y + z * z); }

    friend constexpr RealVec3 operator+(const RealVec3 &a, const RealVec3 &b) {
        return {a.x + b.x, a.y + b.y, a.z + b.z};
    }
    friend constexpr RealVec3 operator-(const RealVec3 &a, const RealVec3 &b) {
        return {a.x - b.x, a.y - b.y, a.z - b.z};
    }
    friend constexpr RealVec3 operator*(double s, const RealVec3 &v) {
        return {s * v.x, s * v.y, s * v.z};
    }
    friend constexpr bool operator==(const RealVec3 &, const RealVec3 &) = default;
};

[[nodiscard]] constexpr double dot(const RealVec3 &a, const RealVec3 &b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

[[nodiscard]] inline double max_abs_diff(const RealVec3 &a, const RealVec3 &b) {
    return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

/// Rotation of v about the z axis.
[[nodiscard]] inline RealVec3 rotate_z(const RealVec3 &v, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c * v.x - s * v.y, s * v.x + c * v.y, v.z};
}

using Matrix3 = std::array<std::array<double, 3>, 3>;

[[nodiscard]] constexpr Matrix3 identity3() {
    return {{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}};
}

[[nodiscard]] constexpr std::array<double, 3> components(const RealVec3 &v) {
    return {v.x, v.y, v.z};
}

/// Accumulates weight * v v^T into m.
constexpr void add_outer(Matrix3 &m, double weight, const RealVec3 &v) {
    const auto c = components(v);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] += weight * c[i] * c[j];
}

[[nodiscard]] inline double max_abs_diff(const Matrix3 &a, const Matrix3 &b) {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) worst = std::max(worst, std::abs(a[i][j] - b[i][j]));
    return worst;
}

} // namespace ltrine
