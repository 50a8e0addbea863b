#pragma once

// Hand kinematics and occlusion geometry in the vertical cross-section plane
// through the cell centre. The hand is a segment of half-width
// R_H * cos(hand_angle) held parallel to the cell at height d.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "photogest/photovoltaic.hpp"

namespace photogest {

enum class GestureKind { Up, Down, UpDown, DownUp, LeftRight };

std::string_view to_string(GestureKind kind) noexcept;
std::optional<GestureKind> parse_gesture_kind(std::string_view name) noexcept;
const std::vector<GestureKind>& all_gesture_kinds();

struct HandPose {
  double height_cm = 3.0;
  double lateral_offset_cm = 0.0;
  double hand_angle_rad = 0.0;
  double hand_radius_cm = 6.0;

  /// Projected half-width of the hand in the cross-section.
  double half_width() const;
  void validate() const;
};

struct GestureSpec {
  GestureKind kind = GestureKind::Up;
  double proximity_cm = 3.0;
  double displacement_cm = 12.0;
  double speed_cm_s = 20.0;
  double hand_radius_cm = 6.0;
  double hand_angle_rad = 0.0;

  /// Up/Down: D/v.  UpDown, DownUp and LeftRight: 2D/v.
  double duration() const;
  void validate() const;
};

/// Piecewise-linear hand state at time t in [0, duration].
///
/// LeftRight keeps the hand at height P and sweeps the lateral offset
/// +D -> -D -> +D over the gesture duration.
HandPose pose_at(const GestureSpec& gesture, double t);

struct ThresholdAngles {
  double first;
  double second;
};

/// arctan((R_H cos(alpha) - R_S) / d) on both sides of a centred hand.
ThresholdAngles threshold_angles(const HandPose& pose, const SolarCellSpec& cell);

/// Closed form of the two-wedge occluded cos-law integral:
/// S * jsc * ((1 - sin th1) + (1 - sin th2)).
double photocurrent_at(const HandPose& pose, const SolarCellSpec& cell, double jsc);

/// Parallel-ray occlusion integral for arbitrary lateral offset.
///
/// Rays arrive at signed angle theta in (-pi/2, pi/2); a cell point u is shadowed
/// when u + d tan(theta) falls inside the hand. The unshadowed cell length is
/// cos-weighted and integrated with a midpoint rule, then normalised so the
/// unoccluded value equals baseline_photocurrent exactly.
double photocurrent_raytrace(const HandPose& pose, const SolarCellSpec& cell, double jsc,
                             int angular_steps = 2048);

}  // namespace photogest
