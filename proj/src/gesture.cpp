#include "photogest/gesture.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "photogest/errors.hpp"

namespace photogest {

namespace {

constexpr std::array<std::pair<GestureKind, std::string_view>, 5> kNames{{
    {GestureKind::Up, "Up"},
    {GestureKind::Down, "Down"},
    {GestureKind::UpDown, "UpDown"},
    {GestureKind::DownUp, "DownUp"},
    {GestureKind::LeftRight, "LeftRight"},
}};

}  // namespace

std::string_view to_string(GestureKind kind) noexcept {
  for (const auto& [k, name] : kNames)
    if (k == kind) return name;
  return "?";
}

std::optional<GestureKind> parse_gesture_kind(std::string_view name) noexcept {
  for (const auto& [k, n] : kNames)
    if (n == name) return k;
  return std::nullopt;
}

const std::vector<GestureKind>& all_gesture_kinds() {
  static const std::vector<GestureKind> kinds{GestureKind::Up, GestureKind::Down,
                                              GestureKind::UpDown, GestureKind::DownUp,
                                              GestureKind::LeftRight};
  return kinds;
}

double HandPose::half_width() const { return hand_radius_cm * std::cos(hand_angle_rad); }

void HandPose::validate() const {
  if (!(height_cm > 0.0)) throw ValidationError("hand height must be positive");
  if (!(hand_radius_cm > 0.0)) throw ValidationError("hand radius must be positive");
  if (!(hand_angle_rad >= 0.0 && hand_angle_rad < std::numbers::pi / 2))
    throw ValidationError("hand angle must lie in [0, pi/2)");
  if (!std::isfinite(lateral_offset_cm)) throw ValidationError("lateral offset must be finite");
  if (!(half_width() > 0.0)) throw ValidationError("projected hand width must be positive");
}

double GestureSpec::duration() const {
  switch (kind) {
    case GestureKind::Up:
    case GestureKind::Down:
      return displacement_cm / speed_cm_s;
    default:
      return 2.0 * displacement_cm / speed_cm_s;
  }
}

void GestureSpec::validate() const {
  if (!(proximity_cm > 0.0)) throw ValidationError("proximity must be positive");
  if (!(displacement_cm > 0.0)) throw ValidationError("displacement must be positive");
  if (!(speed_cm_s > 0.0) || !std::isfinite(speed_cm_s))
    throw ValidationError("speed must be positive and finite");
  if (!(hand_radius_cm > 0.0)) throw ValidationError("hand radius must be positive");
  if (!(hand_angle_rad >= 0.0 && hand_angle_rad < std::numbers::pi / 2))
    throw ValidationError("hand angle must lie in [0, pi/2)");
  if (!(duration() > 0.0)) throw ValidationError("gesture duration must be positive");
}

HandPose pose_at(const GestureSpec& g, double t) {
  g.validate();
  const double T = g.duration();
  if (!(t >= 0.0 && t <= T)) throw RangeError("time outside gesture duration");

  HandPose pose;
  pose.hand_radius_cm = g.hand_radius_cm;
  pose.hand_angle_rad = g.hand_angle_rad;
  const double P = g.proximity_cm, D = g.displacement_cm, v = g.speed_cm_s;
  const double half = T / 2.0;

  switch (g.kind) {
    case GestureKind::Up:
      pose.height_cm = P + v * t;
      break;
    case GestureKind::Down:
      pose.height_cm = P + D - v * t;
      break;
    case GestureKind::UpDown:
      pose.height_cm = t <= half ? P + v * t : P + D - v * (t - half);
      break;
    case GestureKind::DownUp:
      pose.height_cm = t <= half ? P + D - v * t : P + v * (t - half);
      break;
    case GestureKind::LeftRight: {
      pose.height_cm = P;
      // 2D of travel per half, so the lateral speed is 2D / (T/2)
      const double rate = 2.0 * D / half;
      pose.lateral_offset_cm = t <= half ? D - rate * t : -D + rate * (t - half);
      break;
    }
  }
  return pose;
}

ThresholdAngles threshold_angles(const HandPose& pose, const SolarCellSpec& cell) {
  pose.validate();
  cell.validate();
  if (pose.lateral_offset_cm != 0.0)
    throw ValidationError("closed-form threshold angles need a centred hand (x = 0)");
  const double w = pose.half_width();
  if (!(w > cell.radius_cm))
    throw UnsupportedConfiguration("projected hand half-width must exceed the cell radius");
  const double th = std::atan((w - cell.radius_cm) / pose.height_cm);
  return {th, th};
}

double photocurrent_at(const HandPose& pose, const SolarCellSpec& cell, double jsc) {
  if (!(jsc >= 0.0)) throw ValidationError("current density must be non-negative");
  const auto [th1, th2] = threshold_angles(pose, cell);
  return cell.area() * jsc * ((1.0 - std::sin(th1)) + (1.0 - std::sin(th2)));
}

double photocurrent_raytrace(const HandPose& pose, const SolarCellSpec& cell, double jsc,
                             int angular_steps) {
  if (angular_steps < 64) throw ValidationError("raytrace needs at least 64 angular steps");
  if (!(jsc >= 0.0)) throw ValidationError("current density must be non-negative");
  pose.validate();
  cell.validate();

  const double rs = cell.radius_cm;
  const double w = pose.half_width();
  const double d = pose.height_cm;
  const double x = pose.lateral_offset_cm;
  const double dtheta = std::numbers::pi / angular_steps;

  double lit = 0.0, open = 0.0;
  for (int k = 0; k < angular_steps; ++k) {
    const double theta = -std::numbers::pi / 2 + (k + 0.5) * dtheta;
    const double shift = d * std::tan(theta);
    // cell points u with u + shift in [x - w, x + w]
    const double lo = std::max(-rs, x - w - shift);
    const double hi = std::min(rs, x + w - shift);
    const double blocked = std::max(0.0, hi - lo);
    const double c = std::cos(theta);
    lit += (2.0 * rs - blocked) * c;
    open += 2.0 * rs * c;
  }
  return baseline_photocurrent(cell, jsc) * (lit / open);
}

}  // namespace photogest
