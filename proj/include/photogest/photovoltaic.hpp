#pragma once

// Short-circuit photocurrent of a small solar cell: spectral integration of
// the standard current density, linear intensity scaling and the cos-law
// angular model used as the no-hand baseline.

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace photogest {

/// CODATA 2018 exact values (SI).
struct PhysicalConstants {
  static constexpr double elementary_charge = 1.602176634e-19;  // C
  static constexpr double planck = 6.62607015e-34;              // J s
  static constexpr double speed_of_light = 299792458.0;         // m/s
};

/// Tabulated spectrum: absorption a(lambda) in [0,1] or irradiance in mW cm^-2 nm^-1.
class SpectralCurve {
 public:
  enum class Kind { Absorption, Irradiance };

  struct Sample {
    double wavelength_nm;
    double value;
  };

  SpectralCurve(std::vector<Sample> samples, Kind kind);

  const std::vector<Sample>& samples() const noexcept { return samples_; }
  Kind kind() const noexcept { return kind_; }
  double min_wavelength() const { return samples_.front().wavelength_nm; }
  double max_wavelength() const { return samples_.back().wavelength_nm; }

  /// Piecewise-linear value at `wavelength_nm`; zero outside the table.
  double at(double wavelength_nm) const;

  /// Multiplies every value by `factor` (absorption stays clamped-validated).
  SpectralCurve scaled(double factor) const;

 private:
  std::vector<Sample> samples_;
  Kind kind_;
};

/// Reads a `wavelength_nm,value` CSV with a header row.
SpectralCurve read_spectral_curve(const std::filesystem::path& path, SpectralCurve::Kind kind);

struct SolarCellSpec {
  std::string label = "T";
  double radius_cm = 2.0;
  double area_cm2 = 0.0;  ///< 0 means pi * radius^2
  double standard_current_density = 7.0;  ///< mA/cm^2 under AM1.5g

  double area() const;
  void validate() const;

  static SolarCellSpec circular(std::string label, double radius_cm, double jsc_std);
};

struct LightEnvironment {
  static constexpr double reference_irradiance = 100.0;  ///< mW/cm^2, AM1.5g

  double illuminance_lux = 5000.0;
  double lux_per_mw_cm2 = 1200.0;

  double irradiance() const { return illuminance_lux / lux_per_mw_cm2; }
  void validate() const;
};

/// (q / (h c0)) * integral a(l) I(l) l dl over the wavelength overlap, in mA/cm^2.
double standard_current_density(const SpectralCurve& absorption, const SpectralCurve& irradiance);

/// Linear scaling of the standard density to the environment's irradiance.
double scale_current_density(double jsc_std, const LightEnvironment& env);

/// No-hand photocurrent in mA: two cos-law wedges, 2 * S * jsc.
double baseline_photocurrent(const SolarCellSpec& cell, double jsc);

}  // namespace photogest
