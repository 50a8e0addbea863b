#include "photogest/photovoltaic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "photogest/errors.hpp"

namespace photogest {

SpectralCurve::SpectralCurve(std::vector<Sample> samples, Kind kind)
    : samples_(std::move(samples)), kind_(kind) {
  if (samples_.size() < 2) throw ValidationError("spectral curve needs at least 2 samples");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const auto& s = samples_[i];
    if (!std::isfinite(s.wavelength_nm) || !std::isfinite(s.value))
      throw ValidationError("spectral curve contains non-finite values");
    if (i > 0 && !(s.wavelength_nm > samples_[i - 1].wavelength_nm))
      throw ValidationError("spectral curve wavelengths must be strictly increasing");
    if (kind_ == Kind::Absorption && (s.value < 0.0 || s.value > 1.0))
      throw ValidationError("absorption values must lie in [0, 1]");
    if (kind_ == Kind::Irradiance && s.value < 0.0)
      throw ValidationError("irradiance values must be non-negative");
  }
}

double SpectralCurve::at(double wavelength_nm) const {
  if (wavelength_nm < min_wavelength() || wavelength_nm > max_wavelength()) return 0.0;
  auto hi = std::lower_bound(samples_.begin(), samples_.end(), wavelength_nm,
                             [](const Sample& s, double w) { return s.wavelength_nm < w; });
  if (hi == samples_.begin()) return hi->value;
  auto lo = hi - 1;
  const double f = (wavelength_nm - lo->wavelength_nm) / (hi->wavelength_nm - lo->wavelength_nm);
  return lo->value + f * (hi->value - lo->value);
}

SpectralCurve SpectralCurve::scaled(double factor) const {
  auto out = samples_;
  for (auto& s : out) s.value *= factor;
  return SpectralCurve(std::move(out), kind_);
}

SpectralCurve read_spectral_curve(const std::filesystem::path& path, SpectralCurve::Kind kind) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open spectral curve " + path.string());
  std::string line;
  std::vector<SpectralCurve::Sample> samples;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 || line.empty()) continue;
    std::istringstream row(line);
    std::string w, v;
    if (!std::getline(row, w, ',') || !std::getline(row, v))
      throw IoError(path.string() + ":" + std::to_string(line_no) + ": expected 2 columns");
    try {
      samples.push_back({std::stod(w), std::stod(v)});
    } catch (const std::exception&) {
      throw IoError(path.string() + ":" + std::to_string(line_no) + ": not a number");
    }
  }
  return SpectralCurve(std::move(samples), kind);
}

double SolarCellSpec::area() const {
  return area_cm2 > 0.0 ? area_cm2 : std::numbers::pi * radius_cm * radius_cm;
}

void SolarCellSpec::validate() const {
  if (!(radius_cm > 0.0)) throw ValidationError("cell radius must be positive");
  if (area_cm2 < 0.0) throw ValidationError("cell area must be positive");
  if (!(standard_current_density > 0.0))
    throw ValidationError("standard current density must be positive");
}

SolarCellSpec SolarCellSpec::circular(std::string label, double radius_cm, double jsc_std) {
  SolarCellSpec cell{std::move(label), radius_cm, 0.0, jsc_std};
  cell.validate();
  return cell;
}

void LightEnvironment::validate() const {
  if (!(illuminance_lux >= 0.0)) throw ValidationError("illuminance must be non-negative");
  if (!(lux_per_mw_cm2 > 0.0)) throw ValidationError("lux conversion factor must be positive");
}

double standard_current_density(const SpectralCurve& absorption, const SpectralCurve& irradiance) {
  const double lo = std::max(absorption.min_wavelength(), irradiance.min_wavelength());
  const double hi = std::min(absorption.max_wavelength(), irradiance.max_wavelength());
  if (!(hi > lo)) throw DomainError("absorption and irradiance curves do not overlap");

  std::vector<double> grid{lo, hi};
  for (const auto* curve : {&absorption, &irradiance})
    for (const auto& s : curve->samples())
      if (s.wavelength_nm > lo && s.wavelength_nm < hi) grid.push_back(s.wavelength_nm);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  // integrand in (W m^-2 nm^-1) * m
  auto integrand = [&](double nm) {
    return absorption.at(nm) * irradiance.at(nm) * 10.0 * nm * 1e-9;
  };
  double integral = 0.0;  // W m^-2 * m
  for (std::size_t i = 1; i < grid.size(); ++i)
    integral += 0.5 * (integrand(grid[i - 1]) + integrand(grid[i])) * (grid[i] - grid[i - 1]);

  using C = PhysicalConstants;
  const double amps_per_m2 = C::elementary_charge / (C::planck * C::speed_of_light) * integral;
  return amps_per_m2 * 0.1;  // A/m^2 -> mA/cm^2
}

double scale_current_density(double jsc_std, const LightEnvironment& env) {
  if (!(jsc_std >= 0.0)) throw ValidationError("current density must be non-negative");
  env.validate();
  return env.irradiance() / LightEnvironment::reference_irradiance * jsc_std;
}

double baseline_photocurrent(const SolarCellSpec& cell, double jsc) {
  cell.validate();
  if (!(jsc >= 0.0)) throw ValidationError("current density must be non-negative");
  return 2.0 * cell.area() * jsc;
}

}  // namespace photogest
