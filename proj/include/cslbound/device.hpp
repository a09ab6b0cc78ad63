#pragma once

#include "cslbound/beam.hpp"
#include "cslbound/geometry.hpp"
#include "cslbound/heating.hpp"

namespace cslbound {

/// Measured description of a sphere-loaded cantilever.
struct DeviceSpec {
  CantileverSpec cantilever;  ///< tip_mass is derived from the sphere when built
  SphereLoad sphere;
  double f0_hz = 0.0;
  double Q = 0.0;
  double T_bath = 0.0;  ///< K
};

/// Everything downstream code needs: mode, rigid geometry and oscillator.
struct DeviceModel {
  ModeModel mode;
  ResonatorGeometry geometry;
  OscillatorParams oscillator;
};

/// Silicon cantilever 100 x 5 x 0.1 um with a 2.25 um NdFeB sphere at its
/// free end, f0 = 3084 Hz, Q = 3.8e4.
DeviceSpec reference_device();

DeviceModel build_device(const DeviceSpec& spec);

}  // namespace cslbound
