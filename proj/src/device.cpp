#include "cslbound/device.hpp"

#include "cslbound/constants.hpp"
#include "cslbound/errors.hpp"

namespace cslbound {

DeviceSpec reference_device() {
  DeviceSpec spec;
  spec.cantilever = {100e-6, 5e-6, 0.1e-6, 2330.0, 0.0};
  spec.sphere = {2.25e-6, 7430.0};
  spec.f0_hz = 3084.0;
  spec.Q = 3.8e4;
  spec.T_bath = 0.0;
  return spec;
}

DeviceModel build_device(const DeviceSpec& spec) {
  if (!(spec.f0_hz > 0.0 && spec.Q > 0.0)) throw DomainError("f0 and Q must be positive");
  CantileverSpec cantilever = spec.cantilever;
  cantilever.tip_mass = spec.sphere.mass();

  DeviceModel model;
  model.mode = solve_fundamental_mode(cantilever);
  model.mode.omega0 = 2.0 * kPi * spec.f0_hz;
  model.mode.Q = spec.Q;

  const RigidCuboidDims dims = rigid_reduction(model.mode, cantilever);
  model.geometry.R1 = dims.R1;
  model.geometry.R2 = dims.R2;
  model.geometry.R3 = dims.R3;
  model.geometry.R = spec.sphere.radius;
  model.geometry.rho_c = cantilever.rho_c;
  model.geometry.rho_s = spec.sphere.density;
  model.geometry.validate();

  model.oscillator.m = total_motional_mass(model.mode, cantilever, spec.sphere);
  model.oscillator.omega0 = model.mode.omega0;
  model.oscillator.Q = spec.Q;
  model.oscillator.T_bath = spec.T_bath;
  return model;
}

}  // namespace cslbound
