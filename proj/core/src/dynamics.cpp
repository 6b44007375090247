// Copyright 2026 The lzsme Authors
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

#include "lzsme/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lzsme/errors.hpp"
#include "step_kernel.hpp"

namespace lzsme {

namespace {

void require(bool ok, const char* key, const std::string& reason) {
  if (!ok) throw ConfigError(key, reason);
}

}  // namespace

void SweepParams::validate() const {
  require(std::isfinite(omega) && omega >= 0.0, "omega",
          "must be finite and >= 0");
  require(std::isfinite(alpha) && alpha > 0.0, "alpha", "must be finite and > 0");
  require(std::isfinite(gamma_decay) && gamma_decay >= 0.0, "gamma_decay",
          "must be finite and >= 0");
  require(std::isfinite(phi), "phi", "must be finite");
  require(std::isfinite(eta) && eta >= 0.0 && eta <= 1.0, "eta",
          "must lie in [0, 1]");
  require(std::isfinite(t_initial), "t_initial", "must be finite");
  require(std::isfinite(t_final) && t_final > t_initial, "t_final",
          "must be finite and greater than t_initial");
}

double detuning(double t, const SweepParams& p) { return p.alpha * t; }

ComplexMatrix2 hamiltonian(double t, const SweepParams& p) {
  const Complex coupling{0.5 * p.omega};
  return ComplexMatrix2::from_entries({}, coupling, coupling,
                                      Complex{-detuning(t, p)});
}

ComplexMatrix2 dissipator(const ComplexMatrix2& rho) {
  return detail::dissipator_kernel(rho);
}

ComplexMatrix2 homodyne_superop(const ComplexMatrix2& rho, double phi) {
  return detail::homodyne_kernel(rho, std::polar(1.0, phi));
}

ComplexMatrix2 drift(const ComplexMatrix2& rho, double t, const SweepParams& p) {
  const Complex minus_i{0.0, -1.0};
  return minus_i * commutator(hamiltonian(t, p), rho) +
         p.gamma_decay * dissipator(rho);
}

ComplexMatrix2 diffusion(const ComplexMatrix2& rho, const SweepParams& p) {
  if (p.eta == 0.0) return ComplexMatrix2::zero();
  return std::sqrt(p.eta * p.gamma_decay) * homodyne_superop(rho, p.phi);
}

ComplexMatrix2 diffusion_derivative(const ComplexMatrix2& rho,
                                    const ComplexMatrix2& h,
                                    const SweepParams& p) {
  if (p.eta == 0.0) return ComplexMatrix2::zero();
  return std::sqrt(p.eta * p.gamma_decay) *
         detail::homodyne_derivative_kernel(rho, h, std::polar(1.0, p.phi));
}

double current_increment(const DensityMatrix& rho, double dt, double dW,
                         const SweepParams& p) {
  if (p.eta == 0.0) {
    throw UndefinedCurrent("homodyne current is undefined at eta = 0");
  }
  const double quadrature =
      detail::quadrature_expectation(rho.matrix(), std::polar(1.0, p.phi))
          .real();
  return p.gamma_decay * std::sqrt(p.eta) * quadrature * dt +
         std::sqrt(p.gamma_decay / p.eta) * dW;
}

double lz_probability(double gamma_lz) {
  if (!(gamma_lz >= 0.0)) {
    throw ValueOutOfRange("adiabaticity parameter must be >= 0");
  }
  return -std::expm1(-gamma_lz * std::numbers::pi / 2.0);
}

AdiabaticityParams adiabaticity(const SweepParams& p) {
  return {p.omega * p.omega / p.alpha};
}

}  // namespace lzsme
