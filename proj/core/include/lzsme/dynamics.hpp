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

#pragma once

// Physical model of the monitored, decaying Landau-Zener sweep. Energies are
// in units of hbar*Gamma_ref and times in 1/Gamma_ref; gamma_decay stays an
// explicit parameter so that unitary (gamma_decay = 0) and rescaled runs are
// expressible.

#include "lzsme/qubit.hpp"

namespace lzsme {

struct SweepParams {
  double omega = 100.0;      ///< Rabi frequency
  double alpha = 1.0e3;      ///< chirp rate, detuning = alpha * t
  double gamma_decay = 1.0;  ///< radiative decay rate
  double phi = 0.0;          ///< local-oscillator phase [rad]
  double eta = 1.0;          ///< detector efficiency in [0, 1]
  double t_initial = -1.0;
  double t_final = 1.0;

  double window() const { return t_final - t_initial; }

  /// Throws ConfigError naming the first offending field.
  void validate() const;

  friend bool operator==(const SweepParams&, const SweepParams&) = default;
};

struct AdiabaticityParams {
  double gamma_lz = 0.0;  ///< omega^2 / alpha
};

double detuning(double t, const SweepParams& p);

/// H = (omega/2)(sigma_+ + sigma_-) - detuning(t) sigma_+ sigma_-.
ComplexMatrix2 hamiltonian(double t, const SweepParams& p);

/// D[sigma_-] rho = -1/2 {sigma_+ sigma_-, rho} + sigma_- rho sigma_+.
ComplexMatrix2 dissipator(const ComplexMatrix2& rho);
inline ComplexMatrix2 dissipator(const DensityMatrix& rho) {
  return dissipator(rho.matrix());
}

/// H[c] rho = c rho + rho c^dagger - trace((c + c^dagger) rho) rho with
/// c = sigma_- e^{i phi}.
ComplexMatrix2 homodyne_superop(const ComplexMatrix2& rho, double phi);
inline ComplexMatrix2 homodyne_superop(const DensityMatrix& rho, double phi) {
  return homodyne_superop(rho.matrix(), phi);
}

/// Deterministic part of the conditional master equation,
/// -i[H(t), rho] + gamma_decay D[sigma_-] rho.
ComplexMatrix2 drift(const ComplexMatrix2& rho, double t, const SweepParams& p);
inline ComplexMatrix2 drift(const DensityMatrix& rho, double t,
                            const SweepParams& p) {
  return drift(rho.matrix(), t, p);
}

/// Noise coefficient sqrt(eta gamma_decay) H[sigma_- e^{i phi}] rho.
ComplexMatrix2 diffusion(const ComplexMatrix2& rho, const SweepParams& p);
inline ComplexMatrix2 diffusion(const DensityMatrix& rho, const SweepParams& p) {
  return diffusion(rho.matrix(), p);
}

/// Exact directional derivative of diffusion() at rho along h. diffusion() is
/// quadratic in rho, so this closed form carries no truncation error.
ComplexMatrix2 diffusion_derivative(const ComplexMatrix2& rho,
                                    const ComplexMatrix2& h,
                                    const SweepParams& p);
inline ComplexMatrix2 diffusion_derivative(const DensityMatrix& rho,
                                           const ComplexMatrix2& h,
                                           const SweepParams& p) {
  return diffusion_derivative(rho.matrix(), h, p);
}

/// Homodyne current increment
///   dq = gamma sqrt(eta) <c + c^dagger> dt + sqrt(gamma / eta) dW.
/// Throws UndefinedCurrent when eta == 0.
double current_increment(const DensityMatrix& rho, double dt, double dW,
                         const SweepParams& p);

/// Asymptotic excitation after a unitary sweep, 1 - exp(-gamma_lz pi / 2).
double lz_probability(double gamma_lz);

AdiabaticityParams adiabaticity(const SweepParams& p);

}  // namespace lzsme
