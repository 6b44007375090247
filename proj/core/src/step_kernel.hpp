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

// Step propagators shared by the stochastic steppers and the deterministic
// reference solvers. Every factor is completely positive, so states never
// leave the Bloch ball beyond rounding.
//
// One step from t to t + dt is the symmetric splitting
//
//   rho -> U1 rho U1^dagger -> A(rho) -> [measurement] -> U2 rho U2^dagger
//
// where U1 and U2 are exact exponentials of H frozen at t + dt/4 and
// t + 3dt/4, and A is the exact amplitude-damping channel of the decay term
// over dt. The measurement update acts at mid-step, so it sees the
// local-oscillator phase of the step midpoint in the lab frame.

#include <cmath>

#include "lzsme/dynamics.hpp"
#include "lzsme/qubit.hpp"
#include "lzsme/sde.hpp"

namespace lzsme::detail {

/// trace((c + c^dagger) rho) for c = lo * sigma_-.
inline Complex quadrature_expectation(const ComplexMatrix2& r, Complex lo) {
  return lo * r.a[2] + std::conj(lo) * r.a[1];
}

inline ComplexMatrix2 dissipator_kernel(const ComplexMatrix2& r) {
  return ComplexMatrix2::from_entries(r.a[3], -0.5 * r.a[1], -0.5 * r.a[2],
                                      -r.a[3]);
}

inline ComplexMatrix2 homodyne_kernel(const ComplexMatrix2& r, Complex lo) {
  const Complex lo_c = std::conj(lo);
  const Complex s = quadrature_expectation(r, lo);
  return ComplexMatrix2::from_entries(
      lo * r.a[2] + lo_c * r.a[1] - s * r.a[0], lo * r.a[3] - s * r.a[1],
      lo_c * r.a[3] - s * r.a[2], -s * r.a[3]);
}

inline ComplexMatrix2 homodyne_derivative_kernel(const ComplexMatrix2& r,
                                                 const ComplexMatrix2& h,
                                                 Complex lo) {
  const Complex lo_c = std::conj(lo);
  const Complex s_r = quadrature_expectation(r, lo);
  const Complex s_h = quadrature_expectation(h, lo);
  return ComplexMatrix2::from_entries(
      lo * h.a[2] + lo_c * h.a[1] - s_h * r.a[0] - s_r * h.a[0],
      lo * h.a[3] - s_h * r.a[1] - s_r * h.a[1],
      lo_c * h.a[3] - s_h * r.a[2] - s_r * h.a[2],
      -s_h * r.a[3] - s_r * h.a[3]);
}

/// exp(-i H tau) up to a global phase, for H = [[0, omega/2], [omega/2, -delta]].
inline ComplexMatrix2 hamiltonian_propagator(double omega, double delta,
                                             double tau) {
  // H = -delta/2 I + K with K^2 = w^2 I, w = sqrt(delta^2 + omega^2) / 2.
  const double w = 0.5 * std::hypot(delta, omega);
  const double c = std::cos(w * tau);
  const double s_over_w = w > 0.0 ? std::sin(w * tau) / w : tau;
  const Complex minus_i_s{0.0, -s_over_w};
  return ComplexMatrix2::from_entries(Complex{c} + minus_i_s * (0.5 * delta),
                                      minus_i_s * (0.5 * omega),
                                      minus_i_s * (0.5 * omega),
                                      Complex{c} - minus_i_s * (0.5 * delta));
}

/// U rho U^dagger.
inline ComplexMatrix2 conjugate(const ComplexMatrix2& u, const ComplexMatrix2& r) {
  return u * r * u.adjoint();
}

/// Exact flow of -gamma/2 {n, rho} + refill * gamma sigma_- rho sigma_+ over
/// one step, given decay = exp(-gamma dt).
inline ComplexMatrix2 damp(const ComplexMatrix2& r, double decay,
                           double refill) {
  const double coherence = std::sqrt(decay);
  return ComplexMatrix2::from_entries(r.a[0] + refill * (1.0 - decay) * r.a[3],
                                      coherence * r.a[1], coherence * r.a[2],
                                      decay * r.a[3]);
}

/// N rho N^dagger with N = I + u sigma_-.
inline ComplexMatrix2 lowering_kraus(const ComplexMatrix2& r, Complex u) {
  const Complex u_c = std::conj(u);
  const Complex ge = r.a[1] + u * r.a[3];
  return ComplexMatrix2::from_entries(r.a[0] + u * r.a[2] + ge * u_c, ge,
                                      r.a[2] + r.a[3] * u_c, r.a[3]);
}

/// Stepper kernels for a fixed step size.
///
/// Euler-Maruyama adds b(rho) dW at mid-step, with the full decay channel.
///
/// Milstein is applied in Kraus form: the damping channel keeps only the
/// undetected (1 - eta) share of the ground-state refill, and the measurement
/// record dy = dW + sqrt(eta gamma) <c + c^dagger> dt enters through
/// rho -> N rho N^dagger, N = I + sqrt(eta gamma) c dy. After trace
/// normalization this reproduces rho + a dt + b dW + 1/2 Db[b] (dW^2 - dt) up
/// to O(dt^{3/2}), and it keeps eta = 1 states exactly pure.
class StepKernel {
 public:
  StepKernel(const SweepParams& p, Stepper stepper, double dt)
      : p_(p),
        stepper_(stepper),
        dt_(dt),
        decay_(std::exp(-p.gamma_decay * dt)),
        noise_amplitude_(p.eta == 0.0 ? 0.0 : std::sqrt(p.eta * p.gamma_decay)),
        refill_(stepper == Stepper::kMilstein ? 1.0 - p.eta : 1.0),
        lo_(std::polar(1.0, p.phi)) {}

  /// Deterministic (unconditional) step from t.
  ComplexMatrix2 deterministic(const ComplexMatrix2& r, double t) const {
    ComplexMatrix2 mid = damp(first_half(r, t), decay_, 1.0);
    return second_half(mid, t);
  }

  /// One unnormalized conditional step from t with Wiener increment dW.
  ComplexMatrix2 step(const ComplexMatrix2& r, double t, double dW) const {
    if (noise_amplitude_ == 0.0) return deterministic(r, t);
    const ComplexMatrix2 half = first_half(r, t);
    ComplexMatrix2 mid = damp(half, decay_, refill_);
    if (stepper_ == Stepper::kMilstein) {
      const double record =
          dW + noise_amplitude_ * quadrature_expectation(half, lo_).real() * dt_;
      mid = lowering_kraus(mid, (noise_amplitude_ * record) * lo_);
    } else {
      mid += (noise_amplitude_ * dW) * homodyne_kernel(half, lo_);
    }
    return second_half(mid, t);
  }

 private:
  ComplexMatrix2 first_half(const ComplexMatrix2& r, double t) const {
    return conjugate(
        hamiltonian_propagator(p_.omega, detuning(t + 0.25 * dt_, p_), 0.5 * dt_),
        r);
  }
  ComplexMatrix2 second_half(const ComplexMatrix2& r, double t) const {
    return conjugate(
        hamiltonian_propagator(p_.omega, detuning(t + 0.75 * dt_, p_), 0.5 * dt_),
        r);
  }

  SweepParams p_;
  Stepper stepper_;
  double dt_;
  double decay_;
  double noise_amplitude_;
  double refill_;
  Complex lo_;
};

}  // namespace lzsme::detail
