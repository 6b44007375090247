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

#include "lzsme/qubit.hpp"

#include <algorithm>
#include <cmath>

#include "lzsme/errors.hpp"

namespace lzsme {

double frobenius_norm(const ComplexMatrix2& m) {
  double sum = 0.0;
  for (const auto& v : m.a) sum += std::norm(v);
  return std::sqrt(sum);
}

double max_abs(const ComplexMatrix2& m) {
  double out = 0.0;
  for (const auto& v : m.a) out = std::max(out, std::abs(v));
  return out;
}

double BlochVector::norm() const { return std::sqrt(norm_squared()); }

DensityMatrix normalize(const ComplexMatrix2& m) {
  const double tr = m.a[0].real() + m.a[3].real();
  if (!std::isfinite(tr) || tr <= 0.0) {
    throw NonPhysicalState("density matrix has non-positive trace " +
                           std::to_string(tr));
  }
  const double residue = 0.5 * max_abs(m - m.adjoint());
  if (!(residue <= kHermiticityTolerance * std::max(1.0, tr))) {
    throw NonPhysicalState("density matrix is not Hermitian (residue " +
                           std::to_string(residue) + ")");
  }

  const double ee = m.a[3].real() / tr;
  const Complex ge = 0.5 * (m.a[1] + std::conj(m.a[2])) / tr;
  const double gg = 1.0 - ee;

  const double z = ee - gg;
  const double norm2 = z * z + 4.0 * std::norm(ge);
  constexpr double kMaxNorm2 = (1.0 + kPhysicalSlack) * (1.0 + kPhysicalSlack);
  if (!(norm2 <= kMaxNorm2)) {
    throw NonPhysicalState("Bloch norm " + std::to_string(std::sqrt(norm2)) +
                           " exceeds the unit sphere");
  }
  return DensityMatrix(
      ComplexMatrix2::from_entries(Complex{gg}, ge, std::conj(ge), Complex{ee}));
}

DensityMatrix DensityMatrix::ground() { return normalize(ops::ground_projector()); }

DensityMatrix DensityMatrix::excited() {
  return normalize(ops::excited_projector());
}

DensityMatrix DensityMatrix::maximally_mixed() {
  return normalize(ComplexMatrix2::identity());
}

DensityMatrix DensityMatrix::from_bloch(const BlochVector& r) {
  const Complex ge{0.5 * r.x, -0.5 * r.y};
  return normalize(ComplexMatrix2::from_entries(
      Complex{0.5 * (1.0 - r.z)}, ge, std::conj(ge), Complex{0.5 * (1.0 + r.z)}));
}

BlochVector to_bloch(const DensityMatrix& rho) {
  const Complex ge = rho(kGround, kExcited);
  const Complex eg = rho(kExcited, kGround);
  return {(ge + eg).real(), -(ge - eg).imag(),
          rho(kExcited, kExcited).real() - rho(kGround, kGround).real()};
}

double excited_population(const DensityMatrix& rho) {
  return 0.5 * (1.0 + to_bloch(rho).z);
}

double purity(const DensityMatrix& rho) {
  return 0.5 * (1.0 + to_bloch(rho).norm_squared());
}

}  // namespace lzsme
