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

// Two-level algebra. Basis ordering is fixed everywhere to {|g>, |e>}:
// index 0 is the ground state and index 1 the excited state, so
// sigma_minus = |g><e| sits at (0, 1) and sigma_plus sigma_minus = |e><e|
// is the (1, 1) diagonal entry.

#include <array>
#include <complex>

namespace lzsme {

using Complex = std::complex<double>;

/// Allowed overshoot of the Bloch norm beyond the unit sphere.
inline constexpr double kPhysicalSlack = 1e-6;

/// Relative tolerance on the anti-Hermitian residue accepted by normalize().
inline constexpr double kHermiticityTolerance = 1e-9;

enum Level : int { kGround = 0, kExcited = 1 };

/// Dense 2x2 complex matrix, row-major.
struct ComplexMatrix2 {
  std::array<Complex, 4> a{};

  constexpr Complex& operator()(int row, int col) { return a[2 * row + col]; }
  constexpr const Complex& operator()(int row, int col) const {
    return a[2 * row + col];
  }

  static constexpr ComplexMatrix2 zero() { return {}; }
  static constexpr ComplexMatrix2 identity() {
    return {{Complex{1.0}, Complex{}, Complex{}, Complex{1.0}}};
  }
  static constexpr ComplexMatrix2 from_entries(Complex gg, Complex ge,
                                               Complex eg, Complex ee) {
    return {{gg, ge, eg, ee}};
  }

  ComplexMatrix2 adjoint() const {
    return {{std::conj(a[0]), std::conj(a[2]), std::conj(a[1]),
             std::conj(a[3])}};
  }
  Complex trace() const { return a[0] + a[3]; }

  ComplexMatrix2& operator+=(const ComplexMatrix2& o) {
    for (int k = 0; k < 4; ++k) a[k] += o.a[k];
    return *this;
  }
  ComplexMatrix2& operator-=(const ComplexMatrix2& o) {
    for (int k = 0; k < 4; ++k) a[k] -= o.a[k];
    return *this;
  }
  ComplexMatrix2& operator*=(Complex s) {
    for (auto& v : a) v *= s;
    return *this;
  }
  ComplexMatrix2& operator*=(double s) {
    for (auto& v : a) v *= s;
    return *this;
  }

  friend bool operator==(const ComplexMatrix2&, const ComplexMatrix2&) = default;
};

inline ComplexMatrix2 operator+(ComplexMatrix2 l, const ComplexMatrix2& r) {
  return l += r;
}
inline ComplexMatrix2 operator-(ComplexMatrix2 l, const ComplexMatrix2& r) {
  return l -= r;
}
inline ComplexMatrix2 operator-(ComplexMatrix2 m) { return m *= -1.0; }
inline ComplexMatrix2 operator*(ComplexMatrix2 m, double s) { return m *= s; }
inline ComplexMatrix2 operator*(double s, ComplexMatrix2 m) { return m *= s; }
inline ComplexMatrix2 operator*(ComplexMatrix2 m, Complex s) { return m *= s; }
inline ComplexMatrix2 operator*(Complex s, ComplexMatrix2 m) { return m *= s; }

inline ComplexMatrix2 operator*(const ComplexMatrix2& l,
                                const ComplexMatrix2& r) {
  return {{l.a[0] * r.a[0] + l.a[1] * r.a[2], l.a[0] * r.a[1] + l.a[1] * r.a[3],
           l.a[2] * r.a[0] + l.a[3] * r.a[2],
           l.a[2] * r.a[1] + l.a[3] * r.a[3]}};
}

inline ComplexMatrix2 commutator(const ComplexMatrix2& l,
                                 const ComplexMatrix2& r) {
  return l * r - r * l;
}
inline ComplexMatrix2 anticommutator(const ComplexMatrix2& l,
                                     const ComplexMatrix2& r) {
  return l * r + r * l;
}

double frobenius_norm(const ComplexMatrix2& m);

/// Largest entrywise modulus.
double max_abs(const ComplexMatrix2& m);

namespace ops {
inline constexpr ComplexMatrix2 sigma_minus() {
  return ComplexMatrix2::from_entries({}, Complex{1.0}, {}, {});
}
inline constexpr ComplexMatrix2 sigma_plus() {
  return ComplexMatrix2::from_entries({}, {}, Complex{1.0}, {});
}
inline constexpr ComplexMatrix2 ground_projector() {
  return ComplexMatrix2::from_entries(Complex{1.0}, {}, {}, {});
}
inline constexpr ComplexMatrix2 excited_projector() {
  return ComplexMatrix2::from_entries({}, {}, {}, Complex{1.0});
}
}  // namespace ops

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm_squared() const { return x * x + y * y + z * z; }
  double norm() const;
};

class DensityMatrix;

/// Symmetrizes (rho + rho^dagger)/2 and divides by the trace. The diagonal is
/// rebuilt as (1 - rho_ee, rho_ee) so the trace of the result evaluates to
/// exactly 1.0 and a second normalize() is a bitwise no-op.
///
/// Throws NonPhysicalState when the trace is not positive, the input is not
/// Hermitian within kHermiticityTolerance, or the Bloch norm of the result
/// exceeds 1 + kPhysicalSlack.
DensityMatrix normalize(const ComplexMatrix2& rho);

/// Hermitian, unit-trace 2x2 state. Only constructible through normalize() or
/// the named pure/mixed states, so every instance satisfies the invariants.
class DensityMatrix {
 public:
  static DensityMatrix ground();
  static DensityMatrix excited();
  static DensityMatrix maximally_mixed();
  /// (I + r.sigma)/2; throws NonPhysicalState if |r| > 1 + kPhysicalSlack.
  static DensityMatrix from_bloch(const BlochVector& r);

  const ComplexMatrix2& matrix() const { return rho_; }
  const Complex& operator()(int row, int col) const { return rho_(row, col); }

  friend bool operator==(const DensityMatrix&, const DensityMatrix&) = default;

 private:
  explicit DensityMatrix(const ComplexMatrix2& rho) : rho_(rho) {}
  friend DensityMatrix normalize(const ComplexMatrix2& rho);

  ComplexMatrix2 rho_;
};

/// x = rho_ge + rho_eg, y = i(rho_ge - rho_eg), z = rho_ee - rho_gg.
BlochVector to_bloch(const DensityMatrix& rho);

/// (1 + z)/2 of the Bloch vector.
double excited_population(const DensityMatrix& rho);

/// trace(rho^2) = (1 + |r|^2)/2.
double purity(const DensityMatrix& rho);

}  // namespace lzsme
