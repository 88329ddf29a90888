// Copyright (c) 2026 The decfit Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <cmath>
#include <type_traits>

namespace decfit {

/// Parameters of the Fermi-Dirac model f(x) = g / (exp((x - mu)/t) + 1):
/// g is the degeneracy (model value as x -> 0 when mu >> t, percent units),
/// mu the chemical potential and t the temperature, both in the units of
/// the expenditure axis.  Invariants: t > 0, g > 0.
template <typename Scalar>
struct FermiParamsT {
  Scalar g;
  Scalar mu;
  Scalar t;
};

using FermiParams = FermiParamsT<double>;

/// Polynomial model coefficients, highest degree first, length degree + 1.
/// For degree 1, p(x) = coeffs[0]*x + coeffs[1].  Invariant: size >= 2.
struct PolyCoeffs {
  Eigen::VectorXd coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// Evaluates the polynomial at x with Horner's nested scheme.
template <typename Scalar>
  requires std::is_floating_point_v<Scalar>
Scalar eval_polynomial(const PolyCoeffs& c, Scalar x) {
  Scalar acc = static_cast<Scalar>(c.coeffs[0]);
  for (Eigen::Index k = 1; k < c.coeffs.size(); ++k) {
    acc = acc * x + static_cast<Scalar>(c.coeffs[k]);
  }
  return acc;
}

/// Elementwise eval_polynomial over an Eigen array expression.
template <typename Derived>
auto eval_polynomial(const PolyCoeffs& c, const Eigen::ArrayBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  return x.unaryExpr([c](Scalar v) { return eval_polynomial(c, v); });
}

/// Evaluates g / (exp((x - mu)/t) + 1) through the stable logistic form:
/// for z = (x - mu)/t > 0 the value is computed as g*e^{-z}/(1 + e^{-z}),
/// so extreme arguments saturate to 0 or g instead of overflowing.
/// Result lies in (0, g) for finite z and decreases strictly in x.
template <typename Scalar>
  requires std::is_floating_point_v<Scalar>
Scalar eval_fermi_dirac(const FermiParamsT<Scalar>& p, Scalar x) {
  const Scalar z = (x - p.mu) / p.t;
  if (z > Scalar(0)) {
    const Scalar e = std::exp(-z);
    return p.g * e / (Scalar(1) + e);
  }
  return p.g / (std::exp(z) + Scalar(1));
}

/// Elementwise eval_fermi_dirac over an Eigen array expression.
template <typename Scalar, typename Derived>
auto eval_fermi_dirac(const FermiParamsT<Scalar>& p,
                      const Eigen::ArrayBase<Derived>& x) {
  using XScalar = typename Derived::Scalar;
  return x.unaryExpr([p](XScalar v) {
    return eval_fermi_dirac(p, static_cast<Scalar>(v));
  });
}

/// Partial derivatives (df/dg, df/dmu, df/dt) of the Fermi-Dirac model.
/// With z = (x - mu)/t and s = 1/(e^z + 1) these are
/// (s, g*e^z*s^2/t, g*e^z*s^2*z/t); e^z*s^2 is computed symmetrically as
/// q/(1+q)^2 with q = e^{-|z|}, which underflows gracefully for large |z|.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> fermi_jacobian(const FermiParamsT<Scalar>& p,
                                           Scalar x) {
  const Scalar z = (x - p.mu) / p.t;
  const Scalar q = std::exp(-std::abs(z));
  const Scalar w = q / ((Scalar(1) + q) * (Scalar(1) + q));
  const Scalar s =
      z > Scalar(0) ? q / (Scalar(1) + q) : Scalar(1) / (std::exp(z) + Scalar(1));
  return {s, p.g * w / p.t, p.g * w * z / p.t};
}

}  // namespace decfit
