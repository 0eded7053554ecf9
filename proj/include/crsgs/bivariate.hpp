#pragma once

#include <vector>

#include "crsgs/types.hpp"

namespace crsgs {

/// Evaluates sum_i coeffs[i] x^i by Horner's rule.
cplx horner(const CVector& coeffs, cplx x);

/// Q(x,y) = sum_nu Q_nu(x) y^nu stored as one coefficient column per y-power.
/// Column nu holds Q_{0,nu}, Q_{1,nu}, ...; columns may differ in length.
class BivariatePoly {
 public:
  BivariatePoly() = default;
  explicit BivariatePoly(std::vector<CVector> columns);

  /// Number of y-powers stored minus one (the list size for GS output).
  int y_degree() const { return static_cast<int>(columns_.size()) - 1; }
  /// Largest stored x-degree over all columns.
  int x_degree() const;
  const CVector& column(int nu) const { return columns_.at(nu); }
  CVector& column(int nu) { return columns_.at(nu); }
  const std::vector<CVector>& columns() const { return columns_; }

  cplx coeff(int mu, int nu) const;
  cplx operator()(cplx x, cplx y) const;

  /// Partial derivative in y evaluated at (x, y).
  cplx dy(cplx x, cplx y) const;

  double max_abs() const;
  double norm() const;
  bool is_zero() const;

  /// Q(x, g(x)) as a univariate coefficient vector.
  CVector compose(const CVector& g) const;

  /// Flattens in nu-major, mu-ascending order.
  CVector flatten() const;

 private:
  std::vector<CVector> columns_;
};

/// Univariate polynomial product.
CVector poly_mul(const CVector& a, const CVector& b);

}  // namespace crsgs
