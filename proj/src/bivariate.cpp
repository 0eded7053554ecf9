#include "crsgs/bivariate.hpp"

#include <algorithm>
#include <cmath>

namespace crsgs {

cplx horner(const CVector& coeffs, cplx x) {
  cplx acc{0.0, 0.0};
  for (Eigen::Index i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

BivariatePoly::BivariatePoly(std::vector<CVector> columns) : columns_(std::move(columns)) {}

int BivariatePoly::x_degree() const {
  Eigen::Index len = 0;
  for (const auto& c : columns_) len = std::max(len, c.size());
  return static_cast<int>(len) - 1;
}

cplx BivariatePoly::coeff(int mu, int nu) const {
  if (nu < 0 || nu >= static_cast<int>(columns_.size())) return 0.0;
  const CVector& c = columns_[nu];
  if (mu < 0 || mu >= c.size()) return 0.0;
  return c[mu];
}

cplx BivariatePoly::operator()(cplx x, cplx y) const {
  cplx acc{0.0, 0.0};
  for (std::size_t nu = columns_.size(); nu-- > 0;) acc = acc * y + horner(columns_[nu], x);
  return acc;
}

cplx BivariatePoly::dy(cplx x, cplx y) const {
  cplx acc{0.0, 0.0};
  for (std::size_t nu = columns_.size(); nu-- > 1;) {
    acc = acc * y + static_cast<double>(nu) * horner(columns_[nu], x);
  }
  return acc;
}

double BivariatePoly::max_abs() const {
  double m = 0.0;
  for (const auto& c : columns_) {
    if (c.size() > 0) m = std::max(m, c.cwiseAbs().maxCoeff());
  }
  return m;
}

double BivariatePoly::norm() const {
  double s = 0.0;
  for (const auto& c : columns_) s += c.squaredNorm();
  return std::sqrt(s);
}

bool BivariatePoly::is_zero() const { return max_abs() == 0.0; }

CVector poly_mul(const CVector& a, const CVector& b) {
  if (a.size() == 0 || b.size() == 0) return CVector();
  CVector out = CVector::Zero(a.size() + b.size() - 1);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    for (Eigen::Index j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

CVector BivariatePoly::compose(const CVector& g) const {
  // Horner in y with polynomial arithmetic in x.
  CVector acc;
  for (std::size_t nu = columns_.size(); nu-- > 0;) {
    CVector next = poly_mul(acc, g);
    const CVector& c = columns_[nu];
    if (next.size() < c.size()) {
      CVector grown = CVector::Zero(c.size());
      grown.head(next.size()) = next;
      next = std::move(grown);
    }
    next.head(c.size()) += c;
    acc = std::move(next);
  }
  return acc;
}

CVector BivariatePoly::flatten() const {
  Eigen::Index total = 0;
  for (const auto& c : columns_) total += c.size();
  CVector out(total);
  Eigen::Index pos = 0;
  for (const auto& c : columns_) {
    out.segment(pos, c.size()) = c;
    pos += c.size();
  }
  return out;
}

}  // namespace crsgs
