#include "crsgs/classical_decode.hpp"

#include <algorithm>
#include <cmath>

namespace crsgs {

cplx ErrorLocator::operator()(cplx x) const {
  cplx acc{0.0, 0.0};
  for (Eigen::Index i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

ErrorLocator make_locator(const CVector& coeffs, int lfsr_length) {
  Eigen::Index top = coeffs.size();
  while (top > 0 && coeffs[top - 1] == cplx{0.0, 0.0}) --top;
  if (top == 0) throw InvalidArgument("make_locator: zero polynomial");
  ErrorLocator loc;
  loc.coeffs = coeffs.head(top) / coeffs[top - 1];
  loc.coeffs[top - 1] = 1.0;
  loc.lfsr_length = lfsr_length < 0 ? static_cast<int>(top - 1) : lfsr_length;
  return loc;
}

ErrorLocator bma(const CodeParams& params, const ReceivedVector& r, const Tolerances& tol) {
  return bma(params, compress(params, r.values), tol);
}

ErrorLocator bma(const CodeParams& params, const Syndrome& b, const Tolerances& tol) {
  const CVector& s = b.values;
  const Eigen::Index len = s.size();
  if (len != params.n - params.k) throw InvalidArgument("bma: syndrome must have length n-k");

  const double threshold = tol.bma_discrepancy * (len > 0 ? s.cwiseAbs().maxCoeff() : 0.0);

  // Connection polynomial C(z) = 1 + c_1 z + ... ; its roots are alpha^(p+1)
  // at error positions because the syndromes are power sums in alpha^-(p+1).
  CVector conn = CVector::Zero(len + 1);
  CVector prev = CVector::Zero(len + 1);
  conn[0] = prev[0] = 1.0;
  int length = 0;
  int shift = 1;
  cplx prev_disc = 1.0;

  for (Eigen::Index step = 0; step < len; ++step) {
    cplx disc = s[step];
    for (int i = 1; i <= length; ++i) disc += conn[i] * s[step - i];
    if (std::abs(disc) <= threshold) {
      ++shift;
      continue;
    }
    const cplx factor = disc / prev_disc;
    CVector updated = conn;
    for (Eigen::Index i = 0; i + shift <= len; ++i) updated[i + shift] -= factor * prev[i];
    if (2 * length <= step) {
      prev = conn;
      length = static_cast<int>(step) + 1 - length;
      prev_disc = disc;
      shift = 1;
    } else {
      ++shift;
    }
    conn = std::move(updated);
  }

  CVector lfsr = conn.head(length + 1);
  // A top coefficient that is negligible against the rest means the LFSR has
  // fewer roots than its length; make_locator then reports a lower degree.
  const double scale = lfsr.cwiseAbs().maxCoeff();
  for (Eigen::Index i = lfsr.size(); i-- > 1;) {
    if (std::abs(lfsr[i]) > 1e-12 * scale) break;
    lfsr[i] = 0.0;
  }
  return make_locator(lfsr, length);
}

LocatorCheck is_proper_locator(const CodeParams& params, const ErrorLocator& loc,
                               const Tolerances& tol) {
  LocatorCheck check;
  const ErrorLocator monic = make_locator(loc.coeffs, loc.lfsr_length);
  const int deg = monic.degree();
  if (deg != monic.lfsr_length || deg > params.bma_radius()) return check;
  for (int p = 0; p < params.n; ++p) {
    if (std::abs(monic(params.alpha_powers[p])) < tol.root_accept) check.positions.push_back(p);
  }
  check.proper = static_cast<int>(check.positions.size()) == deg;
  return check;
}

std::optional<SparseError> gorenstein_zierler(const CodeParams& params, const Syndrome& b,
                                              const std::vector<int>& positions) {
  const int rows = params.n - params.k;
  if (b.values.size() != rows) throw InvalidArgument("gorenstein_zierler: syndrome length");
  if (positions.empty()) return SparseError::from_values(CVector::Zero(params.n));
  if (static_cast<int>(positions.size()) > rows) return std::nullopt;

  const CMatrix h = parity_check(params).matrix;
  CMatrix restricted(rows, static_cast<Eigen::Index>(positions.size()));
  for (std::size_t j = 0; j < positions.size(); ++j) {
    const int p = positions[j];
    if (p < 0 || p >= params.n) throw InvalidArgument("gorenstein_zierler: position out of range");
    restricted.col(static_cast<Eigen::Index>(j)) = h.col(p);
  }
  Eigen::ColPivHouseholderQR<CMatrix> qr(restricted);
  qr.setThreshold(1e-10);
  if (qr.rank() < restricted.cols()) return std::nullopt;
  const CVector values = qr.solve(b.values);

  SparseError e;
  e.values = CVector::Zero(params.n);
  for (std::size_t j = 0; j < positions.size(); ++j) e.values[positions[j]] = values[j];
  e.support = positions;
  std::sort(e.support.begin(), e.support.end());
  return e;
}

double syndrome_residual(const CodeParams& params, const CVector& e, const Syndrome& b) {
  return (compress(params, e).values - b.values).norm();
}

SoftInfo soft_info(const CodeParams& params, const ErrorLocator& loc) {
  SoftInfo info;
  info.lambda.resize(params.n);
  for (int p = 0; p < params.n; ++p) info.lambda[p] = std::abs(loc(params.alpha_powers[p]));
  return info;
}

std::optional<SparseError> classical_decode(const CodeParams& params, const ReceivedVector& r,
                                            const Tolerances& tol, ErrorLocator* locator) {
  const Syndrome b = compress(params, r.values);
  ErrorLocator loc = bma(params, b, tol);
  const LocatorCheck check = is_proper_locator(params, loc, tol);
  if (locator) *locator = loc;
  if (!check.proper) return std::nullopt;
  auto e = gorenstein_zierler(params, b, check.positions);
  if (!e) return std::nullopt;
  if (syndrome_residual(params, e->values, b) > tol.residual * b.values.norm()) return std::nullopt;
  return e;
}

}  // namespace crsgs
