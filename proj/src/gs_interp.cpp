#include "crsgs/gs_interp.hpp"

#include <algorithm>
#include <cmath>

namespace crsgs {

namespace {

long long floor_div(long long p, long long q) {
  long long r = p / q;
  if ((p % q != 0) && ((p < 0) != (q < 0))) --r;
  return r;
}

// Largest integer strictly below p/q, q > 0.
long long below(long long p, long long q) { return floor_div(p - 1, q); }

double binomial(int n, int r) {
  if (r < 0 || r > n) return 0.0;
  double out = 1.0;
  for (int i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return std::round(out);
}

}  // namespace

int GSParams::column_size(int nu, int k) const {
  return std::max(0, s * (n_eff - tau) - nu * (k - 1));
}

int GSParams::unknowns(int k) const {
  int total = 0;
  for (int nu = 0; nu <= ell; ++nu) total += column_size(nu, k);
  return total;
}

bool ErasureSet::contains(int p) const {
  return std::find(indices.begin(), indices.end(), p) != indices.end();
}

std::optional<int> decoding_radius(int n, int k, int s, int ell) {
  if (s < 1 || ell < s || k < 1 || k >= n) {
    throw InvalidArgument("decoding_radius: need 1 <= s <= ell and 1 <= k < n");
  }
  const long long nn = n, kk = k, ss = s, ll = ell;
  const long long first = below(nn * ss * (2 * ll - ss + 1) - ll * (kk - 1) * (ll + 1), 2 * ss * (ll + 1));
  const long long second = below(nn * ss - ll * (kk - 1), ss);
  const long long tau = std::min(first, second);
  if (tau < 0) return std::nullopt;
  return static_cast<int>(tau);
}

int johnson_radius(int n, int d) {
  if (d > n || n <= 0) throw InvalidArgument("johnson_radius: need d <= n");
  // tau < n - sqrt(n(n-d))  <=>  (n - tau)^2 > n(n-d) with n - tau > 0
  const long long bound = static_cast<long long>(n) * (n - d);
  int tau = n - 1;
  while (tau >= 0 && static_cast<long long>(n - tau) * (n - tau) <= bound) --tau;
  return tau;
}

std::optional<GSParams> choose_params(int n_eff, int k, int tau_target, int max_ell) {
  if (tau_target < 0) throw InvalidArgument("choose_params: tau_target must be nonnegative");
  if (k >= n_eff) return std::nullopt;
  if (tau_target > johnson_radius(n_eff, n_eff - k + 1)) return std::nullopt;
  for (int ell = 1; ell <= max_ell; ++ell) {
    for (int s = 1; s <= ell; ++s) {
      const auto radius = decoding_radius(n_eff, k, s, ell);
      if (radius && *radius >= tau_target) return GSParams{s, ell, tau_target, n_eff};
    }
  }
  return std::nullopt;
}

std::optional<int> max_radius(int n, int k, int max_ell) {
  std::optional<int> best;
  for (int ell = 1; ell <= max_ell; ++ell) {
    for (int s = 1; s <= ell; ++s) {
      const auto radius = decoding_radius(n, k, s, ell);
      if (radius && (!best || *radius > *best)) best = radius;
    }
  }
  return best;
}

CMatrix build_system(const CodeParams& params, const ReceivedVector& r, const ErasureSet& erased,
                     const GSParams& gs) {
  if (r.values.size() != params.n) throw InvalidArgument("build_system: received length");
  if (gs.n_eff != params.n - static_cast<int>(erased.indices.size())) {
    throw InvalidArgument("build_system: n_eff inconsistent with erasures");
  }
  const int k = params.k;
  const int cols = gs.unknowns(k);
  const int rows = gs.equations();
  CMatrix a = CMatrix::Zero(rows, cols);

  std::vector<int> offset(gs.ell + 1, 0);
  for (int nu = 1; nu <= gs.ell; ++nu) offset[nu] = offset[nu - 1] + gs.column_size(nu - 1, k);
  const int max_mu = gs.column_size(0, k);

  int row = 0;
  std::vector<cplx> xpow(max_mu + 1), ypow(gs.ell + 1);
  for (int p = 0; p < params.n; ++p) {
    if (erased.contains(p)) continue;
    const cplx y = r.values[p];
    for (int e = 0; e <= max_mu; ++e) xpow[e] = params.alpha_pow(static_cast<long long>(p + 1) * e);
    ypow[0] = 1.0;
    for (int e = 1; e <= gs.ell; ++e) ypow[e] = ypow[e - 1] * y;

    for (int total = 0; total < gs.s; ++total) {
      for (int a_ord = total; a_ord >= 0; --a_ord) {
        const int b_ord = total - a_ord;
        for (int nu = b_ord; nu <= gs.ell; ++nu) {
          const double bn = binomial(nu, b_ord);
          for (int mu = a_ord; mu < gs.column_size(nu, k); ++mu) {
            a(row, offset[nu] + mu) = binomial(mu, a_ord) * bn * xpow[mu - a_ord] * ypow[nu - b_ord];
          }
        }
        ++row;
      }
    }
  }
  return a;
}

InterpolationResult solve_interpolation(const CMatrix& system, const GSParams& gs, int k,
                                        const Tolerances& tol) {
  const Eigen::Index cols = gs.unknowns(k);
  if (system.cols() != cols) throw InvalidArgument("solve_interpolation: column count mismatch");
  InterpolationResult out;
  out.no_margin = system.rows() >= cols;

  if (cols == 0) {
    // No admissible monomials at all; report the constant polynomial.
    out.q = BivariatePoly(std::vector<CVector>{CVector::Ones(1)});
    out.degenerate = true;
    return out;
  }

  CVector q;
  if (system.rows() == 0) {
    q = CVector::Zero(cols);
    q[0] = 1.0;
    out.degenerate = true;
    out.kernel_dim = static_cast<int>(cols);
  } else {
    // Pad to square so the full right basis comes with a singular value each.
    CMatrix padded = CMatrix::Zero(std::max(system.rows(), cols), cols);
    padded.topRows(system.rows()) = system;
    Eigen::JacobiSVD<CMatrix> svd(padded, Eigen::ComputeFullV);
    const RVector& sv = svd.singularValues();
    const double smallest = sv[sv.size() - 1];
    const double cutoff = smallest + tol.svd_tie * sv[0];
    Eigen::Index pick = sv.size() - 1;
    for (Eigen::Index j = 0; j < sv.size(); ++j) {
      if (sv[j] <= cutoff) {
        pick = j;
        break;
      }
    }
    out.kernel_dim = static_cast<int>(sv.size() - pick);
    q = svd.matrixV().col(pick);
  }
  q /= q.norm();
  out.sigma_min = (system * q).norm();

  std::vector<CVector> columns;
  Eigen::Index pos = 0;
  for (int nu = 0; nu <= gs.ell; ++nu) {
    const int len = gs.column_size(nu, k);
    if (len == 0) break;
    columns.push_back(q.segment(pos, len));
    pos += len;
  }
  out.q = BivariatePoly(std::move(columns));
  return out;
}

InterpolationResult gs_interpolate(const CodeParams& params, const ReceivedVector& r,
                                   const ErasureSet& erased, const GSParams& gs,
                                   const Tolerances& tol) {
  return solve_interpolation(build_system(params, r, erased, gs), gs, params.k, tol);
}

cplx hasse_derivative(const BivariatePoly& q, int a, int b, cplx x, cplx y) {
  cplx acc{0.0, 0.0};
  for (int nu = b; nu <= q.y_degree(); ++nu) {
    const CVector& col = q.column(nu);
    const cplx yterm = binomial(nu, b) * std::pow(y, nu - b);
    for (int mu = a; mu < col.size(); ++mu) {
      acc += col[mu] * binomial(mu, a) * std::pow(x, mu - a) * yterm;
    }
  }
  return acc;
}

}  // namespace crsgs
