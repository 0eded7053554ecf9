#pragma once

// Guruswami-Sudan interpolation: parameter selection and the multiplicity-s
// interpolation system, solved for its smallest right singular vector.

#include <optional>
#include <vector>

#include "crsgs/bivariate.hpp"
#include "crsgs/crs_code.hpp"

namespace crsgs {

struct GSParams {
  int s = 1;      // multiplicity
  int ell = 1;    // list size, the y-degree of Q
  int tau = 0;    // decoding radius
  int n_eff = 0;  // interpolation points after erasures

  /// Number of x-coefficients of Q_nu: s(n_eff - tau) - nu(k-1), clamped at 0.
  int column_size(int nu, int k) const;
  int unknowns(int k) const;
  int equations() const { return n_eff * s * (s + 1) / 2; }
};

/// Erased positions (0-based), excluded from interpolation.
struct ErasureSet {
  std::vector<int> indices;
  bool contains(int p) const;
};

/// Largest integer tau strictly below both GS bounds; nullopt if negative.
std::optional<int> decoding_radius(int n, int k, int s, int ell);

/// Largest integer strictly below n - sqrt(n(n-d)).
int johnson_radius(int n, int d);

/// Smallest ell, then smallest s, reaching tau_target. nullopt if tau_target
/// exceeds the Johnson radius of the (n_eff, k) code or no pair up to
/// max_ell works.
std::optional<GSParams> choose_params(int n_eff, int k, int tau_target, int max_ell = 64);

/// Largest decoding radius with list size at most max_ell.
std::optional<int> max_radius(int n, int k, int max_ell);

/// One row per non-erased point and Hasse order (a, b) with a + b < s;
/// rows ordered by point, then a + b, then a descending, i.e. (0,0), (1,0),
/// (0,1), (2,0), ... for each point. Columns follow
/// BivariatePoly::flatten order.
CMatrix build_system(const CodeParams& params, const ReceivedVector& r, const ErasureSet& erased,
                     const GSParams& gs);

struct InterpolationResult {
  BivariatePoly q;       // unit coefficient norm
  double sigma_min = 0;  // ||A q||_2
  int kernel_dim = 0;    // singular values tied with the smallest
  bool degenerate = false;
  /// Set when the system has at least as many rows as unknowns, so a
  /// nontrivial kernel exists only up to roundoff.
  bool no_margin = false;
};

InterpolationResult solve_interpolation(const CMatrix& system, const GSParams& gs, int k,
                                        const Tolerances& tol = {});

InterpolationResult gs_interpolate(const CodeParams& params, const ReceivedVector& r,
                                   const ErasureSet& erased, const GSParams& gs,
                                   const Tolerances& tol = {});

/// Hasse derivative of order (a, b) evaluated at (x, y).
cplx hasse_derivative(const BivariatePoly& q, int a, int b, cplx x, cplx y);

}  // namespace crsgs
