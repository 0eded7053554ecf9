#pragma once

// y-roots of Q(x,y) of degree below k: a thresholded Roth-Ruckenstein
// recursion produces approximate candidates, Newton's method on the
// evaluation map phi(g) = (Q(alpha^i, g(alpha^i)))_i polishes them.

#include <vector>

#include "crsgs/bivariate.hpp"
#include "crsgs/crs_code.hpp"

namespace crsgs {

/// Roots of a univariate polynomial (ascending coefficients) from the
/// eigenvalues of its balanced companion matrix, each polished by a few
/// Newton steps. Roots closer than tol.root_cluster are merged into their
/// mean. Throws on the zero polynomial.
std::vector<cplx> univariate_roots(const CVector& coeffs, const Tolerances& tol = {});

/// T(x, x*y + gamma).
BivariatePoly shift_substitute(const BivariatePoly& t, cplx gamma);

/// Largest m with x^m dividing q (every column's first m coefficients zero).
int x_order(const BivariatePoly& q);
BivariatePoly divide_x_power(const BivariatePoly& q, int m);

struct Candidate {
  CVector g;  // coefficients g_0..g_{k-1}
  bool raw = true;
  bool refined = false;
  bool converged = false;
};

struct CandidateSet {
  std::vector<Candidate> members;
  int pruned_leaves = 0;
};

/// Modified Roth-Ruckenstein search started at depth lambda_depth. Every
/// recursion level zeroes coefficients below tol.mrr_epsilon * max|Q|, divides
/// out the largest power of x and branches on the roots of T(0, y). Leaves are
/// accepted without an exactness check. At most ell roots per level and
/// 4(ell+1) leaves are kept; roots with the smallest |T(0, gamma)| are
/// explored first.
CandidateSet mrr(const BivariatePoly& q, int k, int lambda_depth = 0, const Tolerances& tol = {});

/// (g_0, ..., g_m, 0, ..., 0) with m = floor(k/2).
CVector truncate_start(const CVector& g, int k);

CVector evaluate_phi(const CodeParams& params, const BivariatePoly& q, const CVector& g);

/// J(i, j) = d phi_i / d g_j = Q_y(alpha^i, g(alpha^i)) * alpha^(i j).
CMatrix jacobian(const CodeParams& params, const BivariatePoly& q, const CVector& g);

enum class NewtonStatus {
  converged,        // ||phi|| below tol.newton_resid * sqrt(n)
  stationary,       // step below tol.newton_step
  max_iterations,
  ill_conditioned,  // Jacobian condition number above tol.newton_max_cond
  diverged,         // damping could not keep the residual growth within 10x
};

struct NewtonState {
  CVector z;
  int iteration = 0;
  double residual = 0.0;
  NewtonStatus status = NewtonStatus::max_iterations;
  std::vector<double> history;  // residual before each iteration, then final

  bool usable() const {
    return status == NewtonStatus::converged || status == NewtonStatus::stationary;
  }
};

/// Gauss-Newton on phi(g) = 0 with least-squares steps from an SVD of the
/// n x k Jacobian. A step that increases the residual is halved up to five
/// times; if it still grows by more than 10x the iteration stops.
NewtonState newton_refine(const CodeParams& params, const BivariatePoly& q, const CVector& z0,
                          const Tolerances& tol = {});

/// g with g(alpha^(p+1)) = c_p for a codeword c; equals C(x)/sqrt(n).
CVector codeword_root(const CodeParams& params, const CVector& codeword);

/// g(alpha^(p+1)) for every position.
CVector evaluate_root(const CodeParams& params, const CVector& g);

}  // namespace crsgs
