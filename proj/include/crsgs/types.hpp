#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace crsgs {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

/// Thrown when an operation is called outside its precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical thresholds used across the decoder.
///
/// Every comparison against "zero" in the decoding chain goes through one of
/// these fields, so a sweep over this record is a sweep over all numerical
/// choices made by the library.
struct Tolerances {
  // classical_decode
  double bma_discrepancy = 1e-9;  // relative to max |syndrome|
  double root_accept = 1e-6;      // |Lambda(alpha^i)| on the monic locator
  double residual = 1e-6;         // relative to ||b||_2
  // gs_interp
  double svd_tie = 1e-12;         // relative singular-value tie
  // rootfind
  double mrr_epsilon = 1e-8;      // relative coefficient cleaning in mRR
  double root_cluster = 1e-6;
  double newton_resid = 1e-9;     // multiplied by sqrt(n)
  double newton_step = 1e-12;
  int newton_max_iter = 50;
  double newton_max_cond = 1e12;
  double candidate_dedup = 1e-6;
  // gmd
  double support = 1e-5;
  double list_dedup = 1e-6;
};

}  // namespace crsgs
