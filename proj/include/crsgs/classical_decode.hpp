#pragma once

// Berlekamp-Massey over C with a relative discrepancy threshold,
// Gorenstein-Zierler error values by least squares, and the soft
// information |Lambda(alpha^i)| used to rank erasures.

#include <optional>
#include <vector>

#include "crsgs/crs_code.hpp"

namespace crsgs {

/// Monic error locator. lfsr_length is the LFSR length reported by BMA; it
/// differs from degree() only when the synthesized connection polynomial has a
/// vanishing top coefficient, which marks the locator as improper.
struct ErrorLocator {
  CVector coeffs;  // ascending, coeffs[degree()] == 1
  int lfsr_length = 0;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  cplx operator()(cplx x) const;
};

/// Normalizes an arbitrary nonzero polynomial (ascending coefficients) to a
/// monic locator; trailing zero coefficients are dropped.
ErrorLocator make_locator(const CVector& coeffs, int lfsr_length = -1);

struct SoftInfo {
  RVector lambda;  // |Lambda(alpha^(p+1))|
};

struct LocatorCheck {
  bool proper = false;
  std::vector<int> positions;  // ascending
};

ErrorLocator bma(const CodeParams& params, const ReceivedVector& r, const Tolerances& tol = {});
ErrorLocator bma(const CodeParams& params, const Syndrome& b, const Tolerances& tol = {});

LocatorCheck is_proper_locator(const CodeParams& params, const ErrorLocator& loc,
                               const Tolerances& tol = {});

/// Least-squares error values on the given positions. Returns nullopt when the
/// restricted system is rank deficient or has more unknowns than equations.
std::optional<SparseError> gorenstein_zierler(const CodeParams& params, const Syndrome& b,
                                              const std::vector<int>& positions);

/// ||H e^T - b^T||_2.
double syndrome_residual(const CodeParams& params, const CVector& e, const Syndrome& b);

SoftInfo soft_info(const CodeParams& params, const ErrorLocator& loc);

/// BMA, locator check, GZ and the residual test combined. Returns the recovered
/// error only when every check passes; `locator` receives the BMA output.
std::optional<SparseError> classical_decode(const CodeParams& params, const ReceivedVector& r,
                                            const Tolerances& tol = {}, ErrorLocator* locator = nullptr);

}  // namespace crsgs
