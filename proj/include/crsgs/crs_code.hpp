#pragma once

// Complex Reed-Solomon codes over the n-th roots of unity, and the
// compressed-sensing view of them: the parity-check matrix is the sensing
// matrix and the syndrome is the measurement vector.
//
// Indexing: vector position p (0-based) corresponds to evaluation point
// alpha^(p+1), so the last position holds alpha^n = 1.

#include <cstdint>
#include <random>
#include <vector>

#include "crsgs/types.hpp"

namespace crsgs {

struct CodeParams {
  int n = 0;
  int k = 0;
  int d = 0;
  CVector alpha_powers;  // alpha^(p+1), alpha = exp(-j*2*pi/n)

  /// alpha^e for any integer exponent, reduced mod n before evaluating.
  cplx alpha_pow(long long e) const;
  /// Half the minimum distance, (d-1)/2 rounded down.
  int bma_radius() const { return (d - 1) / 2; }
};

struct ParityCheck {
  CMatrix matrix;  // (n-k) x n, orthonormal rows
};

struct SparseError {
  CVector values;
  std::vector<int> support;  // ascending positions p with values[p] != 0

  static SparseError from_values(CVector v);
  int sparsity() const { return static_cast<int>(support.size()); }
};

struct Syndrome {
  CVector values;
};

struct ReceivedVector {
  CVector values;
};

struct NoiseConfig {
  double sigma_eta = 0.0;
  std::uint64_t seed = 0;
};

/// C(x) = sum_m coeffs[m] x^m with deg C < k.
struct MessagePoly {
  CVector coeffs;
};

CodeParams make_code(int n, int k);

/// c_p = C(alpha^(p+1)) / sqrt(n).
CVector encode(const CodeParams& params, const MessagePoly& msg);

/// Inverse of encode on the code: the unique message whose codeword is the
/// orthogonal projection of v onto the code.
MessagePoly decode_message(const CodeParams& params, const CVector& v);

/// Row r is the conjugated unitary DFT row for frequency k+r, so
/// H_{r,p} = alpha^(-(p+1)(k+r)) / sqrt(n).
ParityCheck parity_check(const CodeParams& params);

Syndrome compress(const CodeParams& params, const CVector& e);
inline Syndrome compress(const CodeParams& params, const SparseError& e) {
  return compress(params, e.values);
}

/// r = H^* b + eta, with eta drawn from NoiseConfig (seeded independently).
ReceivedVector expand(const CodeParams& params, const Syndrome& b, const NoiseConfig& noise);
/// Same as above with noise drawn from a caller-owned generator.
ReceivedVector expand(const CodeParams& params, const Syndrome& b, double sigma_eta,
                      std::mt19937_64& rng);

/// Support uniform without replacement; values complex standard normal per
/// component, redrawn while |v| < 0.1.
SparseError random_sparse_error(const CodeParams& params, int t, std::mt19937_64& rng);

/// Minimum magnitude of a nonzero entry produced by random_sparse_error.
inline constexpr double kMinErrorMagnitude = 0.1;

}  // namespace crsgs
