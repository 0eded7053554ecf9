#include "crsgs/crs_code.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace crsgs {

cplx CodeParams::alpha_pow(long long e) const {
  long long r = e % n;
  if (r < 0) r += n;
  return std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(r) / n);
}

SparseError SparseError::from_values(CVector v) {
  SparseError e;
  for (Eigen::Index p = 0; p < v.size(); ++p) {
    if (v[p] != cplx{0.0, 0.0}) e.support.push_back(static_cast<int>(p));
  }
  e.values = std::move(v);
  return e;
}

CodeParams make_code(int n, int k) {
  if (n <= 0 || k <= 0 || k >= n) {
    throw InvalidArgument("make_code: need 1 <= k < n, got n=" + std::to_string(n) +
                          " k=" + std::to_string(k));
  }
  CodeParams params;
  params.n = n;
  params.k = k;
  params.d = n - k + 1;
  params.alpha_powers.resize(n);
  for (int p = 0; p < n; ++p) params.alpha_powers[p] = params.alpha_pow(p + 1);
  return params;
}

CVector encode(const CodeParams& params, const MessagePoly& msg) {
  if (msg.coeffs.size() > params.k) {
    for (Eigen::Index m = params.k; m < msg.coeffs.size(); ++m) {
      if (msg.coeffs[m] != cplx{0.0, 0.0}) {
        throw InvalidArgument("encode: message degree must be below k");
      }
    }
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(params.n));
  CVector c = CVector::Zero(params.n);
  for (int p = 0; p < params.n; ++p) {
    cplx acc{0.0, 0.0};
    for (Eigen::Index m = 0; m < std::min<Eigen::Index>(msg.coeffs.size(), params.k); ++m) {
      acc += msg.coeffs[m] * params.alpha_pow(static_cast<long long>(p + 1) * m);
    }
    c[p] = scale * acc;
  }
  return c;
}

MessagePoly decode_message(const CodeParams& params, const CVector& v) {
  if (v.size() != params.n) throw InvalidArgument("decode_message: length mismatch");
  const double scale = 1.0 / std::sqrt(static_cast<double>(params.n));
  MessagePoly msg;
  msg.coeffs = CVector::Zero(params.k);
  for (int m = 0; m < params.k; ++m) {
    cplx acc{0.0, 0.0};
    for (int p = 0; p < params.n; ++p) acc += v[p] * params.alpha_pow(-static_cast<long long>(p + 1) * m);
    msg.coeffs[m] = scale * acc;
  }
  return msg;
}

ParityCheck parity_check(const CodeParams& params) {
  const int rows = params.n - params.k;
  const double scale = 1.0 / std::sqrt(static_cast<double>(params.n));
  ParityCheck h;
  h.matrix.resize(rows, params.n);
  for (int r = 0; r < rows; ++r) {
    for (int p = 0; p < params.n; ++p) {
      h.matrix(r, p) = scale * params.alpha_pow(-static_cast<long long>(p + 1) * (params.k + r));
    }
  }
  return h;
}

Syndrome compress(const CodeParams& params, const CVector& e) {
  if (e.size() != params.n) throw InvalidArgument("compress: error vector must have length n");
  return Syndrome{parity_check(params).matrix * e};
}

namespace {

CVector project_back(const CodeParams& params, const Syndrome& b) {
  if (b.values.size() != params.n - params.k) {
    throw InvalidArgument("expand: syndrome must have length n-k");
  }
  return parity_check(params).matrix.adjoint() * b.values;
}

void add_noise(CVector& r, double sigma_eta, std::mt19937_64& rng) {
  if (sigma_eta < 0.0) throw InvalidArgument("expand: sigma_eta must be nonnegative");
  if (sigma_eta == 0.0) return;
  std::normal_distribution<double> normal(0.0, sigma_eta / std::numbers::sqrt2);
  for (Eigen::Index p = 0; p < r.size(); ++p) {
    const double re = normal(rng);
    const double im = normal(rng);
    r[p] += cplx{re, im};
  }
}

}  // namespace

ReceivedVector expand(const CodeParams& params, const Syndrome& b, const NoiseConfig& noise) {
  std::mt19937_64 rng(noise.seed);
  return expand(params, b, noise.sigma_eta, rng);
}

ReceivedVector expand(const CodeParams& params, const Syndrome& b, double sigma_eta,
                      std::mt19937_64& rng) {
  CVector r = project_back(params, b);
  add_noise(r, sigma_eta, rng);
  return ReceivedVector{std::move(r)};
}

SparseError random_sparse_error(const CodeParams& params, int t, std::mt19937_64& rng) {
  if (t < 0 || t > params.n) throw InvalidArgument("random_sparse_error: need 0 <= t <= n");
  std::vector<int> idx(params.n);
  std::iota(idx.begin(), idx.end(), 0);
  // partial Fisher-Yates
  for (int i = 0; i < t; ++i) {
    std::uniform_int_distribution<int> pick(i, params.n - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v = CVector::Zero(params.n);
  for (int i = 0; i < t; ++i) {
    cplx value;
    do {
      const double re = normal(rng);
      const double im = normal(rng);
      value = {re, im};
    } while (std::abs(value) < kMinErrorMagnitude);
    v[idx[i]] = value;
  }
  return SparseError::from_values(std::move(v));
}

}  // namespace crsgs
