#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "crsgs/bivariate.hpp"

// Exact Roth-Ruckenstein over GF(p), the original algorithm with its
// exactness check, for integer-coefficient products.
namespace exact {

using crsgs::BivariatePoly;
using crsgs::CVector;

constexpr long long kPrime = 10007;
using Poly = std::vector<long long>;    // ascending in x
using Bivar = std::vector<Poly>;        // one column per y-power

inline long long mod(long long a) { return ((a % kPrime) + kPrime) % kPrime; }

inline long long signed_rep(long long a) { return a > kPrime / 2 ? a - kPrime : a; }

inline Bivar from_integer_roots(const std::vector<std::vector<long long>>& roots) {
  Bivar q{{1}};
  for (const auto& g : roots) {
    Bivar next(q.size() + 1);
    for (std::size_t nu = 0; nu < q.size(); ++nu) {
      Poly& up = next[nu + 1];
      up.resize(std::max(up.size(), q[nu].size()), 0);
      for (std::size_t i = 0; i < q[nu].size(); ++i) up[i] = mod(up[i] + q[nu][i]);
      Poly& same = next[nu];
      same.resize(std::max(same.size(), q[nu].size() + g.size() - 1), 0);
      for (std::size_t i = 0; i < q[nu].size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) same[i + j] = mod(same[i + j] - q[nu][i] * g[j]);
    }
    q = std::move(next);
  }
  return q;
}

inline bool is_zero(const Bivar& q) {
  for (const auto& c : q)
    for (long long v : c)
      if (v != 0) return false;
  return true;
}

inline Bivar shift(const Bivar& t, long long gamma) {
  const std::size_t ell = t.size() - 1;
  Bivar out(ell + 1);
  for (std::size_t b = 0; b <= ell; ++b) {
    Poly acc;
    long long binom = 1, gpow = 1;  // C(nu, b) and gamma^(nu-b) for nu = b
    for (std::size_t nu = b; nu <= ell; ++nu) {
      acc.resize(std::max(acc.size(), t[nu].size() + b), 0);
      const long long w = mod(binom * gpow);
      for (std::size_t i = 0; i < t[nu].size(); ++i) acc[i + b] = mod(acc[i + b] + w * t[nu][i]);
      binom = binom * (nu + 1) / (nu + 1 - b);
      gpow = mod(gpow * gamma);
    }
    out[b] = std::move(acc);
  }
  return out;
}

inline void search(const Bivar& q0, const Bivar& t_in, int depth, int k, Poly& g, std::set<Poly>& out) {
  Bivar t = t_in;
  std::size_t m = SIZE_MAX;
  for (const auto& c : t)
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i] != 0) {
        m = std::min(m, i);
        break;
      }
  if (m == SIZE_MAX) return;
  for (auto& c : t) c.erase(c.begin(), c.begin() + std::min(m, c.size()));

  Poly at_zero(t.size());
  for (std::size_t nu = 0; nu < t.size(); ++nu) at_zero[nu] = t[nu].empty() ? 0 : t[nu][0];
  for (long long gamma = 0; gamma < kPrime; ++gamma) {
    long long v = 0;
    for (std::size_t nu = at_zero.size(); nu-- > 0;) v = mod(v * gamma + at_zero[nu]);
    if (v != 0) continue;
    g[depth] = gamma;
    if (depth == k - 1) {
      // Q(x, g(x)) == 0, checked at more points than its x-degree.
      bool root = true;
      for (long long x = 1; x <= 64 && root; ++x) {
        long long gx = 0;
        for (int j = k; j-- > 0;) gx = mod(gx * x + g[j]);
        long long val = 0;
        for (std::size_t nu = q0.size(); nu-- > 0;) {
          long long col = 0;
          for (std::size_t i = q0[nu].size(); i-- > 0;) col = mod(col * x + q0[nu][i]);
          val = mod(val * gx + col);
        }
        root = val == 0;
      }
      if (root) out.insert(g);
    } else {
      search(q0, shift(t, gamma), depth + 1, k, g, out);
    }
  }
}

inline std::set<Poly> roots(const Bivar& q, int k) {
  std::set<Poly> out;
  Poly g(k, 0);
  if (!is_zero(q)) search(q, q, 0, k, g, out);
  return out;
}

inline BivariatePoly to_complex(const Bivar& q) {
  std::vector<CVector> cols;
  for (const auto& c : q) {
    CVector col(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) col[i] = static_cast<double>(signed_rep(c[i]));
    cols.push_back(col);
  }
  return BivariatePoly(std::move(cols));
}

inline CVector to_complex(const Poly& g) {
  CVector out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = static_cast<double>(signed_rep(g[i]));
  return out;
}

}  // namespace exact
