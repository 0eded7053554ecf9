#include "crsgs/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace crsgs {

namespace {

double binomial(int n, int r) {
  if (r < 0 || r > n) return 0.0;
  double out = 1.0;
  for (int i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return std::round(out);
}

// Parlett-Reinsch diagonal scaling by powers of two.
void balance(CMatrix& a) {
  const Eigen::Index n = a.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double total = c + r;
      double f = 1.0;
      double g = r / 2.0;
      while (c < g) {
        f *= 2.0;
        c *= 4.0;
      }
      g = r * 2.0;
      while (c >= g) {
        f /= 2.0;
        c /= 4.0;
      }
      if ((c + r) / f < 0.95 * total) {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

cplx derivative_at(const CVector& coeffs, cplx x) {
  cplx acc{0.0, 0.0};
  for (Eigen::Index i = coeffs.size(); i-- > 1;) acc = acc * x + static_cast<double>(i) * coeffs[i];
  return acc;
}

cplx polish(const CVector& coeffs, cplx x) {
  double best = std::abs(horner(coeffs, x));
  for (int it = 0; it < 3 && best > 0.0; ++it) {
    const cplx dp = derivative_at(coeffs, x);
    if (dp == cplx{0.0, 0.0}) break;
    const cplx next = x - horner(coeffs, x) / dp;
    const double val = std::abs(horner(coeffs, next));
    if (!(val < best)) break;
    best = val;
    x = next;
  }
  return x;
}

BivariatePoly clean(const BivariatePoly& q, double eps) {
  const double cutoff = eps * q.max_abs();
  std::vector<CVector> cols = q.columns();
  for (auto& c : cols) {
    for (Eigen::Index i = 0; i < c.size(); ++i) {
      if (std::abs(c[i]) < cutoff) c[i] = 0.0;
    }
  }
  return BivariatePoly(std::move(cols));
}

struct SearchState {
  int k = 0;
  int max_roots = 0;
  int max_leaves = 0;
  const Tolerances* tol = nullptr;
  CVector g;
  CandidateSet out;
};

void search(const BivariatePoly& q, int depth, SearchState& st) {
  const BivariatePoly cleaned = clean(q, st.tol->mrr_epsilon);
  if (cleaned.is_zero()) return;
  const BivariatePoly t = divide_x_power(cleaned, x_order(cleaned));

  CVector at_zero(t.y_degree() + 1);
  for (int nu = 0; nu <= t.y_degree(); ++nu) at_zero[nu] = t.coeff(0, nu);
  if (at_zero.cwiseAbs().maxCoeff() == 0.0) return;

  std::vector<cplx> roots;
  try {
    roots = univariate_roots(at_zero, *st.tol);
  } catch (const InvalidArgument&) {
    return;
  }
  std::vector<double> fit(roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) fit[i] = std::abs(horner(at_zero, roots[i]));
  std::vector<std::size_t> order(roots.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return fit[a] < fit[b]; });
  if (static_cast<int>(order.size()) > st.max_roots) order.resize(st.max_roots);

  for (const std::size_t idx : order) {
    st.g[depth] = roots[idx];
    if (depth < st.k - 1) {
      search(shift_substitute(t, roots[idx]), depth + 1, st);
    } else if (static_cast<int>(st.out.members.size()) < st.max_leaves) {
      st.out.members.push_back(Candidate{st.g, true, false, false});
    } else {
      ++st.out.pruned_leaves;
    }
  }
}

}  // namespace

std::vector<cplx> univariate_roots(const CVector& coeffs, const Tolerances& tol) {
  Eigen::Index top = coeffs.size();
  while (top > 0 && coeffs[top - 1] == cplx{0.0, 0.0}) --top;
  if (top == 0) throw InvalidArgument("univariate_roots: zero polynomial");
  Eigen::Index low = 0;
  while (coeffs[low] == cplx{0.0, 0.0}) ++low;

  std::vector<cplx> found(static_cast<std::size_t>(low), cplx{0.0, 0.0});
  const CVector reduced = coeffs.segment(low, top - low);
  const Eigen::Index deg = reduced.size() - 1;
  if (deg == 1) {
    found.push_back(-reduced[0] / reduced[1]);
  } else if (deg > 1) {
    CMatrix companion = CMatrix::Zero(deg, deg);
    for (Eigen::Index i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < deg; ++i) companion(i, deg - 1) = -reduced[i] / reduced[deg];
    balance(companion);
    Eigen::ComplexEigenSolver<CMatrix> solver(companion, false);
    for (Eigen::Index i = 0; i < deg; ++i) found.push_back(solver.eigenvalues()[i]);
  }

  // Greedy clustering; each cluster keeps a running mean. The mean of a
  // split multiple root is far more accurate than any of its members, so
  // only simple roots get Newton polishing.
  std::vector<cplx> sums;
  std::vector<int> counts;
  for (const cplx& z : found) {
    bool merged = false;
    for (std::size_t c = 0; c < sums.size(); ++c) {
      if (std::abs(sums[c] / static_cast<double>(counts[c]) - z) < tol.root_cluster) {
        sums[c] += z;
        ++counts[c];
        merged = true;
        break;
      }
    }
    if (!merged) {
      sums.push_back(z);
      counts.push_back(1);
    }
  }
  std::vector<cplx> out(sums.size());
  for (std::size_t c = 0; c < sums.size(); ++c) {
    out[c] = sums[c] / static_cast<double>(counts[c]);
    if (counts[c] == 1 && out[c] != cplx{0.0, 0.0}) out[c] = polish(reduced, out[c]);
  }
  return out;
}

BivariatePoly shift_substitute(const BivariatePoly& t, cplx gamma) {
  // Column b of the result is x^b * sum_{nu >= b} C(nu, b) gamma^(nu-b) T_nu(x).
  const int ell = t.y_degree();
  std::vector<CVector> cols(ell + 1);
  for (int b = 0; b <= ell; ++b) {
    Eigen::Index len = 0;
    for (int nu = b; nu <= ell; ++nu) len = std::max(len, t.column(nu).size());
    CVector acc = CVector::Zero(len + b);
    cplx gpow = 1.0;
    for (int nu = b; nu <= ell; ++nu) {
      const CVector& col = t.column(nu);
      acc.segment(b, col.size()) += binomial(nu, b) * gpow * col;
      gpow *= gamma;
    }
    cols[b] = std::move(acc);
  }
  return BivariatePoly(std::move(cols));
}

int x_order(const BivariatePoly& q) {
  int m = -1;
  for (const auto& c : q.columns()) {
    for (Eigen::Index i = 0; i < c.size(); ++i) {
      if (c[i] != cplx{0.0, 0.0}) {
        if (m < 0 || i < m) m = static_cast<int>(i);
        break;
      }
    }
  }
  return std::max(m, 0);
}

BivariatePoly divide_x_power(const BivariatePoly& q, int m) {
  if (m == 0) return q;
  std::vector<CVector> cols;
  cols.reserve(q.columns().size());
  for (const auto& c : q.columns()) {
    for (Eigen::Index i = 0; i < std::min<Eigen::Index>(m, c.size()); ++i) {
      if (c[i] != cplx{0.0, 0.0}) throw InvalidArgument("divide_x_power: x^m does not divide");
    }
    cols.push_back(c.size() > m ? CVector(c.tail(c.size() - m)) : CVector());
  }
  return BivariatePoly(std::move(cols));
}

CandidateSet mrr(const BivariatePoly& q, int k, int lambda_depth, const Tolerances& tol) {
  if (k < 1) throw InvalidArgument("mrr: k must be positive");
  if (lambda_depth < 0 || lambda_depth >= k) throw InvalidArgument("mrr: depth out of range");
  SearchState st;
  st.k = k;
  st.max_roots = std::max(1, q.y_degree());
  st.max_leaves = 4 * (q.y_degree() + 1);
  st.tol = &tol;
  st.g = CVector::Zero(k);
  search(q, lambda_depth, st);
  return std::move(st.out);
}

CVector truncate_start(const CVector& g, int k) {
  if (g.size() > k) throw InvalidArgument("truncate_start: degree must be below k");
  CVector z = CVector::Zero(k);
  const Eigen::Index keep = std::min<Eigen::Index>(k / 2 + 1, g.size());
  z.head(keep) = g.head(keep);
  return z;
}

CVector evaluate_root(const CodeParams& params, const CVector& g) {
  CVector w(params.n);
  for (int p = 0; p < params.n; ++p) w[p] = horner(g, params.alpha_powers[p]);
  return w;
}

CVector evaluate_phi(const CodeParams& params, const BivariatePoly& q, const CVector& g) {
  CVector phi(params.n);
  for (int p = 0; p < params.n; ++p) {
    const cplx x = params.alpha_powers[p];
    phi[p] = q(x, horner(g, x));
  }
  return phi;
}

CMatrix jacobian(const CodeParams& params, const BivariatePoly& q, const CVector& g) {
  const Eigen::Index k = g.size();
  CMatrix jac(params.n, k);
  for (int p = 0; p < params.n; ++p) {
    const cplx x = params.alpha_powers[p];
    const cplx qy = q.dy(x, horner(g, x));
    for (Eigen::Index j = 0; j < k; ++j) jac(p, j) = qy * params.alpha_pow(static_cast<long long>(p + 1) * j);
  }
  return jac;
}

NewtonState newton_refine(const CodeParams& params, const BivariatePoly& q, const CVector& z0,
                          const Tolerances& tol) {
  NewtonState st;
  st.z = z0;
  CVector phi = evaluate_phi(params, q, st.z);
  st.residual = phi.norm();
  const double target = tol.newton_resid * std::sqrt(static_cast<double>(params.n));

  for (st.iteration = 0;; ++st.iteration) {
    st.history.push_back(st.residual);
    if (st.residual < target) {
      st.status = NewtonStatus::converged;
      return st;
    }
    if (st.iteration >= tol.newton_max_iter) {
      st.status = NewtonStatus::max_iterations;
      return st;
    }
    const CMatrix jac = jacobian(params, q, st.z);
    Eigen::JacobiSVD<CMatrix> svd(jac, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RVector& sv = svd.singularValues();
    const double smallest = sv[sv.size() - 1];
    if (!(smallest > 0.0) || sv[0] / smallest > tol.newton_max_cond) {
      st.status = NewtonStatus::ill_conditioned;
      return st;
    }
    const CVector step = svd.solve(-phi);

    double scale = 1.0;
    CVector trial = st.z + step;
    CVector trial_phi = evaluate_phi(params, q, trial);
    for (int halving = 0; halving < 5 && trial_phi.norm() > st.residual; ++halving) {
      scale *= 0.5;
      trial = st.z + scale * step;
      trial_phi = evaluate_phi(params, q, trial);
    }
    if (trial_phi.norm() > 10.0 * st.residual) {
      st.status = NewtonStatus::diverged;
      return st;
    }
    st.z = std::move(trial);
    phi = std::move(trial_phi);
    st.residual = phi.norm();
    if (scale * step.norm() < tol.newton_step) {
      ++st.iteration;
      st.history.push_back(st.residual);
      st.status = st.residual < target ? NewtonStatus::converged : NewtonStatus::stationary;
      return st;
    }
  }
}

CVector codeword_root(const CodeParams& params, const CVector& codeword) {
  return decode_message(params, codeword).coeffs / std::sqrt(static_cast<double>(params.n));
}

}  // namespace crsgs
