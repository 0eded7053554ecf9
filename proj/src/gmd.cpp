#include "crsgs/gmd.hpp"

#include <algorithm>
#include <numeric>

namespace crsgs {

namespace {

std::vector<int> support_of(const CVector& e) {
  std::vector<int> s;
  for (Eigen::Index p = 0; p < e.size(); ++p) {
    if (e[p] != cplx{0.0, 0.0}) s.push_back(static_cast<int>(p));
  }
  return s;
}

bool same_entry(const CVector& a, const CVector& b, double dedup_tol) {
  if (support_of(a) != support_of(b)) return false;
  return (a - b).cwiseAbs().maxCoeff() < dedup_tol;
}

}  // namespace

int default_gmd_radius(const CodeParams& params) {
  return max_radius(params.n, params.k, 4).value_or(0);
}

void ScoredList::add(const CVector& e, double dedup_tol) {
  for (auto& entry : entries) {
    if (same_entry(entry.e, e, dedup_tol)) {
      ++entry.score;
      return;
    }
  }
  entries.push_back(ScoredEntry{e, static_cast<int>(support_of(e).size()), 1});
}

ErasureSet erase_least_reliable(const SoftInfo& lambda, int rho) {
  const Eigen::Index n = lambda.lambda.size();
  if (rho < 0 || rho >= n) throw InvalidArgument("erase_least_reliable: need 0 <= rho < n");
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return lambda.lambda[a] < lambda.lambda[b]; });
  order.resize(static_cast<std::size_t>(rho));
  std::sort(order.begin(), order.end());
  return ErasureSet{std::move(order)};
}

std::optional<CVector> validate_candidate(const CodeParams& params, const CVector& g,
                                          const ReceivedVector& r, const GmdConfig& cfg) {
  if (g.size() > params.k) throw InvalidArgument("validate_candidate: degree must be below k");
  CVector e = r.values - evaluate_root(params, g);
  int support = 0;
  for (Eigen::Index p = 0; p < e.size(); ++p) {
    if (std::abs(e[p]) >= cfg.tol.support) {
      ++support;
    } else {
      e[p] = 0.0;
    }
  }
  if (support > cfg.tau) return std::nullopt;
  return e;
}

std::optional<SparseError> score_and_select(const ScoredList& list) {
  if (list.entries.empty()) return std::nullopt;
  const ScoredEntry* best = &list.entries.front();
  for (const auto& entry : list.entries) {
    if (entry.score > best->score ||
        (entry.score == best->score && entry.support_size < best->support_size)) {
      best = &entry;
    }
  }
  return SparseError::from_values(best->e);
}

DecodeResult gmd_decode(const CodeParams& params, const ReceivedVector& r, const GmdConfig& cfg) {
  if (r.values.size() != params.n) throw InvalidArgument("gmd_decode: received length");
  if (cfg.tau < 0 || cfg.tau > johnson_radius(params.n, params.d)) {
    throw InvalidArgument("gmd_decode: tau must lie within the Johnson radius");
  }
  const Tolerances& tol = cfg.tol;
  DecodeResult result;
  result.e = SparseError::from_values(CVector::Zero(params.n));

  ErrorLocator locator;
  if (auto fast = classical_decode(params, r, tol, &locator)) {
    result.status = DecodeStatus::bma_path;
    result.e = std::move(*fast);
    return result;
  }
  const SoftInfo lambda = soft_info(params, locator);

  for (int rho = 0; rho < cfg.tau; ++rho) {
    TrialLog log;
    log.rho = rho;
    log.tau_gs = cfg.tau - rho;
    log.n_eff = params.n - rho;
    log.gs = choose_params(log.n_eff, params.k, log.tau_gs);
    if (!log.gs) {
      result.trials.push_back(log);
      continue;
    }
    const ErasureSet erased = erase_least_reliable(lambda, rho);
    const InterpolationResult interp = gs_interpolate(params, r, erased, *log.gs, tol);
    const CandidateSet raw = mrr(interp.q, params.k, 0, tol);
    log.raw_candidates = static_cast<int>(raw.members.size());

    std::vector<CVector> refined;
    for (const Candidate& cand : raw.members) {
      if (static_cast<int>(refined.size()) >= cfg.max_candidates) break;
      const NewtonState st = newton_refine(params, interp.q, truncate_start(cand.g, params.k), tol);
      if (!st.usable()) continue;
      const bool seen = std::any_of(refined.begin(), refined.end(), [&](const CVector& g) {
        return (g - st.z).cwiseAbs().maxCoeff() < tol.candidate_dedup;
      });
      if (seen) continue;
      refined.push_back(st.z);
      if (auto e = validate_candidate(params, st.z, r, cfg)) {
        result.list.add(*e, tol.list_dedup);
        ++log.accepted;
      }
    }
    log.refined_candidates = static_cast<int>(refined.size());
    result.trials.push_back(log);
  }

  if (auto best = score_and_select(result.list)) {
    result.status = DecodeStatus::gmd_path;
    result.e = std::move(*best);
  }
  return result;
}

}  // namespace crsgs
