#pragma once

// Generalized minimum distance decoding with GS as the error/erasure
// decoder. BMA handles everything within half the minimum distance; when it
// fails, |Lambda(alpha^i)| ranks positions and GS trials with 0, 1, ...,
// tau-1 erasures vote on the error vector.

#include <optional>
#include <vector>

#include "crsgs/classical_decode.hpp"
#include "crsgs/gs_interp.hpp"
#include "crsgs/rootfind.hpp"

namespace crsgs {

struct GmdConfig {
  int tau = 0;
  Tolerances tol;
  int max_candidates = 64;  // refined candidates examined per trial
};

/// Default GMD radius: the best GS radius reachable with list size <= 4.
int default_gmd_radius(const CodeParams& params);

struct ScoredEntry {
  CVector e;
  int support_size = 0;
  int score = 1;
};

/// Entries are distinct under the dedup metric: same support set and every
/// coordinate within tol.list_dedup.
struct ScoredList {
  std::vector<ScoredEntry> entries;

  /// Adds ẽ or bumps the score of a matching entry.
  void add(const CVector& e, double dedup_tol);
};

enum class DecodeStatus { bma_path, gmd_path, failure };

struct TrialLog {
  int rho = 0;
  int tau_gs = 0;
  int n_eff = 0;
  std::optional<GSParams> gs;
  int raw_candidates = 0;
  int refined_candidates = 0;
  int accepted = 0;
};

struct DecodeResult {
  DecodeStatus status = DecodeStatus::failure;
  SparseError e;  // zero vector on failure
  ScoredList list;
  std::vector<TrialLog> trials;

  bool ok() const { return status != DecodeStatus::failure; }
};

ErasureSet erase_least_reliable(const SoftInfo& lambda, int rho);

/// w = g evaluated on the code points, ẽ = r - w. Accepted iff at most
/// cfg.tau entries have magnitude >= cfg.tol.support; sub-threshold entries of
/// the returned vector are zeroed.
std::optional<CVector> validate_candidate(const CodeParams& params, const CVector& g,
                                          const ReceivedVector& r, const GmdConfig& cfg);

/// Highest score; ties go to the smaller support, then to the earlier entry.
/// nullopt on an empty list.
std::optional<SparseError> score_and_select(const ScoredList& list);

DecodeResult gmd_decode(const CodeParams& params, const ReceivedVector& r, const GmdConfig& cfg);

}  // namespace crsgs
