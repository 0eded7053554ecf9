#pragma once

// Monte Carlo harness: draw sparse errors, compress, expand with noise,
// decode, and record the squared recovery error per trial.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "crsgs/gmd.hpp"

namespace crsgs {

enum class Scheme { bma, gs_gmd };
enum class TrialStatus { ok, bma_path, gmd_path, failure };

std::string to_string(Scheme s);
std::string to_string(TrialStatus s);
Scheme parse_scheme(const std::string& s);
TrialStatus parse_status(const std::string& s);

struct ExperimentConfig {
  int n = 16;
  int k = 4;
  std::vector<int> t_values{8};
  int num_trials = 100;
  double sigma_eta = 0.0;
  Scheme scheme = Scheme::gs_gmd;
  std::uint64_t seed = 0;
  std::optional<int> tau;  // GMD radius; default_gmd_radius when unset
  Tolerances tol;
  bool record_timing = false;  // wall_time_ms is 0 unless set
  int threads = 1;
};

struct TrialRecord {
  int trial_id = 0;
  Scheme scheme = Scheme::gs_gmd;
  int n = 0;
  int k = 0;
  int t = 0;
  double sigma_eta = 0.0;
  double squared_error = 0.0;
  TrialStatus status = TrialStatus::failure;
  double wall_time_ms = 0.0;
};

struct BoxplotStats {
  double q1 = 0, median = 0, q3 = 0, mean = 0;
  double whisker_low = 0, whisker_high = 0;
  std::vector<double> outliers;  // ascending
};

struct GroupStats {
  Scheme scheme = Scheme::gs_gmd;
  int t = 0;
  std::size_t count = 0;
  BoxplotStats box;
};

/// Decodes one received vector with the chosen scheme.
DecodeResult decode_with(const CodeParams& params, const ReceivedVector& r, Scheme scheme,
                         const GmdConfig& cfg);

/// Records come out ordered by (t group, trial index) whatever the thread
/// count; each trial draws from its own generator seeded by (seed, t, index).
std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg);

/// Quartiles by linear interpolation between order statistics; whiskers at
/// the most extreme values inside q1 - 1.5 IQR and q3 + 1.5 IQR.
BoxplotStats boxplot_stats(std::vector<double> values);

/// One entry per (scheme, t), sorted by scheme then t.
std::vector<GroupStats> group_stats(const std::vector<TrialRecord>& records);

inline constexpr const char* kCsvHeader =
    "trial_id,scheme,n,k,t,sigma_eta,squared_error,decode_status,wall_time_ms";

void write_csv(std::ostream& out, const std::vector<TrialRecord>& records);
std::vector<TrialRecord> read_csv(std::istream& in);
std::string stats_json(const std::vector<GroupStats>& groups);

}  // namespace crsgs
