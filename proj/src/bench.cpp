#include "crsgs/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace crsgs {

std::string to_string(Scheme s) { return s == Scheme::bma ? "bma" : "gs_gmd"; }

std::string to_string(TrialStatus s) {
  switch (s) {
    case TrialStatus::ok: return "ok";
    case TrialStatus::bma_path: return "bma_path";
    case TrialStatus::gmd_path: return "gmd_path";
    case TrialStatus::failure: return "failure";
  }
  return "failure";
}

Scheme parse_scheme(const std::string& s) {
  if (s == "bma") return Scheme::bma;
  if (s == "gs_gmd") return Scheme::gs_gmd;
  throw InvalidArgument("unknown scheme '" + s + "'");
}

TrialStatus parse_status(const std::string& s) {
  if (s == "ok") return TrialStatus::ok;
  if (s == "bma_path") return TrialStatus::bma_path;
  if (s == "gmd_path") return TrialStatus::gmd_path;
  if (s == "failure") return TrialStatus::failure;
  throw InvalidArgument("unknown decode status '" + s + "'");
}

DecodeResult decode_with(const CodeParams& params, const ReceivedVector& r, Scheme scheme,
                         const GmdConfig& cfg) {
  if (scheme == Scheme::gs_gmd) return gmd_decode(params, r, cfg);
  DecodeResult out;
  out.e = SparseError::from_values(CVector::Zero(params.n));
  if (auto e = classical_decode(params, r, cfg.tol)) {
    out.status = DecodeStatus::bma_path;
    out.e = std::move(*e);
  }
  return out;
}

namespace {

TrialRecord run_trial(const ExperimentConfig& cfg, const CodeParams& params, const GmdConfig& gmd,
                      int t, int index, int trial_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(index)};
  std::mt19937_64 rng(seq);

  TrialRecord rec;
  rec.trial_id = trial_id;
  rec.scheme = cfg.scheme;
  rec.n = cfg.n;
  rec.k = cfg.k;
  rec.t = t;
  rec.sigma_eta = cfg.sigma_eta;

  const SparseError e = random_sparse_error(params, t, rng);
  const ReceivedVector r = expand(params, compress(params, e), cfg.sigma_eta, rng);

  const auto start = std::chrono::steady_clock::now();
  const DecodeResult res = decode_with(params, r, cfg.scheme, gmd);
  const auto stop = std::chrono::steady_clock::now();
  if (cfg.record_timing) {
    rec.wall_time_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  }

  switch (res.status) {
    case DecodeStatus::bma_path:
      rec.status = cfg.scheme == Scheme::bma ? TrialStatus::ok : TrialStatus::bma_path;
      break;
    case DecodeStatus::gmd_path: rec.status = TrialStatus::gmd_path; break;
    case DecodeStatus::failure: rec.status = TrialStatus::failure; break;
  }
  rec.squared_error = rec.status == TrialStatus::failure ? e.values.squaredNorm()
                                                         : (e.values - res.e.values).squaredNorm();
  return rec;
}

}  // namespace

std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg) {
  if (cfg.num_trials < 1) throw InvalidArgument("run_experiment: num_trials must be >= 1");
  const CodeParams params = make_code(cfg.n, cfg.k);
  for (int t : cfg.t_values) {
    if (t < 0 || t > cfg.n) throw InvalidArgument("run_experiment: t values must lie in [0, n]");
  }
  GmdConfig gmd;
  gmd.tau = cfg.tau.value_or(default_gmd_radius(params));
  gmd.tol = cfg.tol;

  const int total = static_cast<int>(cfg.t_values.size()) * cfg.num_trials;
  std::vector<TrialRecord> records(static_cast<std::size_t>(total));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int id = next++; id < total; id = next++) {
      const int group = id / cfg.num_trials;
      records[id] = run_trial(cfg, params, gmd, cfg.t_values[group], id % cfg.num_trials, id);
    }
  };
  const int threads = std::clamp(cfg.threads, 1, std::max(1, total));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  return records;
}

BoxplotStats boxplot_stats(std::vector<double> values) {
  if (values.empty()) throw InvalidArgument("boxplot_stats: empty input");
  std::sort(values.begin(), values.end());
  const auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
  };
  BoxplotStats st;
  st.q1 = quantile(0.25);
  st.median = quantile(0.5);
  st.q3 = quantile(0.75);
  double sum = 0.0;
  for (double v : values) sum += v;
  st.mean = sum / static_cast<double>(values.size());

  const double iqr = st.q3 - st.q1;
  const double lo_fence = st.q1 - 1.5 * iqr;
  const double hi_fence = st.q3 + 1.5 * iqr;
  st.whisker_low = st.q1;
  st.whisker_high = st.q3;
  bool have_low = false;
  for (double v : values) {
    if (v < lo_fence || v > hi_fence) {
      st.outliers.push_back(v);
      continue;
    }
    if (!have_low) {
      st.whisker_low = v;
      have_low = true;
    }
    st.whisker_high = v;
  }
  return st;
}

std::vector<GroupStats> group_stats(const std::vector<TrialRecord>& records) {
  std::map<std::pair<int, int>, std::vector<double>> groups;
  for (const auto& r : records) {
    groups[{static_cast<int>(r.scheme), r.t}].push_back(r.squared_error);
  }
  std::vector<GroupStats> out;
  for (auto& [key, values] : groups) {
    GroupStats g;
    g.scheme = static_cast<Scheme>(key.first);
    g.t = key.second;
    g.count = values.size();
    g.box = boxplot_stats(std::move(values));
    out.push_back(std::move(g));
  }
  return out;
}

namespace {

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  if (!line.empty() && line.back() == sep) parts.emplace_back();
  return parts;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw InvalidArgument("malformed number '" + s + "'");
  return v;
}

int parse_int(const std::string& s) {
  std::size_t used = 0;
  const int v = std::stoi(s, &used);
  if (used != s.size()) throw InvalidArgument("malformed integer '" + s + "'");
  return v;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.trial_id << ',' << to_string(r.scheme) << ',' << r.n << ',' << r.k << ',' << r.t << ','
        << fmt_double(r.sigma_eta) << ',' << fmt_double(r.squared_error) << ',' << to_string(r.status)
        << ',' << fmt_double(r.wall_time_ms) << '\n';
  }
}

std::vector<TrialRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("read_csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw InvalidArgument("read_csv: unexpected header '" + line + "'");
  std::vector<TrialRecord> records;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 9) throw InvalidArgument("read_csv: row " + std::to_string(row) + " has wrong field count");
    try {
      TrialRecord r;
      r.trial_id = parse_int(f[0]);
      r.scheme = parse_scheme(f[1]);
      r.n = parse_int(f[2]);
      r.k = parse_int(f[3]);
      r.t = parse_int(f[4]);
      r.sigma_eta = parse_double(f[5]);
      r.squared_error = parse_double(f[6]);
      r.status = parse_status(f[7]);
      r.wall_time_ms = parse_double(f[8]);
      if (!std::isfinite(r.squared_error) || r.squared_error < 0.0) {
        throw InvalidArgument("squared_error must be finite and nonnegative");
      }
      records.push_back(r);
    } catch (const std::logic_error& ex) {
      throw InvalidArgument("read_csv: row " + std::to_string(row) + ": " + ex.what());
    }
  }
  return records;
}

std::string stats_json(const std::vector<GroupStats>& groups) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& g : groups) {
    arr.push_back({{"scheme", to_string(g.scheme)},
                   {"t", g.t},
                   {"q1", g.box.q1},
                   {"median", g.box.median},
                   {"q3", g.box.q3},
                   {"mean", g.box.mean},
                   {"whisker_low", g.box.whisker_low},
                   {"whisker_high", g.box.whisker_high},
                   {"n_outliers", g.box.outliers.size()}});
  }
  return arr.dump(2);
}

}  // namespace crsgs
