// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Seeds are fixed so the run is reproducible.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "crsgs/bench.hpp"
#include "crsgs/cli.hpp"
#include "exact_rr.hpp"
#include "test_util.hpp"

using namespace crsgs;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

template <class... Args>
std::string format(const char* fmt, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

int failures = 0;

void criterion(const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = secs < budget_s;
  const bool pass = out.pass && in_time;
  if (!pass) ++failures;
  std::printf("%s  %-28s %s (%.2f s, budget %.0f s%s)\n", pass ? "PASS" : "FAIL", name, out.detail.c_str(),
              secs, budget_s, in_time ? "" : ", over budget");
  std::fflush(stdout);
}

Outcome radius_formulas() {
  const CodeParams c16 = make_code(16, 4), c32 = make_code(32, 8);
  const bool ok = decoding_radius(32, 8, 2, 4) == 15 && decoding_radius(16, 4, 3, 6) == 8 &&
                  choose_params(32, 8, 15).has_value() && choose_params(16, 4, 8).has_value() &&
                  default_gmd_radius(c32) == 15 && default_gmd_radius(c16) == 8 && c32.bma_radius() == 12 &&
                  c16.bma_radius() == 6;
  return {ok, format("tau_GS 15/8, tau_BMA %d/%d", c32.bma_radius(), c16.bma_radius())};
}

Outcome bma_round_trip() {
  std::mt19937_64 rng(101);
  int total = 0, good = 0;
  for (auto [n, k] : {std::pair{16, 4}, {32, 8}}) {
    const CodeParams params = make_code(n, k);
    for (int t = 0; t <= params.bma_radius(); ++t) {
      for (int trial = 0; trial < 100; ++trial) {
        const auto inst = testutil::make_instance(params, t, rng);
        const auto est = classical_decode(params, inst.r);
        ++total;
        good += est && (est->values - inst.e.values).squaredNorm() < 1e-16;
      }
    }
  }
  return {good == total, format("%d/%d exact below 1e-16", good, total)};
}

Outcome gs_factor_property() {
  const CodeParams params = make_code(16, 4);
  const GSParams gs = *choose_params(16, 4, 8);
  std::mt19937_64 rng(102);
  int total = 0, good = 0;
  double worst_resid = 0.0, worst_factor = 0.0;
  for (int t : {7, 8}) {
    for (int trial = 0; trial < 100; ++trial) {
      const auto inst = testutil::make_instance(params, t, rng);
      const BivariatePoly q = gs_interpolate(params, inst.r, {}, gs).q;
      double resid = 0.0;
      for (int p = 0; p < 16; ++p) resid = std::max(resid, std::abs(q(params.alpha_powers[p], inst.r.values[p])));
      const double factor = q.compose(inst.root).cwiseAbs().maxCoeff();
      worst_resid = std::max(worst_resid, resid);
      worst_factor = std::max(worst_factor, factor);
      ++total;
      good += resid < 1e-8 && factor < 1e-6;
    }
  }
  return {good == total,
          format("%d/%d, max |Q(a^i,r_i)| %.1e, max |Q(x,g)| %.1e", good, total, worst_resid, worst_factor)};
}

Outcome end_to_end() {
  ExperimentConfig cfg;
  cfg.t_values = {8};
  cfg.num_trials = 100;
  cfg.seed = 103;
  int good = 0;
  for (const auto& r : run_experiment(cfg)) good += r.squared_error < 1e-10;
  return {good >= 90, format("%d/100 below 1e-10 (need 90)", good)};
}

double median_error(int n, int k, int t, int trials, double sigma, std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.n = n;
  cfg.k = k;
  cfg.t_values = {t};
  cfg.num_trials = trials;
  cfg.sigma_eta = sigma;
  cfg.seed = seed;
  std::vector<double> se;
  for (const auto& r : run_experiment(cfg)) se.push_back(r.squared_error);
  return testutil::median(se);
}

Outcome noise_direction() {
  const double clean16 = median_error(16, 4, 8, 100, 0.0, 104);
  const double noisy16 = median_error(16, 4, 8, 100, 1e-7, 104);
  const double clean32 = median_error(32, 8, 15, 30, 0.0, 105);
  const double noisy32 = median_error(32, 8, 15, 30, 1e-7, 105);
  const double deg16 = noisy16 - clean16, deg32 = noisy32 - clean32;
  return {noisy16 > clean16 && deg32 > deg16,
          format("median 16,4: %.2e -> %.2e; 32,8: %.2e -> %.2e", clean16, noisy16, clean32, noisy32)};
}

Outcome jacobian_fd() {
  const CodeParams params = make_code(16, 4);
  std::mt19937_64 rng(106);
  const double h = 1e-6;
  int good = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const BivariatePoly q = testutil::random_bivariate(1 + trial % 4, 8, rng);
    const CVector g = 0.5 * testutil::random_vector(4, rng);
    const CMatrix jac = jacobian(params, q, g);
    bool ok = true;
    for (int c = 0; c < 4; ++c) {
      CVector up = g, down = g;
      up[c] += h;
      down[c] -= h;
      const CVector fd = (evaluate_phi(params, q, up) - evaluate_phi(params, q, down)) / (2 * h);
      for (int p = 0; p < 16; ++p) {
        const double rel = std::abs(fd[p] - jac(p, c)) / std::max(std::abs(jac(p, c)), 1e-300);
        worst = std::max(worst, rel);
        ok = ok && rel < 1e-4;
      }
    }
    good += ok;
  }
  return {good == 50, format("%d/50, worst entry relative error %.1e", good, worst)};
}

Outcome newton_quadratic() {
  const CodeParams params = make_code(16, 4);
  const GSParams gs = *choose_params(16, 4, 8);
  std::mt19937_64 rng(107);
  Tolerances tight;
  tight.newton_resid = 1e-15;
  int good = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = testutil::make_instance(params, 8, rng);
    const BivariatePoly q = gs_interpolate(params, inst.r, {}, gs).q;
    const CVector z0 = inst.root + 3e-2 * testutil::random_vector(4, rng);
    const NewtonState st = newton_refine(params, q, z0, tight);
    const double floor = evaluate_phi(params, q, inst.root).norm();
    good += testutil::terminal_quadratic_run(st.history, 1e4, 10.0 * floor) >= 3;
  }
  return {good >= 40, format("%d/50 with r_{i+1} <= 1e4 r_i^2 for 3 steps into the floor (need 40)", good)};
}

Outcome mrr_exact() {
  std::mt19937_64 rng(108);
  std::uniform_int_distribution<long long> small(-4, 4);
  int total = 0, good = 0;
  for (int k = 1; k <= 4; ++k) {
    for (int ell = 1; ell <= 3; ++ell) {
      for (int draw = 0; draw < 10; ++draw) {
        std::vector<std::vector<long long>> factors(ell, std::vector<long long>(k));
        for (auto& f : factors)
          for (auto& v : f) v = small(rng);
        const exact::Bivar q = exact::from_integer_roots(factors);
        const auto truth = exact::roots(q, k);
        const CandidateSet set = mrr(exact::to_complex(q), k);
        bool all = !truth.empty();
        for (const auto& g : truth) {
          const CVector target = exact::to_complex(g);
          bool found = false;
          for (const auto& c : set.members) found = found || (c.g - target).cwiseAbs().maxCoeff() < 1e-6;
          all = all && found;
        }
        ++total;
        good += all;
      }
    }
  }
  return {good == total, format("%d/%d products fully factored", good, total)};
}

Outcome simulate_determinism() {
  const std::vector<std::string> args = {"simulate", "--n", "16", "--k", "4", "--t", "8", "--trials", "100",
                                         "--sigma-eta", "0", "--scheme", "gs_gmd", "--seed", "7"};
  std::ostringstream a, b, err;
  const int ca = cli_main(args, a, err);
  const int cb = cli_main(args, b, err);
  const bool ok = ca == kExitOk && cb == kExitOk && a.str() == b.str() && !a.str().empty();
  return {ok, format("%zu bytes, identical=%s", a.str().size(), a.str() == b.str() ? "yes" : "no")};
}

}  // namespace

int main() {
  criterion("radius formulas", 1, radius_formulas);
  criterion("BMA+GZ round trip", 30, bma_round_trip);
  criterion("GS factor property", 120, gs_factor_property);
  criterion("end-to-end t=8 CRS(16,4)", 600, end_to_end);
  criterion("noise sensitivity direction", 1200, noise_direction);
  criterion("Jacobian vs finite diff", 10, jacobian_fd);
  criterion("Newton quadratic", 30, newton_quadratic);
  criterion("mRR exact oracle", 5, mrr_exact);
  criterion("simulate determinism", 60, simulate_determinism);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
