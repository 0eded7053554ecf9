#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "crsgs/bench.hpp"
#include "test_util.hpp"

using namespace crsgs;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.t_values = {0, 3, 8};
  cfg.num_trials = 6;
  cfg.seed = 5;
  return cfg;
}

std::string csv_of(const std::vector<TrialRecord>& records) {
  std::ostringstream out;
  write_csv(out, records);
  return out.str();
}

}  // namespace

TEST_CASE("run_experiment examples") {
  ExperimentConfig zero;
  zero.scheme = Scheme::bma;
  zero.t_values = {0};
  zero.num_trials = 1;
  const auto z = run_experiment(zero);
  REQUIRE(z.size() == 1);
  CHECK(z[0].squared_error < 1e-20);
  CHECK(z[0].status == TrialStatus::ok);

  ExperimentConfig six;
  six.scheme = Scheme::bma;
  six.t_values = {6};
  six.num_trials = 100;
  six.seed = 1;
  std::vector<double> se;
  for (const auto& r : run_experiment(six)) se.push_back(r.squared_error);
  CHECK(testutil::median(se) < 1e-16);

  ExperimentConfig eight;
  eight.t_values = {8};
  eight.num_trials = 100;
  eight.seed = 2;
  int good = 0;
  for (const auto& r : run_experiment(eight)) {
    good += r.squared_error < 1e-10;
    CHECK(r.status != TrialStatus::bma_path);
  }
  MESSAGE("gs_gmd below 1e-10 in " << good << "/100");
  CHECK(good >= 90);
}

TEST_CASE("bma failures carry the full error energy") {
  ExperimentConfig cfg;
  cfg.scheme = Scheme::bma;
  cfg.t_values = {10};
  cfg.num_trials = 10;
  for (const auto& r : run_experiment(cfg)) {
    CHECK(r.status == TrialStatus::failure);
    CHECK(r.squared_error >= 10 * kMinErrorMagnitude * kMinErrorMagnitude);
  }
}

TEST_CASE("property: trial count conservation and record layout") {
  const ExperimentConfig cfg = small_config();
  const auto records = run_experiment(cfg);
  REQUIRE(records.size() == cfg.t_values.size() * static_cast<std::size_t>(cfg.num_trials));
  for (std::size_t i = 0; i < records.size(); ++i) {
    const TrialRecord& r = records[i];
    CHECK(r.t == cfg.t_values[i / cfg.num_trials]);
    CHECK(r.trial_id == static_cast<int>(i));
    CHECK(r.n == 16);
    CHECK(r.k == 4);
    CHECK(r.squared_error >= 0.0);
    CHECK(r.wall_time_ms == 0.0);
  }
}

TEST_CASE("property: run_experiment is deterministic and thread-count independent") {
  ExperimentConfig cfg = small_config();
  cfg.sigma_eta = 1e-7;
  const std::string a = csv_of(run_experiment(cfg));
  const std::string b = csv_of(run_experiment(cfg));
  CHECK(a == b);
  cfg.threads = 3;
  CHECK(csv_of(run_experiment(cfg)) == a);
  cfg.threads = 1;
  cfg.seed = 6;
  CHECK(csv_of(run_experiment(cfg)) != a);
}

TEST_CASE("run_experiment validates its config") {
  ExperimentConfig cfg;
  cfg.num_trials = 0;
  CHECK_THROWS_AS(run_experiment(cfg), InvalidArgument);
  cfg = ExperimentConfig{};
  cfg.t_values = {17};
  CHECK_THROWS_AS(run_experiment(cfg), InvalidArgument);
  cfg = ExperimentConfig{};
  cfg.sigma_eta = -1.0;
  CHECK_THROWS_AS(run_experiment(cfg), InvalidArgument);
}

TEST_CASE("boxplot_stats examples") {
  const BoxplotStats ones = boxplot_stats({1, 1, 1, 1});
  CHECK(ones.q1 == 1.0);
  CHECK(ones.median == 1.0);
  CHECK(ones.q3 == 1.0);
  CHECK(ones.mean == 1.0);
  CHECK(ones.outliers.empty());

  const BoxplotStats five = boxplot_stats({1, 2, 3, 4, 5});
  CHECK(five.median == 3.0);
  CHECK(five.mean == 3.0);
  CHECK(five.q1 == 2.0);
  CHECK(five.q3 == 4.0);
  CHECK(five.whisker_low == 1.0);
  CHECK(five.whisker_high == 5.0);

  // IQR 2, fences -1 and 7
  const BoxplotStats spike = boxplot_stats({1, 2, 3, 4, 100});
  CHECK(spike.outliers == std::vector<double>{100.0});
  CHECK(spike.whisker_high == 4.0);
  CHECK(spike.whisker_low == 1.0);
  CHECK(spike.mean == 22.0);

  // quartile interpolation: positions 0.75, 1.5, 2.25
  const BoxplotStats four = boxplot_stats({4, 1, 3, 2});
  CHECK(four.q1 == doctest::Approx(1.75));
  CHECK(four.median == doctest::Approx(2.5));
  CHECK(four.q3 == doctest::Approx(3.25));

  CHECK_THROWS_AS(boxplot_stats({}), InvalidArgument);
}

TEST_CASE("property: boxplot_stats invariants and permutation invariance") {
  std::mt19937_64 rng(7);
  std::lognormal_distribution<double> dist(0.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(1 + trial % 17);
    for (auto& x : v) x = dist(rng);
    const BoxplotStats base = boxplot_stats(v);
    CHECK(base.q1 <= base.median);
    CHECK(base.median <= base.q3);
    const double iqr = base.q3 - base.q1;
    for (double o : base.outliers) CHECK((o < base.q1 - 1.5 * iqr || o > base.q3 + 1.5 * iqr));
    CHECK(std::is_sorted(base.outliers.begin(), base.outliers.end()));

    std::shuffle(v.begin(), v.end(), rng);
    const BoxplotStats again = boxplot_stats(v);
    CHECK(again.q1 == base.q1);
    CHECK(again.median == base.median);
    CHECK(again.q3 == base.q3);
    CHECK(again.mean == doctest::Approx(base.mean).epsilon(1e-12));
    CHECK(again.whisker_low == base.whisker_low);
    CHECK(again.whisker_high == base.whisker_high);
    CHECK(again.outliers == base.outliers);
  }
}

TEST_CASE("group_stats splits by scheme and t") {
  std::vector<TrialRecord> records;
  for (int t : {8, 3}) {
    for (Scheme s : {Scheme::gs_gmd, Scheme::bma}) {
      for (int i = 0; i < 4; ++i) {
        TrialRecord r;
        r.trial_id = static_cast<int>(records.size());
        r.scheme = s;
        r.t = t;
        r.squared_error = t + i;
        records.push_back(r);
      }
    }
  }
  const auto groups = group_stats(records);
  REQUIRE(groups.size() == 4);
  CHECK(groups[0].scheme == Scheme::bma);
  CHECK(groups[0].t == 3);
  CHECK(groups[1].t == 8);
  CHECK(groups[2].scheme == Scheme::gs_gmd);
  for (const auto& g : groups) {
    CHECK(g.count == 4);
    CHECK(g.box.mean == doctest::Approx(g.t + 1.5));
  }
}

TEST_CASE("property: CSV schema round trip") {
  const auto records = run_experiment(small_config());
  const std::string text = csv_of(records);
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  CHECK(line == kCsvHeader);
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 8);
  }
  CHECK(rows == static_cast<int>(records.size()));

  std::istringstream in(text);
  const auto parsed = read_csv(in);
  REQUIRE(parsed.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(parsed[i].trial_id == records[i].trial_id);
    CHECK(parsed[i].scheme == records[i].scheme);
    CHECK(parsed[i].t == records[i].t);
    CHECK(parsed[i].squared_error == records[i].squared_error);
    CHECK(parsed[i].status == records[i].status);
  }
  CHECK(csv_of(parsed) == text);
}

TEST_CASE("read_csv rejects malformed input") {
  std::istringstream bad_header("a,b,c\n");
  CHECK_THROWS_AS(read_csv(bad_header), InvalidArgument);
  std::istringstream short_row(std::string(kCsvHeader) + "\n0,bma,16,4,0,0,0\n");
  CHECK_THROWS_AS(read_csv(short_row), InvalidArgument);
  std::istringstream negative(std::string(kCsvHeader) + "\n0,bma,16,4,0,0,-1,ok,0\n");
  CHECK_THROWS_AS(read_csv(negative), InvalidArgument);
  std::istringstream nan(std::string(kCsvHeader) + "\n0,bma,16,4,0,0,nan,ok,0\n");
  CHECK_THROWS_AS(read_csv(nan), InvalidArgument);
  std::istringstream status(std::string(kCsvHeader) + "\n0,bma,16,4,0,0,0,maybe,0\n");
  CHECK_THROWS_AS(read_csv(status), InvalidArgument);
}

TEST_CASE("stats_json layout") {
  std::vector<TrialRecord> records(4);
  for (int i = 0; i < 4; ++i) records[i].squared_error = 1.0;
  const auto json = nlohmann::json::parse(stats_json(group_stats(records)));
  REQUIRE(json.is_array());
  REQUIRE(json.size() == 1);
  const auto& g = json[0];
  CHECK(g["scheme"] == "gs_gmd");
  CHECK(g["t"] == 0);
  for (const char* key : {"q1", "median", "q3", "mean", "whisker_low", "whisker_high"}) CHECK(g[key] == 1.0);
  CHECK(g["n_outliers"] == 0);
}
