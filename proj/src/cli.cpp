#include "crsgs/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "crsgs/bench.hpp"

namespace crsgs {

CVector read_vector(std::istream& in) {
  std::vector<cplx> values;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    double re = 0.0, im = 0.0;
    if (!(ss >> re)) {
      std::string rest;
      ss.clear();
      if (ss >> rest) throw InvalidArgument("line " + std::to_string(lineno) + ": expected 're im'");
      continue;
    }
    if (!(ss >> im)) im = 0.0;
    std::string extra;
    if (ss >> extra) throw InvalidArgument("line " + std::to_string(lineno) + ": trailing text");
    values.emplace_back(re, im);
  }
  CVector v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v[static_cast<Eigen::Index>(i)] = values[i];
  return v;
}

void write_vector(std::ostream& out, const CVector& v) {
  char buf[64];
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", v[i].real(), v[i].imag());
    out << buf;
  }
}

namespace {

std::filesystem::path resolve_output(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) return std::filesystem::path(dir) / p;
  }
  return p;
}

CVector load_vector(const std::string& path) {
  if (path == "-") return read_vector(std::cin);
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  return read_vector(in);
}

// Writes to --output when given, otherwise to `out`.
template <class Fn>
void emit(const std::string& path, std::ostream& out, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(out);
    return;
  }
  const auto target = resolve_output(path);
  std::ofstream file(target);
  if (!file) throw InvalidArgument("cannot write '" + target.string() + "'");
  fn(file);
}

void require_length(const CVector& v, int len, const std::string& what) {
  if (v.size() != len) {
    throw InvalidArgument(what + " has " + std::to_string(v.size()) + " entries, expected " +
                          std::to_string(len));
  }
}

void add_tolerance_options(CLI::App* app, Tolerances& tol) {
  app->add_option("--tol-bma-discrepancy", tol.bma_discrepancy, "relative BMA discrepancy threshold");
  app->add_option("--tol-root-accept", tol.root_accept, "|Lambda(alpha^i)| root threshold");
  app->add_option("--tol-residual", tol.residual, "relative GZ syndrome residual");
  app->add_option("--tol-mrr-epsilon", tol.mrr_epsilon, "relative coefficient cleaning in mRR");
  app->add_option("--tol-root-cluster", tol.root_cluster, "univariate root merge distance");
  app->add_option("--tol-newton-resid", tol.newton_resid, "Newton residual target (times sqrt n)");
  app->add_option("--tol-newton-step", tol.newton_step, "Newton step-size stop");
  app->add_option("--newton-max-iter", tol.newton_max_iter, "Newton iteration cap");
  app->add_option("--tol-support", tol.support, "support threshold for recovered errors");
  app->add_option("--tol-dedup", tol.list_dedup, "candidate list merge distance");
}

struct CodeArgs {
  int n = 0;
  int k = 0;
};

// Replaces "--config FILE" with the file's key=value pairs as "--key value";
// keys already present on the command line win.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  std::vector<std::string> from_file;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw CLI::ArgumentMismatch("--config needs a file");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      out.push_back(args[i]);
      continue;
    }
    std::ifstream in(path);
    if (!in) throw CLI::FileError::Missing(path);
    std::string line;
    while (std::getline(in, line)) {
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        if (line.find_first_not_of(" \t\r") != std::string::npos) {
          throw CLI::ConversionError("config line without '=': " + line);
        }
        continue;
      }
      const std::string key = CLI::detail::trim_copy(line.substr(0, eq));
      const std::string value = CLI::detail::trim_copy(line.substr(eq + 1));
      const std::string flag = "--" + key;
      const bool overridden = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
        return a == flag || a.rfind(flag + "=", 0) == 0;
      });
      if (overridden) continue;
      from_file.push_back(flag);
      from_file.push_back(value);
    }
  }
  // File options go right after the subcommand name.
  if (!out.empty()) out.insert(out.begin() + 1, from_file.begin(), from_file.end());
  return out;
}

void add_code_options(CLI::App* app, CodeArgs& code) {
  app->add_option("--n", code.n, "code length")->required();
  app->add_option("--k", code.k, "code dimension")->required();
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"List decoding of complex Reed-Solomon codes for sparse recovery", "crsgs_cli"};
  app.require_subcommand(1);

  CodeArgs code;
  std::string input, output;
  Tolerances tol;

  auto* encode_cmd = app.add_subcommand("encode", "message coefficients -> codeword");
  add_code_options(encode_cmd, code);
  encode_cmd->add_option("--input", input, "message file (k lines 're im'), '-' for stdin")->required();
  encode_cmd->add_option("--output", output, "output file (default stdout)");

  auto* compress_cmd = app.add_subcommand("compress", "sparse vector -> syndrome");
  add_code_options(compress_cmd, code);
  compress_cmd->add_option("--input", input, "length-n vector file")->required();
  compress_cmd->add_option("--output", output, "output file (default stdout)");

  auto* decode_cmd = app.add_subcommand("decode", "syndrome or received vector -> sparse vector");
  add_code_options(decode_cmd, code);
  std::string syndrome_file, received_file, scheme_name = "gs_gmd";
  int tau = -1;
  auto* syn_opt = decode_cmd->add_option("--syndrome", syndrome_file, "length n-k syndrome file");
  auto* rec_opt = decode_cmd->add_option("--received", received_file, "length n received vector file");
  syn_opt->excludes(rec_opt);
  decode_cmd->add_option("--scheme", scheme_name, "bma or gs_gmd")->check(CLI::IsMember({"bma", "gs_gmd"}));
  decode_cmd->add_option("--tau", tau, "GMD radius (default: best radius with list size <= 4)");
  decode_cmd->add_option("--output", output, "output file (default stdout)");
  add_tolerance_options(decode_cmd, tol);

  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo trials -> CSV records");
  ExperimentConfig exp;
  std::string sim_scheme = "gs_gmd";
  std::vector<int> t_values;
  sim_cmd->add_option("--config", "key=value configuration file (keys are option names)");
  sim_cmd->add_option("--n", exp.n, "code length")->required();
  sim_cmd->add_option("--k", exp.k, "code dimension")->required();
  sim_cmd->add_option("--t", t_values, "error weights (repeat or comma-separate)")->delimiter(',')->required();
  sim_cmd->add_option("--trials", exp.num_trials, "trials per error weight")->capture_default_str();
  sim_cmd->add_option("--sigma-eta", exp.sigma_eta, "noise standard deviation")->capture_default_str();
  sim_cmd->add_option("--scheme", sim_scheme, "bma or gs_gmd")->check(CLI::IsMember({"bma", "gs_gmd"}));
  sim_cmd->add_option("--seed", exp.seed, "master seed")->capture_default_str();
  sim_cmd->add_option("--tau", tau, "GMD radius");
  sim_cmd->add_flag("--timing", exp.record_timing, "record wall_time_ms (breaks byte-identical reruns)");
  sim_cmd->add_option("--threads", exp.threads, "worker threads")->capture_default_str();
  sim_cmd->add_option("--output", output, "CSV output file (default stdout)");
  add_tolerance_options(sim_cmd, exp.tol);

  auto* stats_cmd = app.add_subcommand("stats", "CSV records -> boxplot statistics");
  std::string format = "json";
  stats_cmd->add_option("--input", input, "CSV records file, '-' for stdin")->required();
  stats_cmd->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  stats_cmd->add_option("--output", output, "output file (default stdout)");

  try {
    const std::vector<std::string> expanded = expand_config(args);
    std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (encode_cmd->parsed()) {
      const CodeParams params = make_code(code.n, code.k);
      MessagePoly msg{load_vector(input)};
      if (msg.coeffs.size() > params.k) throw InvalidArgument("message has more than k coefficients");
      const CVector c = encode(params, msg);
      emit(output, out, [&](std::ostream& os) { write_vector(os, c); });
      return kExitOk;
    }
    if (compress_cmd->parsed()) {
      const CodeParams params = make_code(code.n, code.k);
      const CVector e = load_vector(input);
      require_length(e, params.n, "input vector");
      const Syndrome b = compress(params, e);
      emit(output, out, [&](std::ostream& os) { write_vector(os, b.values); });
      return kExitOk;
    }
    if (decode_cmd->parsed()) {
      const CodeParams params = make_code(code.n, code.k);
      ReceivedVector r;
      if (!syndrome_file.empty()) {
        Syndrome b{load_vector(syndrome_file)};
        require_length(b.values, params.n - params.k, "syndrome");
        r = expand(params, b, NoiseConfig{});
      } else if (!received_file.empty()) {
        r.values = load_vector(received_file);
        require_length(r.values, params.n, "received vector");
      } else {
        throw InvalidArgument("decode needs --syndrome or --received");
      }
      GmdConfig cfg;
      cfg.tau = tau >= 0 ? tau : default_gmd_radius(params);
      cfg.tol = tol;
      const Scheme scheme = parse_scheme(scheme_name);
      const DecodeResult res = decode_with(params, r, scheme, cfg);
      if (!res.ok()) {
        nlohmann::ordered_json rec = {{"status", "failure"},
                                      {"scheme", scheme_name},
                                      {"n", params.n},
                                      {"k", params.k},
                                      {"tau", cfg.tau},
                                      {"candidates", res.list.entries.size()}};
        out << rec.dump() << "\n";
        return kExitDecodeFailure;
      }
      err << "status=" << (res.status == DecodeStatus::bma_path ? "bma_path" : "gmd_path")
          << " support=" << res.e.sparsity() << "\n";
      emit(output, out, [&](std::ostream& os) { write_vector(os, res.e.values); });
      return kExitOk;
    }
    if (sim_cmd->parsed()) {
      exp.t_values = t_values;
      exp.scheme = parse_scheme(sim_scheme);
      if (tau >= 0) exp.tau = tau;
      const auto records = run_experiment(exp);
      emit(output, out, [&](std::ostream& os) { write_csv(os, records); });
      return kExitOk;
    }
    if (stats_cmd->parsed()) {
      std::vector<TrialRecord> records;
      if (input == "-") {
        records = read_csv(std::cin);
      } else {
        std::ifstream in(input);
        if (!in) throw InvalidArgument("cannot open '" + input + "'");
        records = read_csv(in);
      }
      if (records.empty()) throw InvalidArgument("no records in input");
      const auto groups = group_stats(records);
      emit(output, out, [&](std::ostream& os) {
        if (format == "json") {
          os << stats_json(groups) << "\n";
          return;
        }
        os << "scheme,t,count,q1,median,q3,mean,whisker_low,whisker_high,n_outliers\n";
        char buf[256];
        for (const auto& g : groups) {
          std::snprintf(buf, sizeof buf, "%s,%d,%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%zu\n",
                        to_string(g.scheme).c_str(), g.t, g.count, g.box.q1, g.box.median, g.box.q3,
                        g.box.mean, g.box.whisker_low, g.box.whisker_high, g.box.outliers.size());
          os << buf;
        }
      });
      return kExitOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace crsgs
