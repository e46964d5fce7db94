#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hermite/constants.hpp"
#include "hermite/errors.hpp"
#include "hermite/fgn.hpp"
#include "hermite/harness.hpp"
#include "hermite/oracle.hpp"
#include "hermite/simulator.hpp"
#include "hermite/variation.hpp"
#include "hermite/verify.hpp"
#include "json.hpp"

using namespace hermite;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Exit codes.
constexpr int exitOk = 0, exitError = 1, exitVerifyFailed = 2;

struct Options {
  std::optional<double> H;
  std::optional<int> q;
  std::vector<std::int64_t> N;
  std::optional<std::int64_t> m;
  std::optional<std::uint64_t> seed;
  std::optional<int> reps;
  std::optional<double> tolerance;
  std::string config, out, in, format;
  bool rawFgn = false;
  int nodes = QuadratureSpec{}.nodesPerCell;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::uint64_t seed_or_generate(const Options& o) {
  if (o.seed) return *o.seed;
  std::random_device rd;
  const std::uint64_t s = (std::uint64_t{rd()} << 32) ^ rd();
  std::cerr << "seed " << s << '\n';
  return s;
}

// Writes to <out>/<name> when --out is set, otherwise to stdout.
void emit(const Options& o, const std::string& name, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  fs::create_directories(o.out);
  const auto path = fs::path(o.out) / name;
  std::ofstream f(path);
  f << text;
  if (!f) throw std::runtime_error("cannot write " + path.string());
}

HurstParams need_params(const Options& o) {
  if (!o.H || !o.q) throw ConfigError("--H and --q are required");
  return derive_params(*o.H, *o.q);
}

std::int64_t single_N(const std::vector<std::int64_t>& ns, std::int64_t fallback) {
  if (ns.size() > 1) throw ConfigError("this subcommand takes a single --N");
  return ns.empty() ? fallback : ns.front();
}

int run_constants(const Options& o) {
  const auto p = need_params(o);
  const auto cs = constant_set(p);
  json j{{"H", p.H}, {"q", p.q}, {"hPrime", p.hPrime}, {"hSecond", p.hSecond}, {"a", cs.a}, {"d", cs.d}};
  j["c1"] = opt(cs.c1);
  j["c2"] = cs.comb.at(p.q - 1);
  json comb = json::object(), z = json::object();
  for (const auto& [k, v] : cs.comb) comb[std::to_string(k)] = v;
  for (const auto& [k, v] : cs.z) z[std::to_string(k)] = v;
  j["comb"] = comb;
  j["z"] = z;
  j["x1"] = opt(cs.x1);
  j["x2"] = opt(cs.x2);
  j["x3"] = opt(cs.x3);
  for (const auto& [key, m] : {std::pair{"b1", &cs.b1}, {"b2", &cs.b2}, {"b3", &cs.b3}}) {
    json b = json::object();
    for (const auto& [k, v] : *m) b[std::to_string(k)] = v;
    j[key] = b;
  }
  if (o.format == "csv") {
    std::ostringstream s;
    s << "name,value\n";
    for (const auto& [key, v] : j.items()) {
      if (v.is_object()) {
        for (const auto& [k, x] : v.items()) s << key << '[' << k << "]," << fmt(x.get<double>()) << '\n';
      } else {
        s << key << ',' << (v.is_null() ? "" : v.is_number_integer() ? v.dump() : fmt(v.get<double>())) << '\n';
      }
    }
    emit(o, "constants.csv", s.str());
  } else {
    emit(o, "constants.json", j.dump(2) + "\n");
  }
  return exitOk;
}

int run_simulate(const Options& o) {
  const auto p = need_params(o);
  if (o.N.size() != 1) throw ConfigError("simulate needs exactly one --N");
  const std::int64_t N = o.N.front();
  const std::int64_t m = o.m.value_or(defaultOversampling);
  const RandomStream stream{seed_or_generate(o), 0};
  json meta{{"H", p.H}, {"q", p.q}, {"N", N}, {"seed", stream.seed}, {"stream_index", stream.streamIndex}};
  std::ostringstream s;
  Eigen::VectorXd values;
  if (o.rawFgn) {
    // the driving noise itself, at index H'
    values = generate_fgn_circulant(p.hPrime, N, stream).values;
    s << "value\n";
    for (double x : values) s << fmt(x) << '\n';
    meta["hurst"] = p.hPrime;
    meta["raw_fgn"] = true;
  } else {
    const auto path = simulate_path(p, N, m, stream);
    values = path.values;
    s << "t,value\n";
    for (Eigen::Index i = 0; i < values.size(); ++i)
      s << fmt(static_cast<double>(i) / static_cast<double>(N)) << ',' << fmt(values[i]) << '\n';
    meta["m"] = m;
    meta["sigmaN"] = path.sigmaN;
  }
  if (o.format == "json") {
    meta["values"] = std::vector<double>(values.begin(), values.end());
    emit(o, "path.json", meta.dump() + "\n");
    return exitOk;
  }
  emit(o, "path.csv", s.str());
  if (!o.out.empty()) emit(o, "path.meta.json", meta.dump(2) + "\n");
  return exitOk;
}

Eigen::VectorXd read_path_csv(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot read " + file);
  std::string line;
  if (!std::getline(in, line) || line != "t,value") throw ConfigError(file + ": expected header 't,value'");
  std::vector<double> vals;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ConfigError(file + ": malformed row '" + line + "'");
    try {
      vals.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw ConfigError(file + ": malformed row '" + line + "'");
    }
  }
  if (vals.size() < 2) throw ConfigError(file + ": need at least two grid values");
  return Eigen::Map<Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

int run_estimate(const Options& o) {
  if (o.in.empty()) throw ConfigError("--in is required");
  const int q = o.q.value_or(1);
  const auto values = read_path_csv(o.in);
  const std::int64_t N = values.size() - 1;
  json j;
  if (o.H) {
    const auto r = variation_report(values, derive_params(*o.H, q));
    j = {{"N", r.N}, {"v_n", r.vN}, {"s_n", r.sN}, {"h_hat", r.hHat}, {"normalized_v_n", opt(r.normalizedVN)},
         {"normalized_error", r.normalizedError}, {"true_h", opt(r.trueH)}};
  } else {
    // without a true H only the estimator itself is defined
    const double sN = empirical_mean_square(values);
    j = {{"N", N}, {"v_n", nullptr}, {"s_n", sN}, {"h_hat", estimate_hurst(sN, N)}, {"normalized_v_n", nullptr},
         {"normalized_error", nullptr}, {"true_h", nullptr}};
  }
  j["q"] = q;
  emit(o, "estimate.json", j.dump(2) + "\n");
  return exitOk;
}

int run_oracle(const Options& o) {
  const auto p = need_params(o);
  const QuadratureSpec spec{o.nodes, true};
  const std::vector<std::int64_t> ns = o.N.empty() ? std::vector<std::int64_t>{64, 128, 256, 512, 1024} : o.N;
  json rows = json::array();
  std::ostringstream s;
  s << "N,k,value,asymptote,ratio\n";
  for (auto N : ns)
    for (int k = 0; k < p.q; ++k) {
      const double v = k == p.q - 1 ? expected_T2_squared(p, N, spec) : expected_T2q2k_squared_bound(p, k, N, spec);
      const double a = chaos_term_asymptote(p, k, N, spec);
      s << N << ',' << k << ',' << fmt(v) << ',' << fmt(a) << ',' << fmt(v / a) << '\n';
      rows.push_back({{"N", N}, {"k", k}, {"value", v}, {"asymptote", a}, {"ratio", v / a}});
    }
  if (o.format == "json")
    emit(o, "oracle.json", rows.dump(2) + "\n");
  else
    emit(o, "oracle.csv", s.str());
  return exitOk;
}

// Values from --config first, explicit flags on top.
struct VerifyInputs {
  std::optional<int> q;
  std::optional<double> H;
  std::vector<std::int64_t> N;
  std::optional<int> reps;
  RunSettings settings;
};

VerifyInputs verify_inputs(const Options& o, ExperimentKind kind) {
  VerifyInputs v;
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in) throw ConfigError("cannot read " + o.config);
    std::stringstream text;
    text << in.rdbuf();
    const auto c = config_from_json(text.str());
    if (c.experimentKind != kind)
      throw ConfigError("config experiment_kind '" + to_string(c.experimentKind) + "' does not match '" +
                        to_string(kind) + "'");
    if (c.qValues.size() != 1 || c.hValues.size() != 1)
      throw ConfigError("verification configs take a single q and a single H");
    v.q = c.qValues.front();
    v.H = c.hValues.front();
    v.N = c.nValues;
    v.reps = c.replications;
    v.settings = {c.seed, c.oversampling, c.workers};
  }
  if (o.q) v.q = o.q;
  if (o.H) v.H = o.H;
  if (!o.N.empty()) v.N = o.N;
  if (o.reps) v.reps = o.reps;
  if (o.m) v.settings.oversampling = *o.m;
  if (o.seed || o.config.empty()) v.settings.seed = seed_or_generate(o);
  return v;
}

int finish_verify(const Options& o, const Verification& v, std::uint64_t seed) {
  if (o.format == "json") {
    std::cout << json{{"name", v.name}, {"pass", v.pass}, {"seed", seed}, {"lines", v.lines}}.dump(2) << '\n';
  } else if (o.format == "csv") {
    const auto tmp = fs::temp_directory_path() / ("hermite_summary_" + std::to_string(seed) + ".csv");
    write_summary_csv(v.runs, tmp);
    std::ifstream in(tmp);
    std::cout << in.rdbuf();
    fs::remove(tmp);
  } else {
    std::cout << (v.pass ? "PASS " : "FAIL ") << v.name << '\n';
    for (const auto& l : v.lines) std::cout << "  " << l << '\n';
  }
  if (!o.out.empty()) {
    fs::create_directories(o.out);
    std::ofstream(fs::path(o.out) / "verification.json")
        << json{{"name", v.name}, {"pass", v.pass}, {"seed", seed}, {"lines", v.lines}}.dump(2) << '\n';
    if (!v.runs.empty()) {
      persist_results(v.runs, fs::path(o.out) / "results.json");
      write_summary_csv(v.runs, fs::path(o.out) / "summary.csv");
    }
  }
  return v.pass ? exitOk : exitVerifyFailed;
}

int run_verify_variance(const Options& o) {
  const auto in = verify_inputs(o, ExperimentKind::varianceScaling);
  VarianceCheck c;
  if (in.q) c.q = *in.q;
  if (in.H) c.H = *in.H;
  if (in.q || in.H) c.oracleCells = {{c.q, c.H}};
  if (!in.N.empty()) c.nValues = in.N;
  if (in.reps) c.reps = *in.reps;
  if (o.tolerance) c.slopeTolerance = *o.tolerance;
  auto v = verify_variance(c, in.settings);
  const auto fourth = verify_fourth_moment(v.runs, {});
  for (const auto& l : fourth.lines) v.lines.push_back("(informational) " + l);
  return finish_verify(o, v, in.settings.seed);
}

int run_verify_limit(const Options& o) {
  const auto in = verify_inputs(o, ExperimentKind::rosenblattLimit);
  LimitCheck c;
  if (in.q) c.q = *in.q;
  if (in.H) c.H = *in.H;
  c.N = single_N(in.N, c.N);
  if (in.reps) c.reps = *in.reps;
  if (o.tolerance) c.ksMax = *o.tolerance;
  return finish_verify(o, verify_limit(c, in.settings), in.settings.seed);
}

int run_verify_estimator(const Options& o) {
  const auto in = verify_inputs(o, ExperimentKind::estimatorLimit);
  EstimatorCheck c;
  if (in.q) c.q = *in.q;
  if (in.H) c.H = *in.H;
  c.N = single_N(in.N, c.N);
  if (in.reps) c.reps = *in.reps;
  if (o.tolerance) c.relTolerance = *o.tolerance;
  return finish_verify(o, verify_estimator(c, in.settings), in.settings.seed);
}

int run_verify_consistency(const Options& o) {
  const auto in = verify_inputs(o, ExperimentKind::consistency);
  ConsistencyCheck c;
  if (in.q) c.q = *in.q;
  if (in.H) c.H = *in.H;
  if (!in.N.empty()) c.nValues = in.N;
  if (in.reps) c.reps = *in.reps;
  if (o.tolerance) c.finalMeanError = *o.tolerance;
  return finish_verify(o, verify_consistency(c, in.settings), in.settings.seed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hermite process simulation, quadratic variations and self-similarity estimation.", "hermite"};
  app.require_subcommand(1, 1);
  app.fallthrough(false);
  app.footer("Run 'hermite <subcommand> --help' for the flags of each subcommand.");
  Options o;

  const auto add_params = [&](CLI::App* s) {
    s->add_option("--H", o.H, "self-similarity index, 1/2 < H < 1");
    s->add_option("--q", o.q, "Hermite order, q >= 1");
  };
  const auto add_format = [&](CLI::App* s, const std::string& dflt) {
    s->add_option("--format", o.format, "output format (default " + dflt + ")")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  auto* constants = app.add_subcommand("constants", "print the derived constants for (H, q)");
  add_params(constants);
  add_format(constants, "json");
  constants->add_option("--out", o.out, "write constants.{json,csv} into this directory");

  auto* simulate = app.add_subcommand("simulate", "simulate one Hermite path on the grid k/N");
  add_params(simulate);
  simulate->add_option("--N", o.N, "number of grid steps")->expected(1);
  simulate->add_option("--m", o.m, "oversampling factor of the driving noise (default 64)");
  simulate->add_option("--seed", o.seed, "random seed; generated and printed to stderr when absent");
  simulate->add_flag("--raw-fgn", o.rawFgn, "dump the driving fGn series (header 'value') instead of the path");
  add_format(simulate, "csv");
  simulate->add_option("--out", o.out, "write path.csv and path.meta.json into this directory");

  auto* estimate = app.add_subcommand("estimate", "quadratic variation report for a 't,value' CSV path");
  estimate->add_option("--in", o.in, "input CSV with header 't,value'")->required();
  add_params(estimate);
  estimate->add_option("--out", o.out, "write estimate.json into this directory");

  auto* oracle = app.add_subcommand("oracle", "exact chaos-term second moments by quadrature");
  add_params(oracle);
  oracle->add_option("--N", o.N, "grid sizes, at most 1024 (default 64 128 256 512 1024)");
  oracle->add_option("--nodes", o.nodes, "quadrature nodes per cell (default 16)");
  add_format(oracle, "csv");
  oracle->add_option("--out", o.out, "write oracle.{csv,json} into this directory");

  const auto add_verify = [&](const std::string& name, const std::string& help, const std::string& tol) {
    auto* s = app.add_subcommand(name, help);
    add_params(s);
    s->add_option("--N", o.N, "grid size(s)");
    s->add_option("--m", o.m, "oversampling factor (default 64)");
    s->add_option("--reps", o.reps, "Monte Carlo replications");
    s->add_option("--seed", o.seed, "random seed; generated and printed to stderr when absent");
    s->add_option("--tolerance", o.tolerance, tol);
    s->add_option("--config", o.config, "experiment config JSON; explicit flags take precedence");
    add_format(s, "text");
    s->add_option("--out", o.out, "write verification.json, results.json and summary.csv into this directory");
    return s;
  };
  auto* vVar = add_verify("verify-variance", "variance scaling against the quadrature oracle and N^{4H-4}",
                          "slope tolerance (default 0.15)");
  auto* vLim = add_verify("verify-limit", "normalized V_N against the Rosenblatt law", "KS threshold (default 0.10)");
  auto* vEst = add_verify("verify-estimator", "normalized estimator error against its limit",
                          "relative moment tolerance (default 0.20)");
  auto* vCon = add_verify("verify-consistency", "mean |H^ - H| shrinking in N",
                          "final mean error threshold (default 0.03)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n";
    const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    std::cerr << sub->help();
    return exitError;
  }

  try {
    if (constants->parsed()) return run_constants(o);
    if (simulate->parsed()) return run_simulate(o);
    if (estimate->parsed()) return run_estimate(o);
    if (oracle->parsed()) return run_oracle(o);
    if (vVar->parsed()) return run_verify_variance(o);
    if (vLim->parsed()) return run_verify_limit(o);
    if (vEst->parsed()) return run_verify_estimator(o);
    if (vCon->parsed()) return run_verify_consistency(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exitError;
  }
  return exitError;
}
