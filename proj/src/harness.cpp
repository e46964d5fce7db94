#include "hermite/harness.hpp"

#include <algorithm>
#include <cmath>

#include "hermite/errors.hpp"
#include "hermite/parallel.hpp"
#include "hermite/random.hpp"
#include "hermite/simulator.hpp"

namespace hermite {

namespace {

const std::vector<std::pair<ExperimentKind, std::string>> kindNames{
    {ExperimentKind::consistency, "consistency"},         {ExperimentKind::varianceScaling, "variance-scaling"},
    {ExperimentKind::rosenblattLimit, "rosenblatt-limit"}, {ExperimentKind::estimatorLimit, "estimator-limit"},
    {ExperimentKind::fourthMoment, "fourth-moment"},      {ExperimentKind::cltQ1, "clt-q1"}};

bool needs_limit_constant(ExperimentKind k) {
  return k == ExperimentKind::rosenblattLimit || k == ExperimentKind::estimatorLimit;
}

// per-worker transient storage of one path draw: half spectrum, real
// transform, Hermite transform and the path itself, with slack
std::uint64_t memory_estimate(const ExperimentConfig& c, unsigned workers) {
  std::uint64_t worst = 0;
  for (auto N : c.nValues) {
    const auto n = static_cast<std::uint64_t>(N) * static_cast<std::uint64_t>(c.oversampling);
    worst = std::max(worst, 24 * n + workers * 80 * n);
  }
  return worst + static_cast<std::uint64_t>(c.replications) * c.nValues.size() * sizeof(VariationReport) * 2;
}

std::uint64_t reference_stream_index(std::uint64_t cell) { return mix64(cell ^ 0x5851f42d4c957f2dULL); }

}  // namespace

std::string to_string(ExperimentKind kind) {
  for (const auto& [k, name] : kindNames)
    if (k == kind) return name;
  throw ConfigError("unknown experiment kind");
}

ExperimentKind parse_experiment_kind(const std::string& name) {
  for (const auto& [k, n] : kindNames)
    if (n == name) return k;
  throw ConfigError("unknown experiment kind '" + name + "'");
}

void validate(const ExperimentConfig& c) {
  if (c.qValues.empty() || c.hValues.empty() || c.nValues.empty())
    throw ConfigError("q_values, h_values and n_values must be nonempty");
  if (c.replications < 2) throw ConfigError("replications must be at least 2");
  if (c.oversampling < 1) throw ConfigError("oversampling must be positive");
  for (std::size_t i = 0; i < c.nValues.size(); ++i) {
    const auto N = c.nValues[i];
    if (N < 2 || (N & (N - 1)) != 0) throw ConfigError("n_values must be powers of two, at least 2");
    if (i > 0 && N <= c.nValues[i - 1]) throw ConfigError("n_values must be strictly increasing");
    if (N > c.gridCeiling / c.oversampling)
      throw ConfigError("N * oversampling = " + std::to_string(N) + " * " + std::to_string(c.oversampling) +
                        " exceeds the grid ceiling " + std::to_string(c.gridCeiling));
  }
  for (int q : c.qValues)
    for (double H : c.hValues) {
      HurstParams p;
      try {
        p = derive_params(H, q);
      } catch (const ParameterDomainError& e) {
        throw ConfigError(e.what());
      }
      if (needs_limit_constant(c.experimentKind) && !(4.0 * p.hPrime - 3.0 > 0.0))
        throw ConfigError(to_string(c.experimentKind) + " needs 4H' - 3 > 0");
      if (c.experimentKind == ExperimentKind::cltQ1 && q != 1) throw ConfigError("clt-q1 needs q = 1");
    }
  const unsigned workers = c.workers ? c.workers : default_workers();
  if (memory_estimate(c, workers) > c.memoryBudget)
    throw ConfigError("estimated memory " + std::to_string(memory_estimate(c, workers)) + " bytes exceeds the budget " +
                      std::to_string(c.memoryBudget));
}

std::string tracked_statistic(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::consistency: return "abs_error";
    case ExperimentKind::varianceScaling: return "v_n";
    case ExperimentKind::rosenblattLimit: return "normalized_v_n";
    case ExperimentKind::estimatorLimit: return "normalized_error";
    case ExperimentKind::fourthMoment: return "v_n_fourth";
    case ExperimentKind::cltQ1: return "sqrt_n_v_n";
  }
  throw ConfigError("unknown experiment kind");
}

double statistic_value(const std::string& name, const VariationReport& r, const HurstParams& p) {
  if (name == "v_n") return r.vN;
  if (name == "h_hat") return r.hHat;
  if (name == "abs_error") return std::abs(r.hHat - p.H);
  if (name == "normalized_error") return r.normalizedError;
  if (name == "sqrt_n_v_n") return std::sqrt(static_cast<double>(r.N)) * r.vN;
  if (name == "v_n_fourth") return std::pow(r.vN, 4);
  if (name == "normalized_v_n") {
    if (!r.normalizedVN) throw RegimeError("normalized V_N is undefined for H' <= 3/4");
    return *r.normalizedVN;
  }
  throw ConfigError("unknown statistic '" + name + "'");
}

std::vector<double> statistic_samples(const ExperimentResult& res, const std::string& name) {
  const auto p = derive_params(res.H, res.q);
  std::vector<double> out;
  out.reserve(res.perReplicate.size());
  for (const auto& r : res.perReplicate) out.push_back(statistic_value(name, r, p));
  return out;
}

std::map<std::string, Moments> summarize(ExperimentKind kind, int q, double H,
                                         const std::vector<VariationReport>& reports) {
  const auto p = derive_params(H, q);
  const std::string name = tracked_statistic(kind);
  std::vector<double> xs;
  xs.reserve(reports.size());
  for (const auto& r : reports) xs.push_back(statistic_value(name, r, p));
  return {{name, moment_report(xs)}};
}

std::vector<ExperimentResult> run_experiment(const ExperimentConfig& config) {
  validate(config);
  const unsigned workers = config.workers ? config.workers : default_workers();
  const std::string stat = tracked_statistic(config.experimentKind);
  std::vector<ExperimentResult> out;
  std::uint64_t cell = 0;
  for (int q : config.qValues)
    for (double H : config.hValues) {
      const auto p = derive_params(H, q);
      const std::size_t first = out.size();
      for (auto N : config.nValues) {
        const PathSimulator sim(p, N, config.oversampling, config.gridCeiling);
        auto reports = parallel_map(static_cast<std::size_t>(config.replications), workers, [&](std::size_t r) {
          return variation_report(sim.simulate(RandomStream{config.seed, derive_stream_index(cell, r)}));
        });
        ExperimentResult res{config.experimentKind, q, H, N, std::move(reports), {}, std::nullopt, std::nullopt};
        res.summary = summarize(config.experimentKind, q, H, res.perReplicate);
        if (needs_limit_constant(config.experimentKind)) {
          auto ref = simulate_rosenblatt_marginal(p.hSecond, config.replications,
                                                  RandomStream{config.seed, reference_stream_index(cell)},
                                                  defaultRosenblattOversampling, workers);
          if (config.experimentKind == ExperimentKind::estimatorLimit) {
            const double scale = combinatorial_coefficient(q, q - 1) * std::sqrt(c1_constant(p));
            for (auto& x : ref) x *= scale;
          }
          const auto xs = statistic_samples(res, stat);
          res.ks = KsComparison{ks_two_sample(xs, ref), xs.size(), ref.size()};
        }
        out.push_back(std::move(res));
        ++cell;
      }
      const bool scaling =
          config.experimentKind == ExperimentKind::varianceScaling || config.experimentKind == ExperimentKind::fourthMoment;
      if (scaling && config.nValues.size() >= 3) {
        std::vector<std::pair<double, double>> pts;
        for (std::size_t i = first; i < out.size(); ++i) {
          const double logN = std::log(static_cast<double>(out[i].N));
          const auto& m = out[i].summary.at(stat);
          if (config.experimentKind == ExperimentKind::varianceScaling)
            pts.emplace_back(logN, std::log(m.variance));
          else
            pts.emplace_back(logN, std::log(m.mean) - 2.0 * (4.0 * p.hPrime - 4.0) * logN);
        }
        const auto fit = regress_scaling(pts);
        for (std::size_t i = first; i < out.size(); ++i) out[i].slope = fit;
      }
    }
  return out;
}

std::int64_t max_identity_ulps(const ExperimentResult& res) {
  std::int64_t worst = 0;
  for (const auto& r : res.perReplicate)
    worst = std::max(worst, ulp_distance(1.0 + r.vN, std::pow(static_cast<double>(r.N), 2.0 * res.H) * r.sN));
  return worst;
}

}  // namespace hermite
