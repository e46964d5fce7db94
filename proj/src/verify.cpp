#include "hermite/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdarg>
#include <cstdio>

#include "hermite/fgn.hpp"
#include "hermite/oracle.hpp"
#include "hermite/parallel.hpp"
#include "hermite/random.hpp"
#include "hermite/simulator.hpp"

namespace hermite {

namespace {

std::string format(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return buf;
}

unsigned workers_of(const RunSettings& s) { return s.workers ? s.workers : default_workers(); }

ExperimentConfig base_config(const RunSettings& s, ExperimentKind kind, int q, double H,
                             std::vector<std::int64_t> nValues, int reps) {
  ExperimentConfig c;
  c.qValues = {q};
  c.hValues = {H};
  c.nValues = std::move(nValues);
  c.replications = reps;
  c.oversampling = s.oversampling;
  c.seed = s.seed;
  c.experimentKind = kind;
  c.workers = s.workers;
  return c;
}

double mean_of(const std::vector<double>& x) { return stable_sum(x) / static_cast<double>(x.size()); }

}  // namespace

void Verification::expect(bool ok, const std::string& line) {
  pass = pass && ok;
  lines.push_back((ok ? "ok   " : "FAIL ") + line);
}

void Verification::absorb_identity(const std::vector<ExperimentResult>& results) {
  for (const auto& r : results) {
    maxIdentityUlps = std::max(maxIdentityUlps, max_identity_ulps(r));
    identityPaths += r.perReplicate.size();
  }
}

Verification verify_fgn_covariance(const FgnCovarianceCheck& c, const RunSettings& s) {
  Verification v{"fgn autocovariance"};
  for (std::size_t h = 0; h < c.hValues.size(); ++h) {
    const double H = c.hValues[h];
    const CirculantFgn gen(H, c.n);
    const int lags = c.maxLag + 1;
    const auto acov = parallel_map(static_cast<std::size_t>(c.reps), workers_of(s), [&](std::size_t r) {
      const auto x = gen.sample(RandomStream{s.seed, derive_stream_index(h, r)}).values;
      std::vector<double> out(lags);
      for (int k = 0; k < lags; ++k) {
        const Eigen::Index m = x.size() - k;
        out[k] = x.head(m).dot(x.tail(m)) / static_cast<double>(m);
      }
      return out;
    });
    for (int k = 0; k < lags; ++k) {
      std::vector<double> xs(c.reps);
      for (int r = 0; r < c.reps; ++r) xs[r] = acov[r][k];
      const auto m = moment_report(xs);
      const double se = std::sqrt(m.variance / c.reps);
      const double target = fgn_autocovariance(H, k);
      const double z = std::abs(m.mean - target) / se;
      v.expect(z <= c.standardErrors,
               format("H=%.2f lag=%d mean=%.6f target=%.6f |z|=%.2f (<= %.1f)", H, k, m.mean, target, z,
                      c.standardErrors));
    }
  }
  return v;
}

Verification verify_increment_law(const IncrementLawCheck& c, const RunSettings& s) {
  Verification v{"increment law"};
  const auto p = derive_params(c.H, c.q);
  const PathSimulator sim(p, c.N, s.oversampling);
  const std::size_t spans = c.spans.size();
  struct Draw {
    std::vector<double> meanSquares;
    VariationReport report;
  };
  const auto draws = parallel_map(static_cast<std::size_t>(c.reps), workers_of(s), [&](std::size_t r) {
    const auto path = sim.simulate(RandomStream{s.seed, derive_stream_index(0, r)});
    Draw d{std::vector<double>(spans), variation_report(path)};
    for (std::size_t k = 0; k < spans; ++k) {
      const std::int64_t span = c.spans[k];
      std::vector<double> sq;
      for (std::int64_t j = 0; j + span <= c.N; ++j) {
        const double dz = path.values(j + span) - path.values(j);
        sq.push_back(dz * dz);
      }
      d.meanSquares[k] = mean_of(sq);
    }
    return d;
  });
  for (const auto& d : draws) {
    const double rhs = std::pow(static_cast<double>(c.N), 2.0 * c.H) * d.report.sN;
    v.maxIdentityUlps = std::max(v.maxIdentityUlps, ulp_distance(1.0 + d.report.vN, rhs));
    ++v.identityPaths;
  }
  for (std::size_t k = 0; k < spans; ++k) {
    std::vector<double> xs;
    for (const auto& d : draws) xs.push_back(d.meanSquares[k]);
    const auto m = moment_report(xs);
    const double target = std::pow(static_cast<double>(c.spans[k]) / c.N, 2.0 * c.H);
    const double rel = m.mean / target - 1.0;
    v.expect(std::abs(rel) <= c.relTolerance,
             format("span=%lld/%lld E[dZ^2]=%.6f target=%.6f rel=%+.4f (se %.4f, tol %.2f)",
                    static_cast<long long>(c.spans[k]), static_cast<long long>(c.N), m.mean, target, rel,
                    std::sqrt(m.variance / c.reps) / target, c.relTolerance));
  }
  return v;
}

Verification verify_consistency(const ConsistencyCheck& c, const RunSettings& s) {
  Verification v{"consistency"};
  v.runs = run_experiment(base_config(s, ExperimentKind::consistency, c.q, c.H, c.nValues, c.reps));
  v.absorb_identity(v.runs);
  double prev = INFINITY;
  for (const auto& r : v.runs) {
    const double e = r.summary.at("abs_error").mean;
    v.expect(e < prev, format("N=%lld mean|H^-H|=%.5f strictly below previous", static_cast<long long>(r.N), e));
    prev = e;
  }
  v.expect(prev < c.finalMeanError, format("final mean|H^-H|=%.5f < %.3f", prev, c.finalMeanError));
  return v;
}

Verification verify_variance(const VarianceCheck& c, const RunSettings& s) {
  Verification v{"variance scaling"};
  for (const auto& [q, H] : c.oracleCells) {
    const auto p = derive_params(H, q);
    const double asym = c1_constant(p) * std::pow(static_cast<double>(c.oracleN), 2.0 * (2.0 * p.hPrime - 2.0));
    const double ratio = expected_T2_squared(p, c.oracleN) / asym;
    v.expect(ratio >= c.ratioLow && ratio <= c.ratioHigh,
             format("oracle q=%d H=%.2f N=%lld E[T2^2]/(c1 N^(4H'-4))=%.5f in [%.2f, %.2f]", q, H,
                    static_cast<long long>(c.oracleN), ratio, c.ratioLow, c.ratioHigh));
  }
  v.runs = run_experiment(base_config(s, ExperimentKind::varianceScaling, c.q, c.H, c.nValues, c.reps));
  v.absorb_identity(v.runs);
  const auto p = derive_params(c.H, c.q);
  const double expected = 2.0 * (2.0 * p.hPrime - 2.0);
  for (const auto& r : v.runs)
    v.lines.push_back(format("     N=%lld Var(V_N)=%.6g", static_cast<long long>(r.N), r.summary.at("v_n").variance));
  const auto& fit = *v.runs.front().slope;
  v.expect(std::abs(fit.slope - expected) <= c.slopeTolerance,
           format("Monte Carlo slope %.4f (se %.4f) vs %.4f, tol %.2f", fit.slope, fit.standardError, expected,
                  c.slopeTolerance));
  return v;
}

Verification verify_dominance(const DominanceCheck& c) {
  Verification v{"chaos-term dominance"};
  const auto p = derive_params(c.H, c.q);
  const double t2Small = expected_T2_squared(p, c.smallN), t2Large = expected_T2_squared(p, c.largeN);
  for (int k = 0; k <= c.q - 2; ++k) {
    const double rs = expected_T2q2k_squared_bound(p, k, c.smallN) / t2Small;
    const double rl = expected_T2q2k_squared_bound(p, k, c.largeN) / t2Large;
    v.expect(rs / rl >= c.minDecrease,
             format("k=%d bound/E[T2^2]: %.5g at N=%lld, %.5g at N=%lld, decrease %.3f (>= %.1f)", k, rs,
                    static_cast<long long>(c.smallN), rl, static_cast<long long>(c.largeN), rs / rl, c.minDecrease));
  }
  return v;
}

Verification verify_limit(const LimitCheck& c, const RunSettings& s) {
  Verification v{"Rosenblatt limit"};
  v.runs = run_experiment(base_config(s, ExperimentKind::rosenblattLimit, c.q, c.H, {c.N}, c.reps));
  v.absorb_identity(v.runs);
  const auto& ks = *v.runs.front().ks;
  v.expect(ks.statistic <= c.ksMax, format("KS(normalized V_N at N=%lld, marginal) = %.4f (%zu vs %zu) <= %.2f",
                                           static_cast<long long>(c.N), ks.statistic, ks.sizeA, ks.sizeB, c.ksMax));

  const double hSecond = derive_params(c.H, c.q).hSecond;
  const RosenblattQuadraticForm form(hSecond, c.gridSize);
  const auto forms = parallel_map(static_cast<std::size_t>(c.crossReps), workers_of(s), [&](std::size_t r) {
    return form.sample(RandomStream{s.seed, derive_stream_index(0xc0ffee, r)});
  });
  const auto marginal = simulate_rosenblatt_marginal(hSecond, c.crossReps, RandomStream{s.seed, mix64(0xbeef)},
                                                     defaultRosenblattOversampling, workers_of(s));
  const double cross = ks_two_sample(forms, marginal);
  v.expect(cross <= c.crossKsMax, format("cross-oracle KS(quadratic form G=%d, marginal) = %.4f (%d vs %d) <= %.2f",
                                         c.gridSize, cross, c.crossReps, c.crossReps, c.crossKsMax));
  return v;
}

Verification verify_estimator(const EstimatorCheck& c, const RunSettings& s) {
  Verification v{"estimator limit"};
  v.runs = run_experiment(base_config(s, ExperimentKind::estimatorLimit, c.q, c.H, {c.N}, c.reps));
  v.absorb_identity(v.runs);
  const auto p = derive_params(c.H, c.q);
  const auto errors = statistic_samples(v.runs.front(), "normalized_error");
  auto ref = simulate_rosenblatt_marginal(p.hSecond, c.reps, RandomStream{s.seed, mix64(0xe57)},
                                          defaultRosenblattOversampling, workers_of(s));
  const double scale = combinatorial_coefficient(c.q, c.q - 1) * std::sqrt(c1_constant(p));
  for (auto& x : ref) x *= scale;
  const auto me = moment_report(errors), mr = moment_report(ref);
  const double sdRef = std::sqrt(mr.variance);
  const double meanGap = std::abs(me.mean - mr.mean) / sdRef;
  v.expect(meanGap <= c.relTolerance,
           format("mean %.4f vs reference %.4f: gap %.4f reference sd (<= %.2f)", me.mean, mr.mean, meanGap,
                  c.relTolerance));
  const double varRel = me.variance / mr.variance - 1.0;
  v.expect(std::abs(varRel) <= c.relTolerance, format("variance %.4f vs reference %.4f: rel %+.4f (tol %.2f)",
                                                      me.variance, mr.variance, varRel, c.relTolerance));
  v.lines.push_back(format("     KS against the scaled reference %.4f", v.runs.front().ks->statistic));
  return v;
}

Verification verify_gaussian_regime(const GaussianRegimeCheck& c, const RunSettings& s) {
  Verification v{"Gaussian regime"};
  RunSettings one = s;
  one.oversampling = 1;  // q = 1 is fbm itself: no aggregation needed
  v.runs = run_experiment(base_config(one, ExperimentKind::cltQ1, 1, c.H, {c.N}, c.reps));
  v.absorb_identity(v.runs);
  const auto& m = v.runs.front().summary.at("sqrt_n_v_n");
  v.expect(m.skewness && std::abs(*m.skewness) < c.maxSkewness,
           format("skewness of sqrt(N) V_N = %+.4f (|.| < %.2f)", m.skewness.value_or(NAN), c.maxSkewness));
  v.expect(m.excessKurtosis && std::abs(*m.excessKurtosis) < c.maxExcessKurtosis,
           format("excess kurtosis = %+.4f (|.| < %.2f)", m.excessKurtosis.value_or(NAN), c.maxExcessKurtosis));
  return v;
}

Verification verify_fourth_moment(const std::vector<ExperimentResult>& runs, const FourthMomentCheck& c) {
  Verification v{"fourth moment"};
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : runs) {
    const auto p = derive_params(r.H, r.q);
    const double m4 = mean_of(statistic_samples(r, "v_n_fourth"));
    const double logN = std::log(static_cast<double>(r.N));
    pts.emplace_back(logN, std::log(m4) - 2.0 * (4.0 * p.hPrime - 4.0) * logN);
    v.lines.push_back(format("     N=%lld E[V_N^4]=%.6g", static_cast<long long>(r.N), m4));
  }
  const auto fit = regress_scaling(pts);
  v.expect(std::abs(fit.slope) <= c.slopeTolerance,
           format("slope of log E[V_N^4] N^(8-8H') = %+.4f (se %.4f), |.| <= %.2f", fit.slope, fit.standardError,
                  c.slopeTolerance));
  return v;
}

Verification verify_identity(const std::vector<const Verification*>& checks, const IdentityCheck& c) {
  Verification v{"variation identity"};
  std::int64_t worst = 0;
  std::size_t paths = 0;
  for (const auto* ch : checks) {
    worst = std::max(worst, ch->maxIdentityUlps);
    paths += ch->identityPaths;
  }
  v.maxIdentityUlps = worst;
  v.expect(worst <= c.maxUlps, format("max ulp gap in 1 + V_N = N^(2H) S_N: %lld (<= %lld) over %zu paths",
                                      static_cast<long long>(worst), static_cast<long long>(c.maxUlps), paths));
  return v;
}

}  // namespace hermite
