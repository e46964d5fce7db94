#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hermite/harness.hpp"

namespace hermite {

struct RunSettings {
  std::uint64_t seed = 20260915;
  std::int64_t oversampling = defaultOversampling;
  unsigned workers = 0;
};

// Outcome of one verification: the measurements it printed, whether every
// threshold held, the worst ulp gap in 1 + V_N = N^{2H} S_N over the paths it
// drew, and the experiment runs it made (for reuse).
struct Verification {
  explicit Verification(std::string title) : name(std::move(title)) {}

  std::string name;
  bool pass = true;
  std::vector<std::string> lines;
  std::int64_t maxIdentityUlps = 0;
  std::size_t identityPaths = 0;
  std::vector<ExperimentResult> runs;

  void expect(bool ok, const std::string& line);
  void absorb_identity(const std::vector<ExperimentResult>& results);
};

struct FgnCovarianceCheck {
  std::vector<double> hValues{0.5, 0.7, 0.9};
  std::int64_t n = 1024;
  int maxLag = 5;
  int reps = 10000;
  double standardErrors = 3.0;
};
Verification verify_fgn_covariance(const FgnCovarianceCheck& c, const RunSettings& s);

struct IncrementLawCheck {
  int q = 2;
  double H = 0.8;
  std::int64_t N = 128;
  int reps = 2000;
  std::vector<std::int64_t> spans{1, 16, 64};  // in grid steps
  double relTolerance = 0.05;
};
Verification verify_increment_law(const IncrementLawCheck& c, const RunSettings& s);

struct ConsistencyCheck {
  int q = 2;
  double H = 0.8;
  std::vector<std::int64_t> nValues{256, 1024, 4096};
  int reps = 500;
  double finalMeanError = 0.03;
};
Verification verify_consistency(const ConsistencyCheck& c, const RunSettings& s);

struct VarianceCheck {
  std::vector<std::pair<int, double>> oracleCells{{2, 0.8}, {3, 0.7}};
  std::int64_t oracleN = 512;
  double ratioLow = 0.8, ratioHigh = 1.2;
  int q = 2;
  double H = 0.8;
  std::vector<std::int64_t> nValues{256, 1024, 4096};
  int reps = 2000;
  double slopeTolerance = 0.15;
};
Verification verify_variance(const VarianceCheck& c, const RunSettings& s);

struct DominanceCheck {
  int q = 3;
  double H = 0.7;
  std::int64_t smallN = 64, largeN = 1024;
  double minDecrease = 2.0;
};
Verification verify_dominance(const DominanceCheck& c);

struct LimitCheck {
  int q = 2;
  double H = 0.8;
  std::int64_t N = 4096;
  int reps = 1000;
  double ksMax = 0.10;
  int crossReps = 2000;
  int gridSize = 1024;
  double crossKsMax = 0.08;
};
Verification verify_limit(const LimitCheck& c, const RunSettings& s);

// Mean compared on the scale of the reference standard deviation: the
// reference law is centered, so a relative tolerance on its mean is void.
struct EstimatorCheck {
  int q = 2;
  double H = 0.8;
  std::int64_t N = 8192;
  int reps = 1000;
  double relTolerance = 0.20;
};
Verification verify_estimator(const EstimatorCheck& c, const RunSettings& s);

struct GaussianRegimeCheck {
  double H = 0.6;
  std::int64_t N = 4096;
  int reps = 2000;
  double maxSkewness = 0.15, maxExcessKurtosis = 0.3;
};
Verification verify_gaussian_regime(const GaussianRegimeCheck& c, const RunSettings& s);

// Uses variance-scaling runs (for example those of verify_variance).
struct FourthMomentCheck {
  double slopeTolerance = 0.2;
};
Verification verify_fourth_moment(const std::vector<ExperimentResult>& varianceRuns, const FourthMomentCheck& c);

struct IdentityCheck {
  std::int64_t maxUlps = 8;
};
Verification verify_identity(const std::vector<const Verification*>& checks, const IdentityCheck& c);

}  // namespace hermite
