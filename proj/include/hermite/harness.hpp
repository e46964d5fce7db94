#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hermite/stats.hpp"
#include "hermite/variation.hpp"

namespace hermite {

inline constexpr int resultSchemaVersion = 1;

enum class ExperimentKind { consistency, varianceScaling, rosenblattLimit, estimatorLimit, fourthMoment, cltQ1 };

std::string to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(const std::string& name);  // ConfigError on unknown names

struct ExperimentConfig {
  std::vector<int> qValues;
  std::vector<double> hValues;
  std::vector<std::int64_t> nValues;
  int replications = 2;
  std::int64_t oversampling = defaultOversampling;
  std::uint64_t seed = 0;
  ExperimentKind experimentKind = ExperimentKind::consistency;
  unsigned workers = 0;  // 0: all cores
  std::uint64_t memoryBudget = std::uint64_t{4} << 30;
  std::int64_t gridCeiling = defaultGridCeiling;
};

// Throws ConfigError for invalid or over-budget configurations.
void validate(const ExperimentConfig& config);

struct KsComparison {
  double statistic;
  std::size_t sizeA, sizeB;
  bool operator==(const KsComparison&) const = default;
};

struct ExperimentResult {
  ExperimentKind kind;
  int q;
  double H;
  std::int64_t N;
  std::vector<VariationReport> perReplicate;
  std::map<std::string, Moments> summary;
  std::optional<SlopeFit> slope;  // shared by all cells of one (q, H)
  std::optional<KsComparison> ks;
  bool operator==(const ExperimentResult&) const = default;
};

// The per-replicate statistic each kind summarizes (schema version 1):
// consistency abs_error, variance-scaling v_n, rosenblatt-limit
// normalized_v_n, estimator-limit normalized_error, fourth-moment v_n_fourth,
// clt-q1 sqrt_n_v_n.
std::string tracked_statistic(ExperimentKind kind);
double statistic_value(const std::string& name, const VariationReport& report, const HurstParams& params);
std::vector<double> statistic_samples(const ExperimentResult& result, const std::string& name);

// Moments of the tracked statistic, recomputed from perReplicate.
std::map<std::string, Moments> summarize(ExperimentKind kind, int q, double H,
                                         const std::vector<VariationReport>& reports);

// Cells in (q, H, N) order; replicate r of cell c draws from
// {seed, derive_stream_index(c, r)}.
std::vector<ExperimentResult> run_experiment(const ExperimentConfig& config);

// Largest ulp gap in 1 + V_N = N^{2H} S_N over the replicates.
std::int64_t max_identity_ulps(const ExperimentResult& result);

ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& config);

void persist_results(const std::vector<ExperimentResult>& results, const std::filesystem::path& path);
std::vector<ExperimentResult> load_results(const std::filesystem::path& path);
// q,H,N,stat,mean,var,skew,kurt,slope,slope_se,ks with one row per cell.
void write_summary_csv(const std::vector<ExperimentResult>& results, const std::filesystem::path& path);

}  // namespace hermite
