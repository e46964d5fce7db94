#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "hermite/errors.hpp"
#include "hermite/harness.hpp"
#include "json.hpp"

namespace hermite {

using nlohmann::json;

namespace {

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_double(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

json to_json(const VariationReport& r) {
  return {{"N", r.N},
          {"v_n", r.vN},
          {"s_n", r.sN},
          {"h_hat", r.hHat},
          {"normalized_v_n", optional_json(r.normalizedVN)},
          {"normalized_error", r.normalizedError},
          {"true_h", optional_json(r.trueH)}};
}

VariationReport report_from_json(const json& j) {
  VariationReport r;
  r.N = j.at("N").get<std::int64_t>();
  r.vN = j.at("v_n").get<double>();
  r.sN = j.at("s_n").get<double>();
  r.hHat = j.at("h_hat").get<double>();
  r.normalizedVN = optional_double(j.at("normalized_v_n"));
  r.normalizedError = j.at("normalized_error").get<double>();
  r.trueH = optional_double(j.at("true_h"));
  return r;
}

json to_json(const Moments& m) {
  return {{"mean", m.mean},
          {"variance", m.variance},
          {"skewness", optional_json(m.skewness)},
          {"excess_kurtosis", optional_json(m.excessKurtosis)}};
}

Moments moments_from_json(const json& j) {
  return Moments{j.at("mean").get<double>(), j.at("variance").get<double>(), optional_double(j.at("skewness")),
                 optional_double(j.at("excess_kurtosis"))};
}

json to_json(const ExperimentResult& r) {
  json reps = json::array();
  for (const auto& rep : r.perReplicate) reps.push_back(to_json(rep));
  json summary = json::object();
  for (const auto& [name, m] : r.summary) summary[name] = to_json(m);
  json j{{"kind", to_string(r.kind)}, {"q", r.q}, {"H", r.H}, {"N", r.N}, {"per_replicate", reps}, {"summary", summary}};
  j["slope"] = r.slope ? json{{"slope", r.slope->slope}, {"standard_error", r.slope->standardError}} : json(nullptr);
  j["ks"] = r.ks ? json{{"statistic", r.ks->statistic}, {"size_a", r.ks->sizeA}, {"size_b", r.ks->sizeB}}
                 : json(nullptr);
  return j;
}

ExperimentResult result_from_json(const json& j) {
  ExperimentResult r{parse_experiment_kind(j.at("kind").get<std::string>()),
                     j.at("q").get<int>(),
                     j.at("H").get<double>(),
                     j.at("N").get<std::int64_t>(),
                     {},
                     {},
                     std::nullopt,
                     std::nullopt};
  for (const auto& rep : j.at("per_replicate")) r.perReplicate.push_back(report_from_json(rep));
  for (const auto& [name, m] : j.at("summary").items()) r.summary[name] = moments_from_json(m);
  if (const auto& s = j.at("slope"); !s.is_null())
    r.slope = SlopeFit{s.at("slope").get<double>(), s.at("standard_error").get<double>()};
  if (const auto& k = j.at("ks"); !k.is_null())
    r.ks = KsComparison{k.at("statistic").get<double>(), k.at("size_a").get<std::size_t>(),
                        k.at("size_b").get<std::size_t>()};
  return r;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_optional(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

}  // namespace

ExperimentConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known{"q_values",  "h_values",        "n_values",  "replications",
                                           "oversampling", "seed",          "experiment_kind", "workers",
                                           "memory_budget", "grid_ceiling"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) throw ConfigError("unknown config key '" + key + "'");
  ExperimentConfig c;
  try {
    c.qValues = j.at("q_values").get<std::vector<int>>();
    c.hValues = j.at("h_values").get<std::vector<double>>();
    c.nValues = j.at("n_values").get<std::vector<std::int64_t>>();
    c.replications = j.at("replications").get<int>();
    c.experimentKind = parse_experiment_kind(j.at("experiment_kind").get<std::string>());
    c.oversampling = j.value("oversampling", c.oversampling);
    c.seed = j.value("seed", c.seed);
    c.workers = j.value("workers", c.workers);
    c.memoryBudget = j.value("memory_budget", c.memoryBudget);
    c.gridCeiling = j.value("grid_ceiling", c.gridCeiling);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config field: ") + e.what());
  }
  validate(c);
  return c;
}

std::string config_to_json(const ExperimentConfig& c) {
  const json j{{"q_values", c.qValues},         {"h_values", c.hValues},
               {"n_values", c.nValues},         {"replications", c.replications},
               {"oversampling", c.oversampling}, {"seed", c.seed},
               {"experiment_kind", to_string(c.experimentKind)}, {"workers", c.workers},
               {"memory_budget", c.memoryBudget}, {"grid_ceiling", c.gridCeiling}};
  return j.dump(2);
}

void persist_results(const std::vector<ExperimentResult>& results, const std::filesystem::path& path) {
  json arr = json::array();
  for (const auto& r : results) arr.push_back(to_json(r));
  const json doc{{"schema_version", resultSchemaVersion}, {"results", arr}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump() << '\n';
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::vector<ExperimentResult> load_results(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw std::runtime_error("malformed results file " + path.string() + ": " + e.what());
  }
  const auto version = doc.value("schema_version", -1);
  if (version != resultSchemaVersion)
    throw SchemaVersionError("results schema version " + std::to_string(version) + " is not supported (expected " +
                             std::to_string(resultSchemaVersion) + ")");
  std::vector<ExperimentResult> out;
  for (const auto& r : doc.at("results")) out.push_back(result_from_json(r));
  return out;
}

void write_summary_csv(const std::vector<ExperimentResult>& results, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "q,H,N,stat,mean,var,skew,kurt,slope,slope_se,ks\n";
  for (const auto& r : results) {
    const std::string stat = tracked_statistic(r.kind);
    const auto& m = r.summary.at(stat);
    out << r.q << ',' << format_double(r.H) << ',' << r.N << ',' << stat << ',' << format_double(m.mean) << ','
        << format_double(m.variance) << ',' << format_optional(m.skewness) << ',' << format_optional(m.excessKurtosis)
        << ',' << (r.slope ? format_double(r.slope->slope) : "") << ','
        << (r.slope ? format_double(r.slope->standardError) : "") << ','
        << (r.ks ? format_double(r.ks->statistic) : "") << '\n';
  }
}

}  // namespace hermite
