#pragma once

// Experiment orchestration: instance construction from a named source, the
// estimator grid runner, trace plotting and the guarded verification suites.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "polysub/io.hpp"
#include "polysub/optimizer.hpp"
#include "polysub/problems.hpp"

namespace polysub {

// Environment variable naming the default output root.
inline constexpr const char* kOutputRootEnv = "POLYSUB_OUT";

struct InstanceSource {
  // smsynth | imsynth1 | imsynth2 | flsynth1 | imrandom | file | epinions | movielens
  std::string generator = "smsynth";
  std::uint64_t seed = 1;
  Json params = Json::object();  // generator parameter overrides
  std::string path;              // instance JSON, SNAP edge list or ratings.dat
  std::string movies_path;       // movies.dat for movielens

  Json to_json() const;
  static InstanceSource from_json(const Json& j);
};

Instance make_instance(const InstanceSource& src);

enum class RoundingMode { None, Pipage, Swap };
std::string to_string(RoundingMode mode);
RoundingMode rounding_mode_from_string(const std::string& s);

struct ExperimentConfig {
  InstanceSource source;
  std::vector<EstimatorTag> grid;
  double gamma = 0.01;
  std::size_t record_every = 10;
  RoundingMode rounding = RoundingMode::None;
  unsigned pipage_order = 3;      // estimator used to pipage-round sampling runs
  std::uint64_t seed = 0;         // base for per-cell sampler seeds and swap rounding
  std::filesystem::path output_dir = "out";
  bool write_files = true;
  std::size_t oracle_guard = 16;  // exact utility when N <= guard
  std::uint64_t eval_samples = 10000;
  std::uint64_t eval_seed = 0x5eedULL;
  unsigned eval_control_order = 2;  // 0 turns the control variate off
  bool include_build = false;     // add estimator construction to `seconds`

  Json to_json() const;
  // Missing fields keep their defaults. validate() rejects an empty grid.
  static ExperimentConfig from_json(const Json& j);
  void validate() const;
};

struct RunRecord {
  std::string estimator;
  bool ok = false;
  std::string error;
  double f = 0.0;  // utility of the final fractional point
  double seconds = 0.0;
  double loop_seconds = 0.0;
  double gradient_seconds = 0.0;
  double build_seconds = 0.0;
  double err = 0.0;
  std::optional<double> rounded_f;
  std::vector<double> y;
  BinaryVector rounded;
  GreedyTrace trace;
};

struct RunSummary {
  std::string instance;
  std::vector<RunRecord> runs;
  double f_star = 0.0;

  // {instance, runs:[{estimator, f, seconds, err, ...}], f_star}
  Json to_json() const;
  static RunSummary from_json(const Json& j);
};

// (f - f*) / |f*|, and f - f* when f* is 0.
double relative_error(double f, double f_star);

// Per-cell sampler seed for an estimator tag.
std::uint64_t cell_seed(std::uint64_t base, const EstimatorTag& tag);

// Utility used for err. The exhaustive relaxation when N <= guard. Otherwise
// the exact relaxation of the order-L truncation f_L plus a fixed-seed
// Monte-Carlo mean of f - f_L (plain Monte-Carlo when the control order is 0).
class UtilityEvaluator {
 public:
  UtilityEvaluator(const Instance& inst, const ExperimentConfig& cfg);
  double operator()(std::span<const double> y) const;

 private:
  const Instance* inst_;
  ExperimentConfig cfg_;
  unsigned order_ = 0;
  std::optional<SampleEstimator> sampler_;
  std::optional<simd::CompiledPoly> control_;
};

double utility(const Instance& inst, std::span<const double> y, const ExperimentConfig& cfg);

// Runs every grid cell; a failing cell is recorded and does not stop the
// others. Writes <out>/<instance>/<estimator>/trace.csv and
// <out>/<instance>/summary.json when cfg.write_files.
RunSummary run_experiment(const Instance& inst, const ExperimentConfig& cfg);
RunSummary run_experiment(const ExperimentConfig& cfg);

// Trace CSV text with the wall-clock column removed.
std::string strip_wall_clock(const std::string& csv);

// --- plotting ---------------------------------------------------------------

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotOptions {
  bool loglog = false;
  double width = 640;
  double height = 400;
  std::optional<double> f_star;  // plot (f* - estimate) / |f*| instead of the estimate
};

inline constexpr double kLogFloor = 1e-12;

struct SvgPlot {
  std::string svg;
  std::vector<std::string> warnings;
};

// x = wall seconds, y = estimate (or relative gap).
PlotSeries series_from_trace(const std::string& label, const GreedyTrace& trace, const PlotOptions& opts);
SvgPlot render_svg(const std::vector<PlotSeries>& series, const PlotOptions& opts);

// --- verification -------------------------------------------------------------

struct VerifyConfig {
  std::string problem = "sm";  // sm | im | fl
  std::size_t ground = 10;
  std::uint64_t seed = 7;
  std::vector<unsigned> orders{1, 2, 3, 4, 5, 6};
  std::size_t points = 20;
  std::size_t guard = 16;
  std::uint64_t sampler_samples = 20000;
};

struct VerifyLine {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct VerifyReport {
  std::string instance;
  std::vector<VerifyLine> lines;
  bool all_pass() const;
  std::string to_text() const;
};

// Small seeded instance for the named family with the given ground size.
Instance verification_instance(const std::string& problem, std::size_t ground, std::uint64_t seed);

// Throws GuardError when cfg.ground exceeds cfg.guard.
VerifyReport verify(const VerifyConfig& cfg);

}  // namespace polysub
