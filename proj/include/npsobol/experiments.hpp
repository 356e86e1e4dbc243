#pragma once

#include "npsobol/bandwidth.hpp"
#include "npsobol/bootstrap.hpp"
#include "npsobol/models.hpp"
#include "npsobol/sobol.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace npsobol {

struct ExperimentConfig {
  Model model = GSobolModel{GSobolSpec::standard()};
  std::vector<std::size_t> n_list{100, 200, 300};
  std::size_t replications = 100;
  BootstrapConfig boot{};
  std::vector<int> kernel_orders{2, 4};
  std::vector<Method> methods{Method::CV, Method::Boot};
  // 0-based input indices to estimate; empty means all.
  std::vector<std::size_t> variables;
  SearchOptions search{};
  std::uint64_t seed = 20180101;
  unsigned threads = 1;
  // Sample size of the Monte-Carlo reference when the model has no closed form.
  std::size_t reference_samples = 100000;

  void validate() const;

  static ExperimentConfig fast(Model model);
  static ExperimentConfig full(Model model);
};

/// One estimate from one replication.
struct RawResult {
  std::size_t replication;
  std::size_t variable;
  std::size_t n;
  int kernel_order;
  Method method;
  bool ok;
  double estimate;
  double h;
  bool flat_curve;
  std::size_t degenerate_points;
  std::string error;
};

struct ReportRow {
  std::string variable;
  std::size_t n;
  int kernel_order;
  Method method;
  double bias;
  double variance;  // divisor R - 1; 0 for a single replication
  double mse;       // bias² + variance
  double mean_diff; // mean(Ŝ^Boot - Ŝ^CV) over replications where both succeeded
  double median_h;
  double flat_rate;
  double mean_estimate;
  double truth;
  double reference; // external comparison value, NaN when none
  std::size_t succeeded;
  std::size_t failed;
};

struct ReplicationReport {
  std::vector<ReportRow> rows;
  std::vector<RawResult> raw;
  std::vector<double> truth; // per variable; NaN where not computed
};

/// Replication r samples its dataset from RandomStream(seed).child({r, n}),
/// and each (variable, kernel order) task its bootstrap noise from a child of
/// that, so adding replications never changes earlier ones.
ReplicationReport run_replication_study(const ExperimentConfig& config);

/// Dyke study at n = 1000 for the configured output, with Monte-Carlo truths.
ReplicationReport run_dyke_study(ExperimentConfig config);

/// External comparison values keyed by (variable, method).
using ReferenceTable = std::map<std::pair<std::size_t, Method>, double>;

/// Comparison values for the dyke overflow S at n = 1000 (bootstrap and CV).
ReferenceTable dyke_reference_values();

/// Recomputes the aggregate rows from raw results; `truth` is indexed by variable.
/// Row order follows `config` (variables, then n, kernel order and method).
std::vector<ReportRow> aggregate(const std::vector<RawResult>& raw, const ExperimentConfig& config,
                                 const std::vector<double>& truth,
                                 const ReferenceTable& reference = {});

inline constexpr const char* kReportFile = "report.csv";
inline constexpr const char* kRawFile = "raw.csv";

/// Writes report.csv and raw.csv under `output_dir`.
void write_report(const ReplicationReport& report, const std::filesystem::path& output_dir);
std::vector<ReportRow> read_report(const std::filesystem::path& report_csv);

struct EstimateOutput {
  std::vector<EstimateRecord> records;
  std::filesystem::path csv_path;
  std::filesystem::path json_path;
};

/// Reads a CSV, estimates every input column, writes estimates.csv/.json to `output_dir`.
/// With `clamp`, the reported estimate is mapped into [0, 1] (the raw value is kept too).
EstimateOutput cmd_estimate(const std::filesystem::path& csv_path, const std::string& response,
                            const EstimateConfig& config, const std::filesystem::path& output_dir,
                            bool clamp);

struct PlotDataConfig {
  Model model = GSobolModel{GSobolSpec::standard()};
  std::size_t variable = 0; // 0-based
  std::size_t n = 300;
  std::size_t grid_points = 200;
  KernelSpec kernel{};
  SearchOptions search{};
  BootstrapConfig boot{};
  std::uint64_t seed = 20180101;
};

struct PlotData {
  std::vector<double> x, y;
  std::vector<double> grid;
  std::vector<std::vector<double>> curves; // B series on the grid
  std::vector<double> mean_curve;
  double h0 = 0.0;
  double h_boot = 0.0;
};

PlotData make_plot_data(const PlotDataConfig& config);

/// Writes plot_data.csv (long format: series,replicate,x,y) under `output_dir`.
std::filesystem::path cmd_plot_data(const PlotDataConfig& config,
                                    const std::filesystem::path& output_dir);

} // namespace npsobol
