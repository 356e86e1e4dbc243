#include "npsobol/experiments.hpp"

#include "npsobol/csv.hpp"
#include "npsobol/errors.hpp"
#include "npsobol/parallel.hpp"
#include "npsobol/smoother.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace npsobol {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::uint64_t kBootKey = 0xB0075A9;
constexpr std::uint64_t kReferenceKey = 0x5EFE2E4CE;

std::vector<std::size_t> selected_variables(const ExperimentConfig& config)
{
  if (!config.variables.empty())
    return config.variables;
  std::vector<std::size_t> all(input_count(config.model));
  for (std::size_t i = 0; i < all.size(); ++i)
    all[i] = i;
  return all;
}

std::string sanitize(std::string s)
{
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

double median(std::vector<double> v)
{
  if (v.empty())
    return kNaN;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::vector<double> reference_truth(const ExperimentConfig& config)
{
  const std::size_t p = input_count(config.model);
  std::vector<double> truth(p, kNaN);
  if (const auto* g = std::get_if<GSobolModel>(&config.model))
    return gsobol_exact_indices(g->spec);
  const auto vars = selected_variables(config);
  const RandomStream master(config.seed);
  parallel_for(vars.size(), config.threads, [&](std::size_t t) {
    const std::size_t i = vars[t];
    truth[i] = pickfreeze_oracle(config.model, i, config.reference_samples,
                                 master.child({kReferenceKey, i}));
  });
  return truth;
}

ReplicationReport run_study(const ExperimentConfig& config, const ReferenceTable& reference)
{
  config.validate();
  const auto vars = selected_variables(config);
  const RandomStream master(config.seed);

  struct Cell {
    std::size_t n;
    std::size_t replication;
  };
  std::vector<Cell> cells;
  for (std::size_t n : config.n_list)
    for (std::size_t r = 0; r < config.replications; ++r)
      cells.push_back({n, r});

  std::vector<Dataset> datasets(cells.size());
  parallel_for(cells.size(), config.threads, [&](std::size_t c) {
    datasets[c] = generate_dataset(config.model, cells[c].n,
                                   master.child({cells[c].replication, cells[c].n}));
  });

  const bool want_cv =
    std::find(config.methods.begin(), config.methods.end(), Method::CV) != config.methods.end();
  const bool want_boot =
    std::find(config.methods.begin(), config.methods.end(), Method::Boot) != config.methods.end();

  const std::size_t per_cell = vars.size() * config.kernel_orders.size();
  std::vector<std::vector<RawResult>> slots(cells.size() * per_cell);

  parallel_for(slots.size(), config.threads, [&](std::size_t t) {
    const std::size_t c = t / per_cell;
    const std::size_t v = (t % per_cell) / config.kernel_orders.size();
    const std::size_t o = t % config.kernel_orders.size();
    const std::size_t i = vars[v];
    const int order = config.kernel_orders[o];
    const auto& data = datasets[c];

    auto make = [&](Method m) {
      return RawResult{cells[c].replication, i, cells[c].n, order, m, false, kNaN, kNaN,
                       false,                0, {}};
    };
    auto& out = slots[t];
    try {
      const RegressionSample sample(data.columns[i], data.response);
      const auto spec = resolve_search(config.search, sample);
      const auto rng = master.child({cells[c].replication, cells[c].n})
                         .child({kBootKey, i, static_cast<std::uint64_t>(order)});
      const auto est = sobol_cv_and_boot(sample, KernelSpec::from_order(order), spec, config.boot,
                                         rng, i, want_cv, want_boot);
      for (Method m : config.methods) {
        auto r = make(m);
        const auto& e = m == Method::CV ? est.cv : est.boot;
        r.ok = true;
        r.estimate = e->value;
        r.h = e->h.value_or(kNaN);
        r.flat_curve = e->flat_curve;
        r.degenerate_points = e->degenerate_points;
        out.push_back(std::move(r));
      }
    } catch (const std::exception& e) {
      for (Method m : config.methods) {
        auto r = make(m);
        r.error = sanitize(e.what());
        out.push_back(std::move(r));
      }
    }
  });

  ReplicationReport report;
  for (auto& s : slots)
    for (auto& r : s)
      report.raw.push_back(std::move(r));
  std::sort(report.raw.begin(), report.raw.end(), [](const RawResult& a, const RawResult& b) {
    return std::tie(a.n, a.replication, a.variable, a.kernel_order, a.method) <
           std::tie(b.n, b.replication, b.variable, b.kernel_order, b.method);
  });
  report.truth = reference_truth(config);
  report.rows = aggregate(report.raw, config, report.truth, reference);
  return report;
}

} // namespace

void ExperimentConfig::validate() const
{
  if (replications < 1)
    throw DomainError("replications must be at least 1");
  if (n_list.empty())
    throw DomainError("n_list must not be empty");
  for (std::size_t n : n_list)
    if (n < 3)
      throw DomainError("sample sizes must be at least 3");
  if (kernel_orders.empty() || methods.empty())
    throw DomainError("at least one kernel order and one method are required");
  for (int o : kernel_orders)
    KernelSpec::from_order(o);
  for (Method m : methods)
    if (m != Method::CV && m != Method::Boot)
      throw DomainError("replication studies support the cv and boot methods only");
  for (std::size_t v : variables)
    if (v >= input_count(model))
      throw DomainError("variable index out of range");
  boot.validate();
}

ExperimentConfig ExperimentConfig::fast(Model model)
{
  ExperimentConfig cfg;
  cfg.model = std::move(model);
  cfg.replications = 20;
  cfg.boot.B = 50;
  return cfg;
}

ExperimentConfig ExperimentConfig::full(Model model)
{
  ExperimentConfig cfg;
  cfg.model = std::move(model);
  cfg.replications = 100;
  cfg.boot.B = 100;
  return cfg;
}

ReplicationReport run_replication_study(const ExperimentConfig& config)
{
  return run_study(config, {});
}

ReferenceTable dyke_reference_values()
{
  ReferenceTable ref;
  const std::array<std::pair<DykeInput, std::pair<double, double>>, 5> values{{
    {DykeInput::Q, {0.405, 0.372}},
    {DykeInput::Ks, {0.155, 0.146}},
    {DykeInput::Zv, {0.181, 0.172}},
    {DykeInput::Hd, {0.057, 0.055}},
    {DykeInput::Cb, {0.029, 0.028}},
  }};
  for (const auto& [input, v] : values) {
    ref[{static_cast<std::size_t>(input), Method::Boot}] = v.first;
    ref[{static_cast<std::size_t>(input), Method::CV}] = v.second;
  }
  return ref;
}

ReplicationReport run_dyke_study(ExperimentConfig config)
{
  const auto* dyke = std::get_if<DykeModel>(&config.model);
  if (!dyke)
    throw DomainError("run_dyke_study needs the dyke model");
  config.n_list = {1000};
  const auto reference = dyke->output == DykeResponse::S ? dyke_reference_values()
                                                         : ReferenceTable{};
  return run_study(config, reference);
}

std::vector<ReportRow> aggregate(const std::vector<RawResult>& raw, const ExperimentConfig& config,
                                 const std::vector<double>& truth, const ReferenceTable& reference)
{
  const auto names = input_names(config.model);
  std::vector<ReportRow> rows;
  for (std::size_t i : selected_variables(config)) {
    for (std::size_t n : config.n_list) {
      for (int order : config.kernel_orders) {
        // Boot - CV per replication, where both succeeded.
        std::map<std::size_t, double> cv_by_rep, boot_by_rep;
        for (const auto& r : raw) {
          if (r.variable != i || r.n != n || r.kernel_order != order || !r.ok)
            continue;
          if (r.method == Method::CV)
            cv_by_rep[r.replication] = r.estimate;
          else if (r.method == Method::Boot)
            boot_by_rep[r.replication] = r.estimate;
        }
        double diff_sum = 0.0;
        std::size_t diff_count = 0;
        for (const auto& [rep, b] : boot_by_rep) {
          const auto it = cv_by_rep.find(rep);
          if (it != cv_by_rep.end()) {
            diff_sum += b - it->second;
            ++diff_count;
          }
        }
        const double mean_diff = diff_count ? diff_sum / static_cast<double>(diff_count) : kNaN;

        for (Method m : config.methods) {
          std::vector<double> est, hs;
          std::size_t failed = 0, flat = 0;
          for (const auto& r : raw) {
            if (r.variable != i || r.n != n || r.kernel_order != order || r.method != m)
              continue;
            if (!r.ok) {
              ++failed;
              continue;
            }
            est.push_back(r.estimate);
            hs.push_back(r.h);
            flat += r.flat_curve ? 1 : 0;
          }
          ReportRow row{};
          row.variable = names[i];
          row.n = n;
          row.kernel_order = order;
          row.method = m;
          row.truth = i < truth.size() ? truth[i] : kNaN;
          const auto ref = reference.find({i, m});
          row.reference = ref == reference.end() ? kNaN : ref->second;
          row.succeeded = est.size();
          row.failed = failed;
          row.mean_diff = mean_diff;
          if (est.empty()) {
            row.bias = row.variance = row.mse = row.median_h = row.flat_rate = kNaN;
            row.mean_estimate = kNaN;
          } else {
            const double mu = mean(est);
            double ss = 0.0;
            for (double e : est)
              ss += (e - mu) * (e - mu);
            row.mean_estimate = mu;
            row.bias = mu - row.truth;
            row.variance = est.size() > 1 ? ss / static_cast<double>(est.size() - 1) : 0.0;
            row.mse = row.bias * row.bias + row.variance;
            row.median_h = median(hs);
            row.flat_rate = static_cast<double>(flat) / static_cast<double>(est.size());
          }
          rows.push_back(std::move(row));
        }
      }
    }
  }
  return rows;
}

namespace {

constexpr const char* kReportHeader =
  "variable,n,kernel_order,method,bias,variance,mse,mean_diff,median_h,flat_rate,"
  "mean_estimate,truth,reference,succeeded,failed";

double parse_field(const std::string& cell, std::size_t row, std::size_t column)
{
  if (cell == "nan")
    return kNaN;
  return parse_number(cell, row, column);
}

std::ofstream open_output(const std::filesystem::path& path)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw InputError("cannot write " + path.string());
  return out;
}

} // namespace

void write_report(const ReplicationReport& report, const std::filesystem::path& output_dir)
{
  std::error_code ec;
  std::filesystem::create_directories(output_dir, ec);
  if (ec)
    throw InputError("cannot create " + output_dir.string() + ": " + ec.message());

  const auto report_path = output_dir / kReportFile;
  auto out = open_output(report_path);
  out << kReportHeader << '\n';
  for (const auto& r : report.rows) {
    out << r.variable << ',' << r.n << ',' << r.kernel_order << ',' << to_string(r.method) << ','
        << format_double(r.bias) << ',' << format_double(r.variance) << ','
        << format_double(r.mse) << ',' << format_double(r.mean_diff) << ','
        << format_double(r.median_h) << ',' << format_double(r.flat_rate) << ','
        << format_double(r.mean_estimate) << ',' << format_double(r.truth) << ','
        << format_double(r.reference) << ',' << r.succeeded << ',' << r.failed << '\n';
  }
  if (!out)
    throw InputError("write failed for " + report_path.string());

  const auto raw_path = output_dir / kRawFile;
  auto raw = open_output(raw_path);
  raw << "replication,variable,n,kernel_order,method,status,estimate,h,flat_curve,"
         "degenerate_points,error\n";
  for (const auto& r : report.raw) {
    raw << r.replication << ',' << r.variable << ',' << r.n << ',' << r.kernel_order << ','
        << to_string(r.method) << ',' << (r.ok ? "ok" : "failed") << ','
        << format_double(r.estimate) << ',' << format_double(r.h) << ','
        << (r.flat_curve ? 1 : 0) << ',' << r.degenerate_points << ',' << r.error << '\n';
  }
  if (!raw)
    throw InputError("write failed for " + raw_path.string());
}

std::vector<ReportRow> read_report(const std::filesystem::path& report_csv)
{
  const auto table = read_csv(report_csv);
  std::ostringstream expected;
  for (std::size_t c = 0; c < table.header.size(); ++c)
    expected << (c ? "," : "") << table.header[c];
  if (expected.str() != kReportHeader)
    throw InputError("unexpected report header in " + report_csv.string(), 1);

  std::vector<ReportRow> rows;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& c = table.rows[r];
    const std::size_t line = table.line_numbers[r];
    ReportRow row{};
    row.variable = c[0];
    row.n = static_cast<std::size_t>(parse_number(c[1], line, 2));
    row.kernel_order = static_cast<int>(parse_number(c[2], line, 3));
    row.method = method_from_string(c[3]);
    row.bias = parse_field(c[4], line, 5);
    row.variance = parse_field(c[5], line, 6);
    row.mse = parse_field(c[6], line, 7);
    row.mean_diff = parse_field(c[7], line, 8);
    row.median_h = parse_field(c[8], line, 9);
    row.flat_rate = parse_field(c[9], line, 10);
    row.mean_estimate = parse_field(c[10], line, 11);
    row.truth = parse_field(c[11], line, 12);
    row.reference = parse_field(c[12], line, 13);
    row.succeeded = static_cast<std::size_t>(parse_number(c[13], line, 14));
    row.failed = static_cast<std::size_t>(parse_number(c[14], line, 15));
    rows.push_back(std::move(row));
  }
  return rows;
}

EstimateOutput cmd_estimate(const std::filesystem::path& csv_path, const std::string& response,
                            const EstimateConfig& config, const std::filesystem::path& output_dir,
                            bool clamp)
{
  const auto data = dataset_from_csv(read_csv(csv_path), response);
  EstimateOutput result;
  result.records = estimate_all(data, config);

  std::error_code ec;
  std::filesystem::create_directories(output_dir, ec);
  if (ec)
    throw InputError("cannot create " + output_dir.string() + ": " + ec.message());
  result.csv_path = output_dir / "estimates.csv";
  result.json_path = output_dir / "estimates.json";

  auto csv = open_output(result.csv_path);
  csv << "variable,method,estimate,raw_estimate,bandwidth,flat_curve,degenerate_points,negative,"
         "error\n";
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : result.records) {
    nlohmann::json j;
    j["variable"] = r.name;
    j["method"] = std::string(to_string(r.method));
    if (r.estimate) {
      const auto& e = *r.estimate;
      const double shown = clamp ? std::clamp(e.value, 0.0, 1.0) : e.value;
      const double h = e.h.value_or(kNaN);
      csv << r.name << ',' << to_string(r.method) << ',' << format_double(shown) << ','
          << format_double(e.value) << ',' << format_double(h) << ',' << (e.flat_curve ? 1 : 0)
          << ',' << e.degenerate_points << ',' << (e.negative() ? 1 : 0) << ",\n";
      j["estimate"] = shown;
      j["raw_estimate"] = e.value;
      j["bandwidth"] = h;
      j["flat_curve"] = e.flat_curve;
      j["degenerate_points"] = e.degenerate_points;
      j["negative"] = e.negative();
      j["error"] = nullptr;
    } else {
      csv << r.name << ',' << to_string(r.method) << ",nan,nan,nan,0,0,0," << sanitize(r.error)
          << '\n';
      j["estimate"] = nullptr;
      j["raw_estimate"] = nullptr;
      j["bandwidth"] = nullptr;
      j["flat_curve"] = false;
      j["degenerate_points"] = 0;
      j["negative"] = false;
      j["error"] = r.error;
    }
    records.push_back(std::move(j));
  }
  if (!csv)
    throw InputError("write failed for " + result.csv_path.string());
  auto json = open_output(result.json_path);
  json << records.dump(2) << '\n';
  if (!json)
    throw InputError("write failed for " + result.json_path.string());
  return result;
}

PlotData make_plot_data(const PlotDataConfig& config)
{
  if (config.variable >= input_count(config.model))
    throw DomainError("plot variable out of range");
  if (config.grid_points < 2)
    throw DomainError("plot grid needs at least two points");
  const RandomStream master(config.seed);
  const auto data = generate_dataset(config.model, config.n, master.child(0));
  const RegressionSample sample(data.columns[config.variable], data.response);
  const auto spec = resolve_search(config.search, sample);
  const auto sel = select_boot_detailed(sample, config.kernel, spec, config.boot, master.child(1));

  PlotData out;
  out.x = sample.x();
  out.y = sample.y();
  out.h0 = sel.pilot.h;
  out.h_boot = sel.result.h;
  out.grid.resize(config.grid_points);
  const double lo = sample.min_x();
  const double hi = sample.max_x();
  for (std::size_t g = 0; g < config.grid_points; ++g)
    out.grid[g] = lo + (hi - lo) * static_cast<double>(g) /
                         static_cast<double>(config.grid_points - 1);
  out.grid.front() = lo;
  out.grid.back() = hi;

  out.mean_curve.assign(config.grid_points, 0.0);
  for (const auto& y : sel.responses.responses) {
    const auto replicate = sample.with_response(y);
    std::vector<double> curve(config.grid_points);
    for (std::size_t g = 0; g < config.grid_points; ++g) {
      curve[g] = regression_nw(out.grid[g], replicate, out.h_boot, config.kernel).value;
      out.mean_curve[g] += curve[g];
    }
    out.curves.push_back(std::move(curve));
  }
  for (double& v : out.mean_curve)
    v /= static_cast<double>(out.curves.size());
  return out;
}

std::filesystem::path cmd_plot_data(const PlotDataConfig& config,
                                    const std::filesystem::path& output_dir)
{
  const auto data = make_plot_data(config);
  std::error_code ec;
  std::filesystem::create_directories(output_dir, ec);
  if (ec)
    throw InputError("cannot create " + output_dir.string() + ": " + ec.message());

  const auto path = output_dir / "plot_data.csv";
  auto out = open_output(path);
  out << "series,replicate,x,y\n";
  for (std::size_t k = 0; k < data.x.size(); ++k)
    out << "data,0," << format_double(data.x[k]) << ',' << format_double(data.y[k]) << '\n';
  for (std::size_t b = 0; b < data.curves.size(); ++b)
    for (std::size_t g = 0; g < data.grid.size(); ++g)
      out << "bootstrap," << b + 1 << ',' << format_double(data.grid[g]) << ','
          << format_double(data.curves[b][g]) << '\n';
  for (std::size_t g = 0; g < data.grid.size(); ++g)
    out << "mean,0," << format_double(data.grid[g]) << ',' << format_double(data.mean_curve[g])
        << '\n';
  if (!out)
    throw InputError("write failed for " + path.string());

  nlohmann::json meta{{"model", model_name(config.model)},
                      {"variable", input_names(config.model)[config.variable]},
                      {"n", config.n},
                      {"B", config.boot.B},
                      {"kernel_order", config.kernel.order_number()},
                      {"h0", data.h0},
                      {"h_boot", data.h_boot},
                      {"seed", config.seed}};
  auto meta_out = open_output(output_dir / "plot_meta.json");
  meta_out << meta.dump(2) << '\n';
  return path;
}

} // namespace npsobol
