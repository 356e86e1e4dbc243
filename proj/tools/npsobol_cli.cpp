// npsobol: nonparametric first-order Sobol indices from a sample.
//
//   npsobol estimate data.csv --response y [--bandwidth cv|boot|both]
//   npsobol simulate --model gsobol --n 300 --out data.csv
//   npsobol replicate --model gsobol --fast --out results/
//   npsobol plot-data --model gsobol --variable 1 --out plots/

#include "npsobol/csv.hpp"
#include "npsobol/errors.hpp"
#include "npsobol/experiments.hpp"
#include "npsobol/parallel.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

using namespace npsobol;

namespace {

struct ModelOptions {
  std::string name = "gsobol";
  std::vector<double> gsobol_a;
  double dyke_h_exponent = 0.6;

  void add_to(CLI::App& app)
  {
    app.add_option("--model", name, "gsobol, dyke-s or dyke-cp")
      ->check(CLI::IsMember({"gsobol", "dyke-s", "dyke-cp"}));
    app.add_option("--gsobol-a", gsobol_a, "g-function coefficients (one per input)");
    app.add_option("--dyke-h-exponent", dyke_h_exponent, "exponent of the water-height formula");
  }

  Model build() const
  {
    if (name == "gsobol") {
      GSobolSpec spec = gsobol_a.empty() ? GSobolSpec::standard() : GSobolSpec{gsobol_a};
      spec.validate();
      return GSobolModel{spec};
    }
    DykeConfig cfg = DykeConfig::standard();
    cfg.h_exponent = dyke_h_exponent;
    return DykeModel{cfg, name == "dyke-cp" ? DykeResponse::Cp : DykeResponse::S};
  }
};

struct SmootherOptions {
  int kernel_order = 2;
  std::size_t B = 100;
  std::string sigma_mode = "smoothed";
  std::optional<double> sigma_floor;
  SearchOptions search;

  void add_to(CLI::App& app, bool with_b = true)
  {
    app.add_option("--kernel-order", kernel_order, "2 or 4")->check(CLI::IsMember({2, 4}));
    if (with_b)
      app.add_option("--boot-B", B, "bootstrap replicates")->check(CLI::PositiveNumber);
    app.add_option("--sigma-mode", sigma_mode, "smoothed or global")
      ->check(CLI::IsMember({"smoothed", "global"}));
    app.add_option("--sigma-floor", sigma_floor, "lower bound for the conditional sd");
    app.add_option("--grid-size", search.grid_size, "log-spaced grid points");
    app.add_option("--h-min", search.h_min, "smallest bandwidth searched");
    app.add_option("--h-max", search.h_max, "largest bandwidth searched");
    app.add_option("--tol", search.tol, "refinement tolerance in log h");
    app.add_option("--max-iter", search.max_iter, "refinement iterations (0 = grid only)");
  }

  BootstrapConfig boot() const
  {
    BootstrapConfig b;
    b.B = B;
    b.sigma_floor = sigma_floor;
    b.sigma_mode = sigma_mode == "global" ? SigmaMode::Global : SigmaMode::Smoothed;
    return b;
  }
};

unsigned resolve_threads(unsigned requested)
{
  return requested ? requested : default_thread_count();
}

void print_records(const std::vector<EstimateRecord>& records, bool clamp)
{
  for (const auto& r : records) {
    std::cout << r.name << '\t' << to_string(r.method) << '\t';
    if (r.estimate) {
      const double v = clamp ? std::clamp(r.estimate->value, 0.0, 1.0) : r.estimate->value;
      std::cout << format_double(v) << "\th=" << format_double(r.estimate->h.value_or(0.0));
      if (r.estimate->flat_curve)
        std::cout << "\tflat-curve";
      if (r.estimate->degenerate_points)
        std::cout << "\tdegenerate=" << r.estimate->degenerate_points;
    } else {
      std::cout << "error: " << r.error;
    }
    std::cout << '\n';
  }
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Nonparametric estimation of first-order Sobol indices"};
  app.require_subcommand(1);
  unsigned threads = 0;
  std::uint64_t seed = 20180101;
  app.add_option("--threads", threads, "worker threads (0 = NPSOBOL_THREADS or all cores)");
  app.add_option("--seed", seed, "master seed");

  // estimate
  auto* est = app.add_subcommand("estimate", "estimate indices of every input column of a CSV");
  std::string csv_path, response, bandwidth = "cv", out_dir = ".";
  bool clamp = false;
  SmootherOptions est_opts;
  est->add_option("csv", csv_path, "input CSV with a header row")->required();
  est->add_option("--response", response, "name of the response column")->required();
  est->add_option("--bandwidth", bandwidth, "cv, boot or both")
    ->check(CLI::IsMember({"cv", "boot", "both"}));
  est->add_flag("--clamp", clamp, "report estimates clamped into [0, 1]");
  est->add_option("--out", out_dir, "output directory");
  est_opts.add_to(*est);

  // simulate
  auto* sim = app.add_subcommand("simulate", "draw a dataset from a benchmark model");
  ModelOptions sim_model;
  std::size_t sim_n = 300;
  std::string sim_out;
  sim_model.add_to(*sim);
  sim->add_option("--n", sim_n, "sample size")->check(CLI::PositiveNumber);
  sim->add_option("--out", sim_out, "output CSV")->required();

  // replicate
  auto* rep = app.add_subcommand("replicate", "repeated-sample study of bias, variance and MSE");
  ModelOptions rep_model;
  bool fast = false, full = false;
  std::optional<std::size_t> reps, rep_B;
  std::vector<std::size_t> n_list;
  std::vector<int> orders;
  std::vector<std::size_t> variables;
  std::optional<std::size_t> reference_samples;
  std::string rep_out = "results";
  rep_model.add_to(*rep);
  rep->add_flag("--fast", fast, "20 replications, B = 50");
  rep->add_flag("--full", full, "100 replications, B = 100 (default)");
  rep->add_option("--replications", reps, "override the replication count");
  rep->add_option("--boot-B", rep_B, "override the bootstrap size");
  rep->add_option("--n", n_list, "sample sizes (dyke studies always use 1000)");
  rep->add_option("--kernel-orders", orders, "kernel orders to run")->check(CLI::IsMember({2, 4}));
  rep->add_option("--variables", variables, "1-based input indices (default: all)");
  rep->add_option("--reference-samples", reference_samples, "Monte-Carlo size for true indices");
  rep->add_option("--out", rep_out, "output directory");
  SmootherOptions rep_opts;
  rep_opts.add_to(*rep, false);

  // plot-data
  auto* plot = app.add_subcommand("plot-data", "bootstrap curves of one input for plotting");
  ModelOptions plot_model;
  std::size_t plot_variable = 1, plot_n = 300, plot_grid = 200;
  std::string plot_out = "plots";
  SmootherOptions plot_opts;
  plot_model.add_to(*plot);
  plot->add_option("--variable", plot_variable, "1-based input index")->check(CLI::PositiveNumber);
  plot->add_option("--n", plot_n, "sample size");
  plot->add_option("--grid-points", plot_grid, "evaluation grid size");
  plot->add_option("--out", plot_out, "output directory");
  plot_opts.add_to(*plot);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*est) {
      EstimateConfig cfg;
      cfg.kernel = KernelSpec::from_order(est_opts.kernel_order);
      cfg.search = est_opts.search;
      cfg.boot = est_opts.boot();
      cfg.seed = seed;
      cfg.threads = resolve_threads(threads);
      if (bandwidth == "cv")
        cfg.methods = {Method::CV};
      else if (bandwidth == "boot")
        cfg.methods = {Method::Boot};
      else
        cfg.methods = {Method::CV, Method::Boot};
      const auto result = cmd_estimate(csv_path, response, cfg, out_dir, clamp);
      print_records(result.records, clamp);
      std::cerr << "wrote " << result.csv_path.string() << " and " << result.json_path.string()
                << '\n';
      for (const auto& r : result.records)
        if (!r.estimate)
          return 3;
    } else if (*sim) {
      const auto model = sim_model.build();
      write_dataset_csv(generate_dataset(model, sim_n, RandomStream(seed)), sim_out);
      std::cerr << "wrote " << sim_out << '\n';
    } else if (*rep) {
      const auto model = rep_model.build();
      auto cfg = fast && !full ? ExperimentConfig::fast(model) : ExperimentConfig::full(model);
      if (reps)
        cfg.replications = *reps;
      const std::size_t B = rep_B.value_or(cfg.boot.B);
      cfg.boot = rep_opts.boot();
      cfg.boot.B = B;
      if (!n_list.empty())
        cfg.n_list = n_list;
      if (!orders.empty())
        cfg.kernel_orders = orders;
      for (std::size_t v : variables) {
        if (v == 0)
          throw DomainError("--variables is 1-based");
        cfg.variables.push_back(v - 1);
      }
      if (reference_samples)
        cfg.reference_samples = *reference_samples;
      cfg.search = rep_opts.search;
      cfg.seed = seed;
      cfg.threads = resolve_threads(threads);
      const auto report = rep_model.name == "gsobol" ? run_replication_study(cfg)
                                                     : run_dyke_study(cfg);
      write_report(report, rep_out);
      std::cout << "variable\tn\torder\tmethod\tbias\tvariance\tmse\tmedian_h\n";
      for (const auto& r : report.rows)
        std::cout << r.variable << '\t' << r.n << '\t' << r.kernel_order << '\t'
                  << to_string(r.method) << '\t' << format_double(r.bias) << '\t'
                  << format_double(r.variance) << '\t' << format_double(r.mse) << '\t'
                  << format_double(r.median_h) << '\n';
      std::cerr << "wrote " << rep_out << '/' << kReportFile << '\n';
    } else if (*plot) {
      PlotDataConfig cfg;
      cfg.model = plot_model.build();
      cfg.variable = plot_variable - 1;
      cfg.n = plot_n;
      cfg.grid_points = plot_grid;
      cfg.kernel = KernelSpec::from_order(plot_opts.kernel_order);
      cfg.search = plot_opts.search;
      cfg.boot = plot_opts.boot();
      cfg.seed = seed;
      std::cerr << "wrote " << cmd_plot_data(cfg, plot_out).string() << '\n';
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
