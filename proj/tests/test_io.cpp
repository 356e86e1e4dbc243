#include "oracles.hpp"

#include "npsobol/csv.hpp"
#include "npsobol/errors.hpp"
#include "npsobol/experiments.hpp"

#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

using namespace npsobol;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
  const auto dir = fs::temp_directory_path() / ("npsobol_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p)
{
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool same(double a, double b)
{
  return (std::isnan(a) && std::isnan(b)) || a == b;
}

ExperimentConfig small_study()
{
  auto cfg = ExperimentConfig::fast(GSobolModel{GSobolSpec::standard()});
  cfg.n_list = {60, 80};
  cfg.replications = 3;
  cfg.boot.B = 10;
  cfg.variables = {0, 3};
  return cfg;
}

} // namespace

TEST_CASE("csv parsing")
{
  std::istringstream in("\xEF\xBB\xBF"
                        "a,b,y\r\n1,2,3\n\n4.5,-1e-3,7\n0,0,0\n");
  const auto t = parse_csv(in);
  CHECK(t.header == std::vector<std::string>{"a", "b", "y"});
  REQUIRE(t.rows.size() == 3);
  CHECK(t.line_numbers[1] == 4);
  const auto d = dataset_from_csv(t, "y");
  CHECK(d.names == std::vector<std::string>{"a", "b"});
  CHECK(d.response == std::vector<double>{3, 7, 0});
  CHECK(d.columns[1] == std::vector<double>{2, -1e-3, 0});

  std::istringstream ragged("a,y\n1,2\n3\n");
  try {
    parse_csv(ragged);
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(e.row() == 3);
  }

  CHECK(parse_number("1.25", 1, 1) == 1.25);
  for (const char* bad : {"", "1,000", "abc", "nan", "inf", "1.5x"}) {
    try {
      parse_number(bad, 7, 2);
      FAIL("expected an error for " << bad);
    } catch (const InputError& e) {
      CHECK(e.row() == 7);
      CHECK(e.column() == 2);
    }
  }

  std::istringstream short_file("x,y\n1,2\n3,4\n");
  CHECK_THROWS_AS(dataset_from_csv(parse_csv(short_file), "y"), InputError);
  std::istringstream no_y("x,z\n1,2\n3,4\n5,6\n");
  CHECK_THROWS_AS(dataset_from_csv(parse_csv(no_y), "y"), InputError);
  CHECK_THROWS_AS(read_csv("/nonexistent/file.csv"), InputError);
}

TEST_CASE("number formatting round-trips")
{
  for (double v : {0.0, -0.0, 1.0 / 3.0, 1e-300, 6.02214076e23, -2.5})
    CHECK(parse_number(format_double(v), 1, 1) == v);
  CHECK(format_double(std::nan("")) == "nan");
}

TEST_CASE("dataset files round-trip")
{
  const auto dir = scratch("dataset");
  const auto d = generate_dataset(GSobolModel{GSobolSpec::standard()}, 50, RandomStream(1));
  write_dataset_csv(d, dir / "d.csv");
  const auto back = dataset_from_csv(read_csv(dir / "d.csv"), "y");
  CHECK(back.names == d.names);
  CHECK(back.columns == d.columns);
  CHECK(back.response == d.response);
}

TEST_CASE("estimate command")
{
  const auto dir = scratch("estimate");
  {
    std::ofstream f(dir / "lin.csv");
    f << "x,y\n";
    for (int k = 0; k < 50; ++k)
      f << k / 49.0 << ',' << k / 49.0 << '\n';
  }
  EstimateConfig cfg;
  const auto out = cmd_estimate(dir / "lin.csv", "y", cfg, dir / "out", false);
  REQUIRE(out.records.size() == 1);
  CHECK(out.records[0].estimate->value > 0.95);
  CHECK(fs::exists(out.csv_path));

  const auto json = nlohmann::json::parse(slurp(out.json_path));
  REQUIRE(json.size() == 1);
  CHECK(json[0]["variable"] == "x");
  CHECK(json[0]["method"] == "cv");
  CHECK(json[0]["raw_estimate"].get<double>() == out.records[0].estimate->value);
  const auto table = read_csv(out.csv_path);
  CHECK(table.header[0] == "variable");
  CHECK(parse_number(table.rows[0][3], 2, 4) == out.records[0].estimate->value);

  {
    std::ofstream f(dir / "const.csv");
    f << "a,b,y\n";
    for (int k = 0; k < 20; ++k)
      f << k << ',' << k * k << ",4\n";
  }
  const auto flat = cmd_estimate(dir / "const.csv", "y", cfg, dir / "out2", false);
  REQUIRE(flat.records.size() == 2);
  for (const auto& r : flat.records) {
    CHECK_FALSE(r.estimate);
    CHECK(r.error.find("variance") != std::string::npos);
  }
  const auto fj = nlohmann::json::parse(slurp(flat.json_path));
  CHECK(fj[1]["estimate"].is_null());

  // Clamping only changes the reported column.
  {
    std::ofstream f(dir / "noise.csv");
    f << "x,y\n";
    RandomStream r(2);
    for (int k = 0; k < 60; ++k)
      f << format_double(r.uniform01()) << ',' << format_double(r.uniform01()) << '\n';
  }
  cfg.methods = {Method::CV, Method::Boot};
  cfg.boot.B = 10;
  const auto c = cmd_estimate(dir / "noise.csv", "y", cfg, dir / "out3", true);
  const auto ct = read_csv(c.csv_path);
  for (std::size_t i = 0; i < ct.rows.size(); ++i) {
    const double shown = parse_number(ct.rows[i][2], 1, 1);
    const double raw = parse_number(ct.rows[i][3], 1, 1);
    CHECK(shown == std::clamp(raw, 0.0, 1.0));
  }
}

TEST_CASE("single replication")
{
  auto cfg = small_study();
  cfg.replications = 1;
  cfg.n_list = {80};
  const auto rep = run_replication_study(cfg);
  const auto truth = gsobol_exact_indices(GSobolSpec::standard());
  REQUIRE(rep.rows.size() == 2 * 2 * 2);
  for (const auto& row : rep.rows) {
    CHECK(row.variance == 0.0);
    CHECK(row.succeeded == 1);
    const std::size_t i = row.variable == "X1" ? 0 : 3;
    CHECK(row.truth == truth[i]);
    for (const auto& r : rep.raw)
      if (r.variable == i && r.kernel_order == row.kernel_order && r.method == row.method)
        CHECK(row.bias == doctest::Approx(r.estimate - truth[i]).epsilon(1e-15));
    CHECK(row.mse == doctest::Approx(row.bias * row.bias));
  }
  CHECK(rep.rows[0].variable == "X1");
  CHECK(rep.rows[0].method == Method::CV);
  CHECK(rep.rows[1].method == Method::Boot);
}

TEST_CASE("aggregation")
{
  ExperimentConfig cfg;
  cfg.n_list = {10};
  cfg.kernel_orders = {2};
  cfg.variables = {0};
  auto raw_row = [](std::size_t rep, Method m, double est, double h, bool ok = true) {
    return RawResult{rep, 0, 10, 2, m, ok, est, h, false, 0, ok ? "" : "failed"};
  };
  std::vector<RawResult> raw{raw_row(0, Method::CV, 0.5, 0.1), raw_row(0, Method::Boot, 0.6, 0.01),
                             raw_row(1, Method::CV, 0.7, 0.3), raw_row(1, Method::Boot, 0.0, 0.0, false),
                             raw_row(2, Method::CV, 0.9, 0.2), raw_row(2, Method::Boot, 1.0, 0.05)};
  ReferenceTable ref{{{0, Method::Boot}, 0.66}};
  const auto rows = aggregate(raw, cfg, {0.6}, ref);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].mean_estimate == doctest::Approx(0.7));
  CHECK(rows[0].bias == doctest::Approx(0.1));
  CHECK(rows[0].variance == doctest::Approx(0.04));
  CHECK(rows[0].mse == doctest::Approx(0.05));
  CHECK(rows[0].median_h == doctest::Approx(0.2));
  CHECK(std::isnan(rows[0].reference));
  CHECK(rows[1].succeeded == 2);
  CHECK(rows[1].failed == 1);
  CHECK(rows[1].median_h == doctest::Approx(0.03));
  CHECK(rows[1].reference == 0.66);
  // Paired over replications 0 and 2 only.
  CHECK(rows[0].mean_diff == doctest::Approx(0.1));
  CHECK(rows[1].mean_diff == rows[0].mean_diff);
}

TEST_CASE("reports are reproducible and round-trip")
{
  const auto cfg = small_study();
  const auto a = run_replication_study(cfg);
  const auto da = scratch("report_a");
  const auto db = scratch("report_b");
  write_report(a, da);
  write_report(run_replication_study(cfg), db);
  CHECK(slurp(da / kReportFile) == slurp(db / kReportFile));
  CHECK(slurp(da / kRawFile) == slurp(db / kRawFile));

  auto threaded = cfg;
  threaded.threads = 3;
  const auto dt = scratch("report_t");
  write_report(run_replication_study(threaded), dt);
  CHECK(slurp(da / kReportFile) == slurp(dt / kReportFile));

  const auto back = read_report(da / kReportFile);
  REQUIRE(back.size() == a.rows.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    const auto& x = back[i];
    const auto& y = a.rows[i];
    CHECK(x.variable == y.variable);
    CHECK(x.n == y.n);
    CHECK(x.kernel_order == y.kernel_order);
    CHECK(x.method == y.method);
    CHECK(same(x.bias, y.bias));
    CHECK(same(x.variance, y.variance));
    CHECK(same(x.mse, y.mse));
    CHECK(same(x.mean_diff, y.mean_diff));
    CHECK(same(x.median_h, y.median_h));
    CHECK(same(x.flat_rate, y.flat_rate));
    CHECK(same(x.truth, y.truth));
    CHECK(same(x.reference, y.reference));
    CHECK(x.succeeded == y.succeeded);
    CHECK(x.failed == y.failed);
  }

  const auto de = scratch("report_empty");
  write_report(ReplicationReport{}, de);
  const auto empty = slurp(de / kReportFile);
  CHECK(std::count(empty.begin(), empty.end(), '\n') == 1);
  CHECK(read_report(de / kReportFile).empty());
}

TEST_CASE("adding replications keeps earlier ones")
{
  auto cfg = small_study();
  const auto a = run_replication_study(cfg);
  cfg.replications += 1;
  const auto b = run_replication_study(cfg);
  for (const auto& r : a.raw) {
    bool found = false;
    for (const auto& s : b.raw)
      if (s.replication == r.replication && s.n == r.n && s.variable == r.variable &&
          s.kernel_order == r.kernel_order && s.method == r.method) {
        CHECK(s.estimate == r.estimate);
        CHECK(s.h == r.h);
        found = true;
      }
    CHECK(found);
  }
}

TEST_CASE("experiment config validation")
{
  auto cfg = small_study();
  cfg.replications = 0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = small_study();
  cfg.methods = {Method::PlugIn};
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = small_study();
  cfg.variables = {8};
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = small_study();
  cfg.kernel_orders = {3};
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  CHECK_THROWS_AS(run_dyke_study(small_study()), DomainError);

  CHECK(ExperimentConfig::fast(GSobolModel{GSobolSpec::standard()}).replications == 20);
  CHECK(ExperimentConfig::full(GSobolModel{GSobolSpec::standard()}).boot.B == 100);
}

TEST_CASE("dyke reference values")
{
  const auto ref = dyke_reference_values();
  CHECK(ref.at({0, Method::Boot}) == 0.405);
  CHECK(ref.at({0, Method::CV}) == 0.372);
  CHECK(ref.at({4, Method::Boot}) == 0.057);
  CHECK(ref.count({3, Method::Boot}) == 0);
}

TEST_CASE("plot data")
{
  PlotDataConfig cfg;
  cfg.boot.B = 100;
  const auto dir = scratch("plot");
  const auto path = cmd_plot_data(cfg, dir);
  const auto t = read_csv(path);
  std::size_t data_rows = 0, mean_rows = 0;
  std::set<std::string> replicates;
  for (const auto& r : t.rows) {
    if (r[0] == "data")
      ++data_rows;
    else if (r[0] == "mean")
      ++mean_rows;
    else
      replicates.insert(r[1]);
  }
  CHECK(data_rows == 300);
  CHECK(mean_rows == 200);
  CHECK(replicates.size() == 100);
  CHECK(fs::exists(dir / "plot_meta.json"));

  const auto pd = make_plot_data(cfg);
  CHECK(pd.grid.front() == *std::min_element(pd.x.begin(), pd.x.end()));
  CHECK(pd.grid.back() == *std::max_element(pd.x.begin(), pd.x.end()));
  CHECK(pd.h_boot < pd.h0);
  // Individual replicates wiggle around a smoother mean.
  double spread = 0.0;
  for (std::size_t g = 0; g < pd.grid.size(); ++g) {
    std::vector<double> col;
    for (const auto& c : pd.curves)
      col.push_back(c[g]);
    spread += oracle::var(col);
  }
  CHECK(spread > 0.0);

  cfg.boot.B = 1;
  const auto one = make_plot_data(cfg);
  CHECK(one.mean_curve == one.curves[0]);
}

TEST_CASE("aggregates are recomputable from the raw dump")
{
  const auto cfg = small_study();
  const auto rep = run_replication_study(cfg);
  const auto dir = scratch("raw_dump");
  write_report(rep, dir);
  const auto raw = read_csv(dir / kRawFile);
  for (const auto& row : rep.rows) {
    std::vector<double> est;
    for (std::size_t r = 0; r < raw.rows.size(); ++r) {
      const auto& c = raw.rows[r];
      if (c[1] == (row.variable == "X1" ? "0" : "3") && c[2] == std::to_string(row.n) &&
          c[3] == std::to_string(row.kernel_order) && c[4] == to_string(row.method) && c[5] == "ok")
        est.push_back(parse_number(c[6], r + 2, 7));
    }
    REQUIRE(est.size() == row.succeeded);
    CHECK(std::abs(oracle::mean(est) - row.truth - row.bias) < 1e-12);
    CHECK(std::abs(oracle::var(est) - row.variance) < 1e-12);
  }
}

TEST_CASE("mean estimates follow the true ordering")
{
  auto cfg = ExperimentConfig::fast(GSobolModel{GSobolSpec::standard()});
  cfg.n_list = {300};
  cfg.replications = 10;
  cfg.boot.B = 20;
  cfg.kernel_orders = {2};
  cfg.variables = {0, 1, 2, 3};
  const auto rep = run_replication_study(cfg);
  for (Method m : {Method::CV, Method::Boot}) {
    std::vector<double> means;
    for (const auto& r : rep.rows)
      if (r.method == m)
        means.push_back(r.mean_estimate);
    REQUIRE(means.size() == 4);
    CHECK(means[0] > means[1]);
    CHECK(means[1] > means[2]);
    CHECK(means[2] > means[3]);
  }
}
