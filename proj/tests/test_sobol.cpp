#include "oracles.hpp"

#include "npsobol/errors.hpp"
#include "npsobol/models.hpp"
#include "npsobol/smoother.hpp"
#include "npsobol/sobol.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace npsobol;

namespace {

const KernelSpec k2{KernelOrder::Second};
const KernelSpec k4{KernelOrder::Fourth};

RegressionSample g_sample(std::uint64_t seed, std::size_t n, double noise_scale = 0.0)
{
  std::mt19937_64 gen(seed);
  const auto x = oracle::uniforms(gen, n);
  std::vector<double> y;
  for (double v : x)
    y.push_back(oracle::g_function({v}, {0.0}) +
                noise_scale * std::uniform_real_distribution<double>(-1, 1)(gen));
  return RegressionSample(x, y);
}

} // namespace

TEST_CASE("method names")
{
  for (Method m : {Method::PlugIn, Method::CV, Method::Boot, Method::Exact, Method::PickFreeze})
    CHECK(method_from_string(to_string(m)) == m);
  CHECK(to_string(Method::Boot) == "boot");
  CHECK_THROWS_AS(method_from_string("bogus"), DomainError);
}

TEST_CASE("response moments")
{
  const auto a = response_moments(std::vector<double>{1, 1, 1});
  CHECK(a.mean == 1.0);
  CHECK(a.var == 0.0);
  const auto b = response_moments(std::vector<double>{0, 2});
  CHECK(b.mean == 1.0);
  CHECK(b.var == 2.0);

  std::mt19937_64 gen(1);
  const auto v = oracle::uniforms(gen, 500, 1e6, 1e6 + 1);
  const auto c = response_moments(v);
  CHECK(std::abs(c.mean - oracle::mean(v)) < 1e-12 * 1e6);
  CHECK(std::abs(c.var - oracle::var(v)) < 1e-12);
  CHECK_THROWS_AS(response_moments(std::vector<double>{1.0}), DomainError);
}

TEST_CASE("v_hat")
{
  const RegressionSample flat({0.1, 0.2, 0.6}, {3.0, 3.0, 3.0});
  CHECK(v_hat(flat, 0.5, k2) == doctest::Approx(9.0));

  const auto s = g_sample(2, 10, 0.2);
  double direct = 0.0;
  for (std::size_t k = 0; k < 10; ++k) {
    const double m = regression_nw(s.x()[k], s, 0.3, k2).value;
    direct += m * m;
  }
  CHECK(v_hat(s, 0.3, k2) == doctest::Approx(direct / 10.0).epsilon(1e-13));
  CHECK(v_hat(s, 1e-4, k4) >= 0.0);
}

TEST_CASE("plug-in index")
{
  CHECK_THROWS_AS(sobol_plugin(RegressionSample({0.1, 0.2, 0.3}, {1, 1, 1}), 0.1, k2),
                  DegenerateResponse);

  // Interpolating limit with y = x: the fit reproduces y, so S = (n - 1) / n.
  const std::vector<double> x{0.05, 0.21, 0.33, 0.48, 0.52, 0.77, 0.9};
  const auto interp = sobol_plugin(RegressionSample(x, x), 1e-3, k2, 3);
  CHECK(interp.value == doctest::Approx(6.0 / 7.0).epsilon(1e-14));
  CHECK(interp.variable == 3);
  CHECK(interp.method == Method::PlugIn);
  CHECK(interp.h == 1e-3);

  const auto s = g_sample(3, 40, 0.3);
  const double ybar = oracle::mean(s.y());
  double num = 0.0;
  for (std::size_t k = 0; k < 40; ++k) {
    const double m = oracle::nw(s.x()[k], s.x(), s.y(), 0.15, 4);
    num += (m - ybar) * (m - ybar);
  }
  CHECK(sobol_plugin(s, 0.15, k4).value ==
        doctest::Approx(num / 40.0 / oracle::var(s.y())).epsilon(1e-12));
}

TEST_CASE("estimators are invariant under affine maps of the response")
{
  const auto s = g_sample(4, 120, 0.4);
  std::vector<double> z;
  for (double v : s.y())
    z.push_back(250.0 - 7.5 * v);
  const RegressionSample t(s.x(), z);
  const auto spec = resolve_search({}, s);
  BootstrapConfig cfg;
  cfg.B = 20;
  for (const auto& k : {k2, k4}) {
    CHECK(std::abs(sobol_plugin(s, 0.1, k).value - sobol_plugin(t, 0.1, k).value) < 1e-8);
    CHECK(std::abs(sobol_cv(s, k, spec).value - sobol_cv(t, k, spec).value) < 1e-8);
    CHECK(std::abs(sobol_boot(s, k, spec, cfg, RandomStream(1)).value -
                   sobol_boot(t, k, spec, cfg, RandomStream(1)).value) < 1e-8);
  }
}

TEST_CASE("cv index")
{
  const auto s = g_sample(5, 100, 0.3);
  const auto spec = resolve_search({}, s);
  const auto a = sobol_cv(s, k2, spec, 1);
  const auto b = sobol_cv(s, k2, spec, 1);
  CHECK(a.value == b.value);
  CHECK(a.method == Method::CV);
  CHECK(*a.h == select_cv(s, k2, spec).h);
  CHECK(a.value == doctest::Approx(sobol_plugin(s, *a.h, k2).value));

  std::mt19937_64 gen(8);
  const auto x = oracle::uniforms(gen, 100);
  std::normal_distribution<double> nd;
  std::vector<double> noise;
  for (std::size_t k = 0; k < 100; ++k)
    noise.push_back(nd(gen));
  const RegressionSample flat(x, noise);
  const auto f = sobol_cv(flat, k2, resolve_search({}, flat));
  CHECK(f.flat_curve);
  CHECK(f.value < 0.01);
}

TEST_CASE("bootstrap index")
{
  const auto s = g_sample(6, 100, 0.3);
  const auto spec = resolve_search({}, s);
  BootstrapConfig cfg;
  cfg.B = 30;
  const auto est = sobol_boot(s, k2, spec, cfg, RandomStream(9), 2);
  CHECK(est.method == Method::Boot);
  CHECK(est.variable == 2);

  const auto sel = select_boot_detailed(s, k2, spec, cfg, RandomStream(9));
  CHECK(*est.h == sel.result.h);
  const auto curve = ensemble_mean_curve(s, sel.responses, sel.result.h, k2);
  CHECK(est.value == doctest::Approx(oracle::var(curve) / oracle::var(s.y())).epsilon(1e-12));

  const auto both = sobol_cv_and_boot(s, k2, spec, cfg, RandomStream(9), 2, true, true);
  CHECK(both.boot->value == est.value);
  CHECK(both.cv->value == sobol_cv(s, k2, spec, 2).value);
  const auto none = sobol_cv_and_boot(s, k2, spec, cfg, RandomStream(9), 2, false, false);
  CHECK_FALSE(none.cv);
  CHECK_FALSE(none.boot);
}

TEST_CASE("estimate_all")
{
  const auto data = generate_dataset(GSobolModel{GSobolSpec::standard()}, 300, RandomStream(17));
  EstimateConfig cfg;
  cfg.methods = {Method::CV, Method::Boot};
  cfg.boot.B = 30;
  cfg.seed = 5;
  const auto records = estimate_all(data, cfg);
  REQUIRE(records.size() == 16);
  for (const auto& r : records) {
    REQUIRE(r.estimate);
    if (r.variable >= 4)
      CHECK(std::abs(r.estimate->value) < 0.03);
  }
  CHECK(records[0].estimate->value > 0.5);

  // Single column: same as the direct call.
  Dataset one{{"X1"}, {data.columns[0]}, "y", data.response};
  const auto single = estimate_all(one, cfg);
  CHECK(single[0].estimate->value == records[0].estimate->value);
  CHECK(single[1].estimate->value == records[1].estimate->value);
  const RegressionSample s(data.columns[0], data.response);
  CHECK(single[0].estimate->value == sobol_cv(s, cfg.kernel, resolve_search({}, s)).value);

  // Reordered columns give the same numbers under the same names.
  Dataset swapped{{"X3", "X1"}, {data.columns[2], data.columns[0]}, "y", data.response};
  const auto sw = estimate_all(swapped, cfg);
  CHECK(sw[0].name == "X3");
  CHECK(sw[0].estimate->value == records[4].estimate->value);
  CHECK(sw[1].estimate->value == records[5].estimate->value);
  CHECK(sw[2].estimate->value == records[0].estimate->value);
  CHECK(sw[3].estimate->value == records[1].estimate->value);

  cfg.threads = 4;
  const auto threaded = estimate_all(data, cfg);
  for (std::size_t i = 0; i < records.size(); ++i)
    CHECK(threaded[i].estimate->value == records[i].estimate->value);

  Dataset constant{{"a", "b"}, {data.columns[0], data.columns[1]}, "y",
                   std::vector<double>(300, 1.0)};
  for (const auto& r : estimate_all(constant, cfg)) {
    CHECK_FALSE(r.estimate);
    CHECK(!r.error.empty());
  }
  cfg.methods = {Method::Exact};
  CHECK_THROWS_AS(estimate_all(data, cfg), DomainError);
}

TEST_CASE("plug-in identity")
{
  // The centred numerator relates to V̂ through
  // value · s² + Ȳ² + 2Ȳ (mean m̂ − Ȳ) = V̂.
  const auto s = g_sample(11, 70, 0.5);
  for (const auto& k : {k2, k4})
    for (double h : {0.03, 0.1, 0.4}) {
      const auto mom = response_moments(s.y());
      const double mbar = oracle::mean(fit_design(s, h, k).values);
      const double lhs = sobol_plugin(s, h, k).value * mom.var + mom.mean * mom.mean +
                         2.0 * mom.mean * (mbar - mom.mean);
      CHECK(std::abs(lhs - v_hat(s, h, k)) < 1e-12);
    }
}

TEST_CASE("bootstrap index is nonnegative")
{
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto s = g_sample(20 + seed, 60, 2.0);
    BootstrapConfig cfg;
    cfg.B = 10;
    for (const auto& k : {k2, k4})
      CHECK(sobol_boot(s, k, resolve_search({}, s), cfg, RandomStream(seed)).value >= 0.0);
  }
}
