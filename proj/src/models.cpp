#include "npsobol/models.hpp"

#include "npsobol/errors.hpp"

#include <cmath>
#include <string>

namespace npsobol {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<std::string> numbered_names(std::size_t p)
{
  std::vector<std::string> names;
  for (std::size_t i = 0; i < p; ++i)
    names.push_back("X" + std::to_string(i + 1));
  return names;
}

} // namespace

GSobolSpec GSobolSpec::standard()
{
  return {{0.0, 1.0, 4.5, 9.0, 99.0, 99.0, 99.0, 99.0}};
}

void GSobolSpec::validate() const
{
  if (a.empty())
    throw DomainError("g-function needs at least one input");
  for (double ai : a)
    if (!(ai >= 0.0) || !std::isfinite(ai))
      throw DomainError("g-function parameters must be finite and nonnegative");
}

double gsobol_eval(std::span<const double> x, const GSobolSpec& spec)
{
  if (x.size() != spec.a.size())
    throw DomainError("g-function input has the wrong dimension");
  double prod = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= 0.0 && x[i] <= 1.0))
      throw DomainError("g-function inputs must lie in [0, 1]");
    prod *= (std::abs(4.0 * x[i] - 2.0) + spec.a[i]) / (1.0 + spec.a[i]);
  }
  return prod;
}

std::vector<double> gsobol_exact_indices(const GSobolSpec& spec)
{
  spec.validate();
  std::vector<double> partial(spec.a.size());
  double total = 0.0; // ∏ (1 + V_k) - 1, accumulated without cancellation
  for (std::size_t i = 0; i < spec.a.size(); ++i) {
    partial[i] = 1.0 / (3.0 * (1.0 + spec.a[i]) * (1.0 + spec.a[i]));
    total = total * (1.0 + partial[i]) + partial[i];
  }
  for (double& v : partial)
    v /= total;
  return partial;
}

DykeConfig DykeConfig::standard()
{
  DykeConfig cfg;
  cfg.distributions = {
    GumbelTruncated{1013.0, 558.0, 500.0, 3000.0},
    NormalTruncated{30.0, 8.0, 15.0},
    Triangular{49.0, 50.0, 51.0},
    Triangular{54.0, 55.0, 56.0},
    Uniform{7.0, 9.0},
    Triangular{55.0, 55.5, 56.0},
    Triangular{4990.0, 5000.0, 5010.0},
    Triangular{295.0, 300.0, 305.0},
  };
  cfg.h_exponent = 0.6;
  return cfg;
}

const std::array<std::string, kDykeInputs>& DykeConfig::input_names()
{
  static const std::array<std::string, kDykeInputs> names{"Q", "Ks", "Zv", "Zm",
                                                          "Hd", "Cb", "L", "B"};
  return names;
}

void DykeConfig::validate() const
{
  if (!(h_exponent > 0.0))
    throw DomainError("dyke H exponent must be positive");
  for (const auto& d : distributions)
    npsobol::validate(d);
}

DykeOutput dyke_eval(std::span<const double> in, const DykeConfig& cfg)
{
  if (in.size() != kDykeInputs)
    throw DomainError("dyke model takes 8 inputs");
  const double Q = in[0], Ks = in[1], Zv = in[2], Zm = in[3];
  const double Hd = in[4], Cb = in[5], L = in[6], B = in[7];
  if (!(Zm > Zv))
    throw DomainError("dyke model needs Zm > Zv");
  if (!(Ks > 0.0 && B > 0.0 && L > 0.0 && Q > 0.0))
    throw DomainError("dyke model needs positive Q, Ks, L and B");

  const double H = std::pow(Q / (B * Ks * std::sqrt((Zm - Zv) / L)), cfg.h_exponent);
  const double S = Zv + H - Hd - Cb;

  double Cp = 0.0;
  if (S > 0.0) {
    Cp += 1.0;
  } else {
    // exp(-1000 / S^4) -> 0 as S -> 0
    const double decay = S == 0.0 ? 0.0 : std::exp(-1000.0 / std::pow(S, 4));
    Cp += 0.2 + 0.8 * (1.0 - decay);
  }
  Cp += (Hd > 8.0 ? Hd : 8.0) / 20.0;
  return {S, Cp};
}

std::size_t input_count(const Model& model)
{
  return std::visit(overloaded{
                      [](const GSobolModel& m) { return m.spec.a.size(); },
                      [](const DykeModel&) { return kDykeInputs; },
                      [](const FunctionModel& m) { return m.inputs.size(); },
                    },
                    model);
}

std::vector<std::string> input_names(const Model& model)
{
  return std::visit(overloaded{
                      [](const GSobolModel& m) { return numbered_names(m.spec.a.size()); },
                      [](const DykeModel&) {
                        const auto& n = DykeConfig::input_names();
                        return std::vector<std::string>(n.begin(), n.end());
                      },
                      [](const FunctionModel& m) {
                        return m.names.empty() ? numbered_names(m.inputs.size()) : m.names;
                      },
                    },
                    model);
}

std::string model_name(const Model& model)
{
  return std::visit(overloaded{
                      [](const GSobolModel&) { return std::string("gsobol"); },
                      [](const DykeModel& m) {
                        return std::string(m.output == DykeResponse::S ? "dyke-s" : "dyke-cp");
                      },
                      [](const FunctionModel&) { return std::string("function"); },
                    },
                    model);
}

double evaluate(const Model& model, std::span<const double> inputs)
{
  return std::visit(overloaded{
                      [&](const GSobolModel& m) { return gsobol_eval(inputs, m.spec); },
                      [&](const DykeModel& m) {
                        const auto out = dyke_eval(inputs, m.config);
                        return m.output == DykeResponse::S ? out.S : out.Cp;
                      },
                      [&](const FunctionModel& m) { return m.f(inputs); },
                    },
                    model);
}

namespace {

DistributionSpec input_distribution(const Model& model, std::size_t j)
{
  return std::visit(overloaded{
                      [](const GSobolModel&) { return DistributionSpec{Uniform{0.0, 1.0}}; },
                      [j](const DykeModel& m) { return m.config.distributions[j]; },
                      [j](const FunctionModel& m) { return m.inputs[j]; },
                    },
                    model);
}

std::vector<std::vector<double>> sample_inputs(const Model& model, std::size_t n,
                                               const RandomStream& rng)
{
  const std::size_t p = input_count(model);
  std::vector<std::vector<double>> columns(p);
  for (std::size_t j = 0; j < p; ++j) {
    auto stream = rng.child(j);
    columns[j] = sample_distribution(input_distribution(model, j), n, stream);
  }
  return columns;
}

std::vector<double> evaluate_rows(const Model& model, const std::vector<std::vector<double>>& cols,
                                  std::size_t n)
{
  std::vector<double> row(cols.size());
  std::vector<double> y(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < cols.size(); ++j)
      row[j] = cols[j][k];
    y[k] = evaluate(model, row);
  }
  return y;
}

} // namespace

Dataset generate_dataset(const Model& model, std::size_t n, const RandomStream& rng)
{
  if (n < 2)
    throw DomainError("dataset needs at least two rows");
  Dataset data;
  data.names = input_names(model);
  data.columns = sample_inputs(model, n, rng);
  data.response = evaluate_rows(model, data.columns, n);
  data.response_name = "y";
  if (const auto* d = std::get_if<DykeModel>(&model))
    data.response_name = d->output == DykeResponse::S ? "S" : "Cp";
  return data;
}

double pickfreeze_oracle(const Model& model, std::size_t i, std::size_t N,
                         const RandomStream& rng)
{
  if (N < 100)
    throw DomainError("pick-freeze needs N >= 100");
  if (i >= input_count(model))
    throw DomainError("pick-freeze input index out of range");

  const auto base = sample_inputs(model, N, rng.child(0));
  auto picked = sample_inputs(model, N, rng.child(1));
  picked[i] = base[i];
  const auto y = evaluate_rows(model, base, N);
  const auto y_frozen = evaluate_rows(model, picked, N);

  double cross = 0.0, sum = 0.0, sq = 0.0;
  for (std::size_t k = 0; k < N; ++k) {
    cross += y[k] * y_frozen[k];
    sum += 0.5 * (y[k] + y_frozen[k]);
    sq += 0.5 * (y[k] * y[k] + y_frozen[k] * y_frozen[k]);
  }
  const double n = static_cast<double>(N);
  const double m = sum / n;
  const double denom = sq / n - m * m;
  if (!(denom > 0.0))
    throw DegenerateResponse("pick-freeze response has zero variance");
  return (cross / n - m * m) / denom;
}

} // namespace npsobol
