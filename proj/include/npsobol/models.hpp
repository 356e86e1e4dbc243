#pragma once

#include "npsobol/distributions.hpp"
#include "npsobol/random.hpp"
#include "npsobol/sobol.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace npsobol {

struct GSobolSpec {
  std::vector<double> a;

  static GSobolSpec standard(); // a = (0, 1, 4.5, 9, 99, 99, 99, 99)
  void validate() const;
};

/// ∏ (|4 x_i - 2| + a_i) / (1 + a_i) on [0, 1]^p.
double gsobol_eval(std::span<const double> x, const GSobolSpec& spec);

/// Closed-form first-order indices of the g-function with uniform inputs.
std::vector<double> gsobol_exact_indices(const GSobolSpec& spec);

enum class DykeInput : std::size_t { Q, Ks, Zv, Zm, Hd, Cb, L, B };
inline constexpr std::size_t kDykeInputs = 8;

struct DykeConfig {
  std::array<DistributionSpec, kDykeInputs> distributions;
  double h_exponent = 0.6;

  static DykeConfig standard();
  static const std::array<std::string, kDykeInputs>& input_names();
  void validate() const;
};

struct DykeOutput {
  double S;  // overflow, metres
  double Cp; // cost, millions of euros
};

DykeOutput dyke_eval(std::span<const double> inputs, const DykeConfig& cfg);

enum class DykeResponse { S, Cp };

struct GSobolModel {
  GSobolSpec spec;
};

struct DykeModel {
  DykeConfig config;
  DykeResponse output = DykeResponse::S;
};

/// Arbitrary function of independent inputs, mostly for tests.
struct FunctionModel {
  std::vector<DistributionSpec> inputs;
  std::function<double(std::span<const double>)> f;
  std::vector<std::string> names;
};

using Model = std::variant<GSobolModel, DykeModel, FunctionModel>;

std::size_t input_count(const Model& model);
std::vector<std::string> input_names(const Model& model);
std::string model_name(const Model& model);
double evaluate(const Model& model, std::span<const double> inputs);

/// Column j is sampled from rng.child(j); responses are evaluated row-wise.
Dataset generate_dataset(const Model& model, std::size_t n, const RandomStream& rng);

/// Pick-freeze Monte-Carlo estimate of S_i (0-based i) from N paired draws.
double pickfreeze_oracle(const Model& model, std::size_t i, std::size_t N,
                         const RandomStream& rng);

} // namespace npsobol
