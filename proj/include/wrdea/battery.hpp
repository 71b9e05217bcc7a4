#pragma once

// Built-in battery of small instances for the property checks: hand-made
// degenerate geometries (duplicate and collinear frontier units, weak
// frontier segments, zero data entries, chained restrictions) plus seeded
// random instances within n <= 8, m <= 3, s <= 2.

#include <random>
#include <string>
#include <vector>

#include "wrdea/data.hpp"
#include "wrdea/types.hpp"

namespace wrdea {

struct BatteryCase {
  std::string name;
  DeaInstance instance;
  WeightRestrictions restrictions;
};

namespace detail {

inline DeaInstance make_instance(std::vector<std::string> labels, Matrix inputs,
                                 Matrix outputs) {
  DeaInstance instance;
  instance.labels = std::move(labels);
  instance.inputs = std::move(inputs);
  instance.outputs = std::move(outputs);
  validate_instance(instance);
  return instance;
}

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline BatteryCase random_case(std::mt19937_64& rng, int index) {
  const auto n = static_cast<Eigen::Index>(2 + rng() % 7);  // 2..8
  const auto m = static_cast<Eigen::Index>(1 + rng() % 3);  // 1..3
  const auto s = static_cast<Eigen::Index>(1 + rng() % 2);  // 1..2
  Matrix inputs(m, n), outputs(s, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < m; ++i)
      inputs(i, j) = 1.0 + static_cast<double>(rng() % 90) / 10.0;
    for (Eigen::Index i = 0; i < s; ++i)
      outputs(i, j) = 1.0 + static_cast<double>(rng() % 90) / 10.0;
    // Occasional zero entry, keeping at least one positive input per DMU.
    if (m >= 2 && rng() % 8 == 0) inputs(rng() % m, j) = 0.0;
  }
  for (Eigen::Index i = 0; i < m; ++i)
    if (inputs.row(i).maxCoeff() <= 0.0) inputs(i, 0) = 1.0;

  std::vector<RestrictionSpec> specs;
  if (m >= 2 && rng() % 2 == 0) {
    const double ratios[] = {1.0 / 3.0, 0.5, 1.0, 2.0};
    for (Eigen::Index i = 0; i + 1 < m; ++i) {
      RestrictionSpec spec;
      spec.side = RestrictionSide::Input;
      spec.coefficients[static_cast<int>(i) + 1] = 1.0;
      spec.coefficients[static_cast<int>(i) + 2] = -ratios[rng() % 4];
      specs.push_back(std::move(spec));
    }
  }
  if (s == 2 && rng() % 3 == 0) {
    RestrictionSpec spec;
    spec.side = RestrictionSide::Output;
    spec.coefficients[1] = 1.0;
    spec.coefficients[2] = -(1.0 + static_cast<double>(rng() % 3));
    specs.push_back(std::move(spec));
  }

  BatteryCase battery_case;
  battery_case.name = "random-" + std::to_string(index);
  std::vector<std::string> labels;
  for (Eigen::Index j = 0; j < n; ++j) labels.push_back("R" + std::to_string(j + 1));
  battery_case.instance = make_instance(std::move(labels), std::move(inputs),
                                        std::move(outputs));
  battery_case.restrictions = compile_restrictions(specs, m, s);
  return battery_case;
}

}  // namespace detail

inline std::vector<BatteryCase> standard_battery(unsigned long seed = 1) {
  using detail::make_instance;
  std::vector<BatteryCase> battery;
  const auto none = [](const DeaInstance& instance) {
    return WeightRestrictions::none(instance.input_count(), instance.output_count());
  };

  {
    Matrix x(1, 3), y(1, 3);
    x << 1, 2, 3;
    y << 1, 3, 3;
    BatteryCase c{"toy-line", make_instance({"A", "B", "C"}, x, y), {}};
    c.restrictions = none(c.instance);
    battery.push_back(std::move(c));
  }
  {
    Matrix x(2, 4), y(1, 4);
    x << 1, 3, 2, 4,
         3, 1, 2, 4;
    y << 1, 1, 1, 1;
    BatteryCase c{"toy-square", make_instance({"A", "B", "E", "C"}, x, y), {}};
    c.restrictions = none(c.instance);
    battery.push_back(std::move(c));
  }
  {
    // Duplicate frontier units whose total optimal weight is small: the
    // maximal intensity must still name both twins.
    Matrix x(1, 4), y(1, 4);
    x << 1, 1, 3, 5.2;
    y << 1, 1, 3, 2.6;
    BatteryCase c{"twins", make_instance({"T1", "T2", "B", "D"}, x, y), {}};
    c.restrictions = none(c.instance);
    battery.push_back(std::move(c));
  }
  {
    Matrix x(1, 5), y(1, 5);
    x << 1, 2, 3, 4, 4;
    y << 1, 2, 3, 3.5, 2;
    BatteryCase c{"collinear", make_instance({"A", "B", "C", "D", "E"}, x, y), {}};
    c.restrictions = none(c.instance);
    battery.push_back(std::move(c));
  }
  {
    Matrix x(3, 6), y(1, 6);
    x << 2, 4, 3, 6, 5, 7,
         6, 2, 4, 5, 7, 8,
         3, 3, 2, 6, 4, 9;
    y << 4, 4, 5, 8, 6, 9;
    std::vector<RestrictionSpec> specs(2);
    specs[0].side = RestrictionSide::Input;
    specs[0].coefficients = {{1, 1.0}, {2, -1.0}};
    specs[1].side = RestrictionSide::Input;
    specs[1].coefficients = {{2, 1.0}, {3, -2.0}};
    BatteryCase c{"chain-restrictions",
                  make_instance({"U1", "U2", "U3", "U4", "U5", "U6"}, x, y),
                  compile_restrictions(specs, 3, 1)};
    battery.push_back(std::move(c));
  }
  {
    Matrix x(1, 5), y(2, 5);
    x << 2, 3, 4, 5, 4;
    y << 4, 6, 7, 8, 5,
         2, 3, 5, 4, 1;
    std::vector<RestrictionSpec> specs(1);
    specs[0].side = RestrictionSide::Output;
    specs[0].coefficients = {{1, 1.0}, {2, -2.0}};
    BatteryCase c{"output-restriction",
                  make_instance({"V1", "V2", "V3", "V4", "V5"}, x, y),
                  compile_restrictions(specs, 1, 2)};
    battery.push_back(std::move(c));
  }
  {
    Matrix x(2, 4), y(1, 4);
    x << 0, 2, 1, 3,
         2, 0, 1, 3;
    y << 1, 1, 1.2, 2;
    BatteryCase c{"zero-entries", make_instance({"Z1", "Z2", "Z3", "Z4"}, x, y), {}};
    c.restrictions = none(c.instance);
    battery.push_back(std::move(c));
  }
  {
    Matrix x(1, 1), y(1, 1);
    x << 2;
    y << 3;
    BatteryCase c{"single", make_instance({"only"}, x, y), {}};
    c.restrictions = none(c.instance);
    battery.push_back(std::move(c));
  }
  {
    Matrix x(2, 5), y(2, 5);
    x << 1, 2, 3, 2, 4,
         3, 2, 1, 2, 4;
    y << 2, 3, 2, 4, 3,
         1, 2, 3, 2, 1;
    std::vector<RestrictionSpec> specs(2);
    specs[0].side = RestrictionSide::Input;
    specs[0].coefficients = {{1, 1.0}, {2, -0.5}};
    specs[1].side = RestrictionSide::Output;
    specs[1].coefficients = {{2, 1.0}, {1, -1.0}};
    BatteryCase c{"mixed-restrictions",
                  make_instance({"M1", "M2", "M3", "M4", "M5"}, x, y),
                  compile_restrictions(specs, 2, 2)};
    battery.push_back(std::move(c));
  }
  {
    // Horizontal frontier segment: B is weakly efficient, C dominated.
    Matrix x(1, 4), y(1, 4);
    x << 1, 2, 2, 3;
    y << 1, 1, 0.5, 1;
    BatteryCase c{"weak-frontier", make_instance({"A", "B", "C", "D"}, x, y), {}};
    c.restrictions = none(c.instance);
    battery.push_back(std::move(c));
  }

  std::mt19937_64 rng(seed);
  for (int i = 1; i <= 22; ++i) battery.push_back(detail::random_case(rng, i));
  return battery;
}

}  // namespace wrdea
