#pragma once

#include <string>
#include <string_view>

#include "prdg/forms.hpp"

namespace prdg {

enum class ExampleId { ex1a, ex1b, ex2, ex3, ex4, zero };

ExampleId parse_example(std::string_view name);
std::string_view to_string(ExampleId id);

struct ExampleParams {
  double nu = 1.0;
  /// interior-layer location and width (ex2 only)
  double l1 = 0.5;
  double l2 = 0.05;
};

/// Benchmark problems on the unit square.
///   ex1a: u = sin(2 pi x) sin(2 pi y), b = (x^2 y + 1, x y^2 + 1), c = 1
///   ex1b: u = sin(2 pi x) sin(2 pi y) + x^5 + y^5 + 1, b = (y, x), c = exp(x + y)
///   ex2:  u = x(1-x)y(1-y)(1 - tanh((l1 - x)/l2)) / 2, b = (1, 0), c = 1
///   ex3:  boundary layers along x = 1 and y = 1, b = (1, 1), c = 0
///   ex4:  no exact solution, b = (1/2, sqrt(3)/2), c = f = 0, discontinuous g
///   zero: f = g = 0 with b = (1, 1), c = 1
struct ExampleCase {
  ExampleId id = ExampleId::ex1a;
  ProblemSpec spec;
  /// Laplacian of the exact solution (empty without one); f is built from it.
  ScalarField laplacian;
};

ExampleCase make_example(ExampleId id, const ExampleParams& params);

}  // namespace prdg
