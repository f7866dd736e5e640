#include "prdg/cases.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "prdg/error.hpp"

namespace prdg {

ExampleId parse_example(std::string_view name) {
  if (name == "ex1a") return ExampleId::ex1a;
  if (name == "ex1b") return ExampleId::ex1b;
  if (name == "ex2") return ExampleId::ex2;
  if (name == "ex3") return ExampleId::ex3;
  if (name == "ex4") return ExampleId::ex4;
  if (name == "zero") return ExampleId::zero;
  throw InvalidInput("unknown example '" + std::string(name) + "'");
}

std::string_view to_string(ExampleId id) {
  switch (id) {
    case ExampleId::ex1a: return "ex1a";
    case ExampleId::ex1b: return "ex1b";
    case ExampleId::ex2: return "ex2";
    case ExampleId::ex3: return "ex3";
    case ExampleId::ex4: return "ex4";
    case ExampleId::zero: return "zero";
  }
  return "?";
}

namespace {

using std::numbers::pi;
using Vec = Eigen::Vector2d;

// f = -nu Lap u + (div b) u + b . grad u + c u
void manufacture(ExampleCase& ex) {
  auto& s = ex.spec;
  const double nu = s.nu;
  s.f = [nu, u = s.u, gu = s.grad_u, lap = ex.laplacian, b = s.b, c = s.c, divb = s.div_b](const Point& x) {
    return -nu * lap(x) + divb(x) * u(x) + b(x).dot(gu(x)) + c(x) * u(x);
  };
  s.g = s.u;
}

ExampleCase smooth_sine(double nu) {
  ExampleCase ex;
  ex.spec.nu = nu;
  ex.spec.u = [](const Point& x) { return std::sin(2 * pi * x.x()) * std::sin(2 * pi * x.y()); };
  ex.spec.grad_u = [](const Point& x) {
    const double sx = std::sin(2 * pi * x.x()), cx = std::cos(2 * pi * x.x());
    const double sy = std::sin(2 * pi * x.y()), cy = std::cos(2 * pi * x.y());
    return Vec(2 * pi * cx * sy, 2 * pi * sx * cy);
  };
  ex.laplacian = [](const Point& x) { return -8 * pi * pi * std::sin(2 * pi * x.x()) * std::sin(2 * pi * x.y()); };
  return ex;
}

ExampleCase example_1a(double nu) {
  ExampleCase ex = smooth_sine(nu);
  ex.id = ExampleId::ex1a;
  ex.spec.b = [](const Point& x) { return Vec(x.x() * x.x() * x.y() + 1, x.x() * x.y() * x.y() + 1); };
  ex.spec.div_b = [](const Point& x) { return 4 * x.x() * x.y(); };
  ex.spec.c = [](const Point&) { return 1.0; };
  manufacture(ex);
  return ex;
}

ExampleCase example_1b(double nu) {
  ExampleCase ex = smooth_sine(nu);
  ex.id = ExampleId::ex1b;
  auto u0 = ex.spec.u;
  auto g0 = ex.spec.grad_u;
  auto l0 = ex.laplacian;
  ex.spec.u = [u0](const Point& x) { return u0(x) + std::pow(x.x(), 5) + std::pow(x.y(), 5) + 1; };
  ex.spec.grad_u = [g0](const Point& x) {
    return Vec(g0(x) + Vec(5 * std::pow(x.x(), 4), 5 * std::pow(x.y(), 4)));
  };
  ex.laplacian = [l0](const Point& x) { return l0(x) + 20 * std::pow(x.x(), 3) + 20 * std::pow(x.y(), 3); };
  ex.spec.b = [](const Point& x) { return Vec(x.y(), x.x()); };
  ex.spec.div_b = [](const Point&) { return 0.0; };
  ex.spec.c = [](const Point& x) { return std::exp(x.x() + x.y()); };
  manufacture(ex);
  return ex;
}

ExampleCase example_2(double nu, double l1, double l2) {
  if (!(l2 > 0)) throw InvalidInput("ex2: l2 must be positive");
  ExampleCase ex;
  ex.id = ExampleId::ex2;
  ex.spec.nu = nu;
  // u = P(x) Q(y) T(x) / 2 with T = 1 - tanh((l1 - x)/l2)
  struct Profile {
    double l1, l2;
    double T(double x) const { return 1 - std::tanh((l1 - x) / l2); }
    double dT(double x) const {
      double s = 1 / std::cosh((l1 - x) / l2);
      return s * s / l2;
    }
    double ddT(double x) const {
      double z = (l1 - x) / l2, s = 1 / std::cosh(z);
      return 2 * s * s * std::tanh(z) / (l2 * l2);
    }
  };
  const Profile p{l1, l2};
  ex.spec.u = [p](const Point& x) {
    return 0.5 * x.x() * (1 - x.x()) * x.y() * (1 - x.y()) * p.T(x.x());
  };
  ex.spec.grad_u = [p](const Point& x) {
    const double P = x.x() * (1 - x.x()), dP = 1 - 2 * x.x();
    const double Q = x.y() * (1 - x.y()), dQ = 1 - 2 * x.y();
    return Vec(0.5 * Q * (dP * p.T(x.x()) + P * p.dT(x.x())), 0.5 * P * p.T(x.x()) * dQ);
  };
  ex.laplacian = [p](const Point& x) {
    const double P = x.x() * (1 - x.x()), dP = 1 - 2 * x.x();
    const double Q = x.y() * (1 - x.y());
    const double uxx = 0.5 * Q * (-2 * p.T(x.x()) + 2 * dP * p.dT(x.x()) + P * p.ddT(x.x()));
    const double uyy = 0.5 * P * p.T(x.x()) * -2;
    return uxx + uyy;
  };
  ex.spec.b = [](const Point&) { return Vec(1, 0); };
  ex.spec.div_b = [](const Point&) { return 0.0; };
  ex.spec.c = [](const Point&) { return 1.0; };
  manufacture(ex);
  return ex;
}

ExampleCase example_3(double nu) {
  ExampleCase ex;
  ex.id = ExampleId::ex3;
  ex.spec.nu = nu;
  // exp(-1/nu) underflows to 0 for small nu, leaving the linear part plus the layer term
  const double tail = std::exp(-1 / nu);
  const double denom = 1 - tail;
  auto layer = [nu](const Point& x) { return std::exp(-(1 - x.x()) * (1 - x.y()) / nu); };
  ex.spec.u = [=](const Point& x) { return x.x() + x.y() * (1 - x.x()) + (tail - layer(x)) / denom; };
  ex.spec.grad_u = [=](const Point& x) {
    const double E = layer(x) / (nu * denom);
    return Vec(1 - x.y() - E * (1 - x.y()), 1 - x.x() - E * (1 - x.x()));
  };
  ex.laplacian = [=](const Point& x) {
    const double E = layer(x) / (nu * nu * denom);
    return -E * ((1 - x.y()) * (1 - x.y()) + (1 - x.x()) * (1 - x.x()));
  };
  ex.spec.b = [](const Point&) { return Vec(1, 1); };
  ex.spec.div_b = [](const Point&) { return 0.0; };
  ex.spec.c = [](const Point&) { return 0.0; };
  manufacture(ex);
  return ex;
}

ExampleCase example_4(double nu) {
  ExampleCase ex;
  ex.id = ExampleId::ex4;
  ex.spec.nu = nu;
  ex.spec.b = [](const Point&) { return Vec(0.5, std::sqrt(3.0) / 2); };
  ex.spec.div_b = [](const Point&) { return 0.0; };
  ex.spec.c = [](const Point&) { return 0.0; };
  ex.spec.f = [](const Point&) { return 0.0; };
  ex.spec.g = [](const Point& x) {
    constexpr double tol = 1e-12;
    if (std::abs(x.y()) <= tol && x.x() >= -tol && x.x() <= 1 + tol) return 1.0;
    if (std::abs(x.x()) <= tol && x.y() <= 0.2) return 1.0;
    return 0.0;
  };
  return ex;
}

ExampleCase example_zero() {
  ExampleCase ex;
  ex.id = ExampleId::zero;
  ex.spec.nu = 1.0;
  ex.spec.u = [](const Point&) { return 0.0; };
  ex.spec.grad_u = [](const Point&) { return Vec(0, 0); };
  ex.laplacian = [](const Point&) { return 0.0; };
  ex.spec.b = [](const Point&) { return Vec(1, 1); };
  ex.spec.div_b = [](const Point&) { return 0.0; };
  ex.spec.c = [](const Point&) { return 1.0; };
  ex.spec.f = [](const Point&) { return 0.0; };
  ex.spec.g = [](const Point&) { return 0.0; };
  return ex;
}

}  // namespace

ExampleCase make_example(ExampleId id, const ExampleParams& params) {
  if (!(params.nu > 0)) throw InvalidInput("nu must be positive");
  ExampleCase ex;
  switch (id) {
    case ExampleId::ex1a: ex = example_1a(params.nu); break;
    case ExampleId::ex1b: ex = example_1b(params.nu); break;
    case ExampleId::ex2: ex = example_2(params.nu, params.l1, params.l2); break;
    case ExampleId::ex3: ex = example_3(params.nu); break;
    case ExampleId::ex4: ex = example_4(params.nu); break;
    case ExampleId::zero: ex = example_zero(); ex.spec.nu = params.nu; break;
  }
  return ex;
}

}  // namespace prdg
