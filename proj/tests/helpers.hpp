#pragma once

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "prdg/mesh.hpp"
#include "prdg/reconstruct.hpp"

namespace testing {

using prdg::Point;

/// Random polynomial of total degree <= k in global (unscaled) monomials.
struct Polynomial {
  int degree = 0;
  std::vector<double> coeffs;  // graded lexicographic order

  double operator()(const Point& x) const {
    double s = 0.0;
    std::size_t i = 0;
    for (int d = 0; d <= degree; ++d)
      for (int j = 0; j <= d; ++j) s += coeffs[i++] * std::pow(x.x(), d - j) * std::pow(x.y(), j);
    return s;
  }
  Eigen::Vector2d gradient(const Point& x) const {
    Eigen::Vector2d g = Eigen::Vector2d::Zero();
    std::size_t i = 0;
    for (int d = 0; d <= degree; ++d)
      for (int j = 0; j <= d; ++j, ++i) {
        const int a = d - j;
        if (a > 0) g.x() += coeffs[i] * a * std::pow(x.x(), a - 1) * std::pow(x.y(), j);
        if (j > 0) g.y() += coeffs[i] * j * std::pow(x.x(), a) * std::pow(x.y(), j - 1);
      }
    return g;
  }
};

inline Polynomial random_polynomial(int k, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Polynomial p{k, std::vector<double>(prdg::num_monomials(k))};
  for (double& c : p.coeffs) c = u(rng);
  return p;
}

/// Mesh of a polygon with explicit vertices, convenient for tiny hand-built cases.
inline prdg::PolyMesh two_squares() {
  // (0,1)^2 split at x = 1/2
  std::vector<Point> v = {{0, 0}, {0.5, 0}, {1, 0}, {0, 1}, {0.5, 1}, {1, 1}};
  return prdg::PolyMesh(v, {{0, 1, 4, 3}, {1, 2, 5, 4}});
}

/// 2 x 2 squares on (0,1)^2.
inline prdg::PolyMesh four_squares() {
  std::vector<Point> v;
  for (int j = 0; j <= 2; ++j)
    for (int i = 0; i <= 2; ++i) v.emplace_back(0.5 * i, 0.5 * j);
  auto id = [](int i, int j) { return static_cast<prdg::Index>(j * 3 + i); };
  std::vector<std::vector<prdg::Index>> e;
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 2; ++i) e.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
  return prdg::PolyMesh(v, e);
}

}  // namespace testing
