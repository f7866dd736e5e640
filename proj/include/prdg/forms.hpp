#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "prdg/mesh.hpp"
#include "prdg/quadrature.hpp"
#include "prdg/reconstruct.hpp"

namespace prdg {

using ScalarField = std::function<double(const Point&)>;
using VectorField = std::function<Eigen::Vector2d(const Point&)>;

/// -nu Lap u + div(b u) + c u = f in the domain, u = g on its boundary.
struct ProblemSpec {
  double nu = 1.0;
  VectorField b;
  ScalarField c;
  ScalarField f;
  ScalarField g;
  /// optional; central differences of b are used when empty
  ScalarField div_b;
  /// optional exact solution and gradient
  ScalarField u;
  VectorField grad_u;

  void validate() const;
  bool has_exact() const { return static_cast<bool>(u) && static_cast<bool>(grad_u); }
};

/// div b at x, from the analytic callback or central differences with step 1e-6 * length_scale.
double divergence(const ProblemSpec& spec, const Point& x, double length_scale);
/// r = c + div(b) / 2
double effective_reaction(const ProblemSpec& spec, const Point& x, double length_scale);

// Jumps and averages on a face with unit normal n1 pointing out of side 1.
inline Eigen::Vector2d jump(double v1, double v2, const Eigen::Vector2d& n1) { return (v1 - v2) * n1; }
inline double jump(const Eigen::Vector2d& q1, const Eigen::Vector2d& q2, const Eigen::Vector2d& n1) {
  return (q1 - q2).dot(n1);
}
inline double average(double v1, double v2) { return 0.5 * (v1 + v2); }
inline Eigen::Vector2d average(const Eigen::Vector2d& q1, const Eigen::Vector2d& q2) { return 0.5 * (q1 + q2); }

/// Normal component {{b v}}_up . n1 of the upwind value, given bn1 = b . n1.
inline double upwind_normal_flux(double bn1, double v1, double v2) {
  return bn1 * average(v1, v2) + 0.5 * std::abs(bn1) * (v1 - v2);
}

enum class BoundaryKind { inflow, outflow };

struct BoundaryClass {
  BoundaryKind kind = BoundaryKind::outflow;
  /// b . n changes sign between the quadrature points of the edge
  bool mixed_sign = false;
};

/// Inflow when b . n < 0 at the edge midpoint, outflow otherwise.
BoundaryClass classify_boundary(const PolyMesh& mesh, const Edge& edge, const VectorField& b, int check_order = 4);

/// Elementwise function: value and gradient on element `e` at x.
struct PiecewiseFunction {
  std::function<double(Index, const Point&)> value;
  std::function<Eigen::Vector2d(Index, const Point&)> gradient;
};

PiecewiseFunction smooth_function(ScalarField u, VectorField grad_u);
/// Reconstruction P^k of barycenter values `dofs` (the space must outlive the result).
PiecewiseFunction reconstructed_function(const ReconstructionSpace& space, std::vector<double> dofs);
/// Element-local polynomials in the elements' monomial bases.
PiecewiseFunction polynomial_function(const ReconstructionSpace& space, std::vector<Eigen::VectorXd> coefficients);

struct FormSettings {
  /// penalty sigma_e on every edge
  double sigma = 1.0;
  int volume_order = 4;
  int edge_order = 4;
};

/// Default penalty 3k(k+1).
inline double default_penalty(int k) { return 3.0 * k * (k + 1); }

/// Discrete bilinear form A_h and linear form L on a fixed mesh and problem.
class DiscreteForms {
public:
  DiscreteForms(const PolyMesh& mesh, ProblemSpec spec, FormSettings settings);

  const PolyMesh& mesh() const { return *mesh_; }
  const ProblemSpec& spec() const { return spec_; }
  const FormSettings& settings() const { return settings_; }
  const MeshQuadrature& quadrature() const { return quad_; }
  BoundaryKind boundary_kind(Index edge) const { return boundary_[edge].kind; }
  std::size_t mixed_sign_edges() const;
  /// sigma_e nu / |e|
  double penalty(Index edge) const { return settings_.sigma * spec_.nu / mesh_->edge(edge).length; }

  /// A_h(v, w) with v the trial and w the test function.
  double bilinear(const PiecewiseFunction& v, const PiecewiseFunction& w) const;
  /// Diffusion part a_h^D(v, w).
  double diffusion(const PiecewiseFunction& v, const PiecewiseFunction& w) const;
  /// L(w)
  double linear(const PiecewiseFunction& w) const;

private:
  double evaluate(const PiecewiseFunction& v, const PiecewiseFunction& w, bool diffusion_only) const;

  const PolyMesh* mesh_;
  ProblemSpec spec_;
  FormSettings settings_;
  MeshQuadrature quad_;
  std::vector<BoundaryClass> boundary_;
};

}  // namespace prdg
