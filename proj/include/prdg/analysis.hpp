#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prdg/forms.hpp"
#include "prdg/reconstruct.hpp"

namespace prdg {

/// Per-element minimum of r = c + div(b)/2 over quadrature points.
std::vector<double> reaction_lower_bound(const DiscreteForms& forms);

/// max |b| over all volume and edge quadrature points
double max_velocity(const DiscreteForms& forms);
/// b0 = ||b||_inf / L with L the domain diameter
double velocity_scale(const DiscreteForms& forms);

/// (sum_K int_K (u - v)^2)^{1/2}
double l2_error(const ScalarField& u, const PiecewiseFunction& v, const DiscreteForms& forms);
/// broken H1 seminorm of u - v
double h1_seminorm_error(const VectorField& grad_u, const PiecewiseFunction& v, const DiscreteForms& forms);

/// Pieces of the DG-energy norm squared of u - v.
struct EnergyParts {
  double gradient = 0.0;   // nu |.|_{1,h}^2
  double penalty = 0.0;    // sum_e nu/|e| ||[.]||^2
  double reaction = 0.0;   // ||(rbar + b0)^{1/2} .||^2
  double upwind = 0.0;     // sum_e || |b.n|^{1/2} [.] ||^2
  double streamline = 0.0; // ||.||_b^2

  double diffusive() const { return gradient + penalty; }
  double energy() const { return diffusive() + reaction + upwind; }
  double supg() const { return energy() + streamline; }
};

/// DG-energy and SUPG parts for the error u - v (pass u = 0 callbacks for the norm of -v).
/// The streamline part reconstructs b . grad_h(u - v) sampled at barycenters with `space`.
EnergyParts energy_error(const ScalarField& u, const VectorField& grad_u, const PiecewiseFunction& v,
                         const DiscreteForms& forms, const ReconstructionSpace& space);

double dg_energy_error(const ScalarField& u, const VectorField& grad_u, const PiecewiseFunction& v,
                       const DiscreteForms& forms, const ReconstructionSpace& space);
double supg_error(const ScalarField& u, const VectorField& grad_u, const PiecewiseFunction& v,
                  const DiscreteForms& forms, const ReconstructionSpace& space);

/// Elements violating nu < h_K ||b||_{inf,K} / 2.
std::size_t convection_dominance_violations(const DiscreteForms& forms);

struct RunRecord {
  std::string example;
  std::string mesh;
  int k = 1;
  double nu = 1.0;
  std::size_t ncells = 0;
  std::size_t dofs = 0;
  double h = 0.0;
  double l2 = 0.0;
  double dg = 0.0;
  double supg = 0.0;
};

/// log(e1/e2) / log(h1/h2); nullopt when either error is zero or h does not change.
std::optional<double> observed_rate(double e1, double e2, double h1, double h2);

/// Consecutive rates; empty optional where undefined.
std::vector<std::optional<double>> rates(const std::vector<double>& errors, const std::vector<double>& sizes);

/// Least-squares slope of log(error) against log(size).
std::optional<double> fitted_rate(const std::vector<double>& errors, const std::vector<double>& sizes);

/// Mesh-size proxy used for rates: h for triangulations, DOF^{-1/2} otherwise.
double rate_size(const RunRecord& record);

/// CSV with columns example,mesh,k,nu,ncells,dofs,h,l2,dg,supg,rate_l2,rate_dg,rate_supg.
std::string format_csv(const std::vector<RunRecord>& records, const std::vector<std::string>& header_comments = {});

}  // namespace prdg
