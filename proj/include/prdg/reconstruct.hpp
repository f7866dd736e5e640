#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "prdg/mesh.hpp"
#include "prdg/patch.hpp"

namespace prdg {

/// Dimension of P_k in two variables.
constexpr std::size_t num_monomials(int k) { return static_cast<std::size_t>((k + 1) * (k + 2) / 2); }

/// Scaled monomials ((x - x0)/h)^a ((y - y0)/h)^b in graded lexicographic order
/// 1, x, y, x^2, xy, y^2, ...
class MonomialBasis {
public:
  MonomialBasis() = default;
  MonomialBasis(Point anchor, double scale, int degree);

  int degree() const { return degree_; }
  std::size_t size() const { return exponents_.size(); }
  const Point& anchor() const { return anchor_; }
  double scale() const { return scale_; }
  std::span<const std::array<int, 2>> exponents() const { return exponents_; }

  Eigen::VectorXd values(const Point& x) const;
  /// n x 2 matrix of monomial gradients.
  Eigen::MatrixX2d gradients(const Point& x) const;
  /// Values and partial derivatives written to caller-provided arrays of length size().
  void evaluate(const Point& x, double* v, double* dx, double* dy) const;

private:
  Point anchor_ = Point::Zero();
  double scale_ = 1.0;
  int degree_ = 0;
  std::vector<std::array<int, 2>> exponents_;
};

/// Smallest and largest singular values of the weighted design matrix W * X (constraint removed).
struct UnisolvenceCheck {
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  bool valid = false;
};

inline constexpr double kDefaultUnisolvenceTolerance = 1e-8;

/// Rows sqrt(w_j) * m(a_j) for j >= 1, without the constant column.
Eigen::MatrixXd weighted_design_matrix(const ElementPatch& patch, const MonomialBasis& basis);

/// Valid when the design matrix has at least as many rows as columns and
/// sigma_min >= rel_tol * sigma_max.
UnisolvenceCheck check_unisolvence(const ElementPatch& patch, const MonomialBasis& basis,
                                   double rel_tol = kDefaultUnisolvenceTolerance);

/// Coefficients of the degree-k polynomial that matches values[0] at the owner
/// barycenter and fits the remaining samples in the weighted least-squares sense.
Eigen::VectorXd fit_local(const ElementPatch& patch, const MonomialBasis& basis, std::span<const double> values,
                          double rel_tol = kDefaultUnisolvenceTolerance);

/// Local reconstruction on one element: column j of `coefficients` holds the
/// local shape function lambda_j in `basis`, so P_K v = basis . (coefficients * v|_S(K)).
struct LocalReconstruction {
  ElementPatch patch;
  MonomialBasis basis;
  Eigen::MatrixXd coefficients;
  UnisolvenceCheck check;
  /// number of ring expansions needed to pass the unisolvence check
  std::size_t expansions = 0;
};

struct ReconstructionOptions {
  double rel_tol = kDefaultUnisolvenceTolerance;
  /// ring expansions allowed before giving up with UnisolvenceError
  std::size_t max_expansions = 4;
};

LocalReconstruction reconstruct_element(const PolyMesh& mesh, ElementPatch patch, int k,
                                        const ReconstructionOptions& options = {});

/// Global basis {phi_K}: phi_i restricted to element E is lambda of i in S(E), zero otherwise.
class ReconstructionSpace {
public:
  ReconstructionSpace(const PolyMesh& mesh, std::vector<ElementPatch> patches, int k,
                      const ReconstructionOptions& options = {});

  const PolyMesh& mesh() const { return *mesh_; }
  int order() const { return order_; }
  std::size_t num_dofs() const { return local_.size(); }
  const LocalReconstruction& local(Index element) const { return local_[element]; }
  /// Elements whose patch contains `i`, ascending.
  std::span<const Index> support(Index i) const { return support_[i]; }

  /// Coefficients of phi_i restricted to `element` in that element's basis.
  Eigen::VectorXd restriction(Index i, Index element) const;

  /// Coefficients of P^k v on `element` for barycenter values `dofs`.
  Eigen::VectorXd local_coefficients(Index element, std::span<const double> dofs) const;
  std::vector<Eigen::VectorXd> apply(std::span<const double> dofs) const;

  double evaluate(std::span<const double> dofs, Index element, const Point& x) const;
  Eigen::Vector2d gradient(std::span<const double> dofs, Index element, const Point& x) const;
  /// Throws InvalidInput when `x` lies outside the mesh.
  double evaluate(std::span<const double> dofs, const Point& x) const;

  /// Dense table Phi[i][j] = coefficients of phi_i on K_j
  /// (empty vector when i is not in S(K_j)). Intended for small meshes.
  std::vector<std::vector<Eigen::VectorXd>> dense_phi() const;

  /// CSV rows: element,member,c0,...,c_{n-1}
  void dump_csv(std::ostream& out) const;

private:
  const PolyMesh* mesh_;
  int order_;
  std::vector<LocalReconstruction> local_;
  std::vector<std::vector<Index>> support_;
};

/// Barycenter samples of `field`, i.e. the DOF vector whose reconstruction is P^k field.
std::vector<double> sample_barycenters(const PolyMesh& mesh, const std::function<double(const Point&)>& field);

/// Element-local coefficients of P^k v.
std::vector<Eigen::VectorXd> apply_Pk(const std::function<double(const Point&)>& field,
                                      const ReconstructionSpace& space);

}  // namespace prdg
