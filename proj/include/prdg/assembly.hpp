#pragma once

#include <filesystem>
#include <vector>

#include <Eigen/Sparse>

#include "prdg/forms.hpp"
#include "prdg/reconstruct.hpp"

namespace prdg {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// One row/column per element: M[i][j] = A_h(phi_j, phi_i), rhs[i] = L(phi_i).
struct SparseSystem {
  SparseMatrix matrix;
  Eigen::VectorXd rhs;

  std::size_t size() const { return static_cast<std::size_t>(rhs.size()); }
};

enum class FormPart { full, diffusion };

/// Structural pattern: (i, j) couples when both lie in the patch of one element
/// or in the patches of two face-neighbours.
std::vector<std::vector<Index>> sparsity_pattern(const ReconstructionSpace& space);

SparseSystem assemble(const ReconstructionSpace& space, const DiscreteForms& forms, FormPart part = FormPart::full);

enum class SolverKind { lu, gmres };

struct SolveOptions {
  SolverKind kind = SolverKind::lu;
  double gmres_tol = 1e-12;
  int gmres_restart = 60;
  int gmres_max_iters = 5000;
};

struct SolveResult {
  Eigen::VectorXd dofs;
  /// ||M u - F|| / ||F|| (absolute residual when F = 0)
  double relative_residual = 0.0;
};

/// Throws SolverError on a singular factorization or residual above 1e-10.
SolveResult solve(const SparseSystem& system, const SolveOptions& options = {});

/// MatrixMarket coordinate dump of the system matrix.
void write_matrix_market(const SparseMatrix& matrix, const std::filesystem::path& path);

}  // namespace prdg
