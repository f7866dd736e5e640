#include "prdg/assembly.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <Eigen/SparseLU>
#ifdef PRDG_HAVE_UMFPACK
#include <Eigen/UmfPackSupport>
#endif
#include <unsupported/Eigen/IterativeSolvers>

#include "prdg/error.hpp"

namespace prdg {

namespace {

// shape-function values and gradients of one element's patch at a set of points
struct LocalTable {
  Eigen::MatrixXd values;  // nq x M
  Eigen::MatrixXd dx;
  Eigen::MatrixXd dy;
};

LocalTable tabulate(const LocalReconstruction& rec, const QuadRule& rule) {
  const auto nq = static_cast<Eigen::Index>(rule.size());
  const auto n = static_cast<Eigen::Index>(rec.basis.size());
  // row-major so each quadrature point fills one contiguous row
  using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  RowMat mv(nq, n), mx(nq, n), my(nq, n);
  for (Eigen::Index q = 0; q < nq; ++q) rec.basis.evaluate(rule[q].x, mv.row(q).data(), mx.row(q).data(), my.row(q).data());
  return {mv.lazyProduct(rec.coefficients), mx.lazyProduct(rec.coefficients), my.lazyProduct(rec.coefficients)};
}

// adds block(a, b) to A(dofs[a], dofs[b]); every pair must lie in the pattern
void scatter(SparseMatrix& A, const std::vector<Index>& dofs, const Eigen::MatrixXd& block) {
  const std::size_t n = dofs.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return dofs[x] < dofs[y]; });
  const int* outer = A.outerIndexPtr();
  const int* inner = A.innerIndexPtr();
  double* values = A.valuePtr();
  for (std::size_t a = 0; a < n; ++a) {
    const Index row = dofs[a];
    int p = outer[row];
    const int end = outer[row + 1];
    for (std::size_t b : order) {
      const auto col = static_cast<int>(dofs[b]);
      while (p < end && inner[p] < col) ++p;
      if (p == end || inner[p] != col) throw Error("assembly entry outside the sparsity pattern");
      values[p] += block(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
    }
  }
}

}  // namespace

std::vector<std::vector<Index>> sparsity_pattern(const ReconstructionSpace& space) {
  const PolyMesh& mesh = space.mesh();
  std::vector<std::vector<Index>> rows(space.num_dofs());
  auto couple = [&](const std::vector<Index>& dofs) {
    for (Index i : dofs) rows[i].insert(rows[i].end(), dofs.begin(), dofs.end());
  };
  for (Index e = 0; e < mesh.num_elements(); ++e) couple(space.local(e).patch.members);
  for (const auto& edge : mesh.edges()) {
    if (edge.is_boundary()) continue;
    auto dofs = space.local(edge.left).patch.members;
    const auto& other = space.local(edge.right).patch.members;
    dofs.insert(dofs.end(), other.begin(), other.end());
    couple(dofs);
  }
  for (auto& r : rows) {
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
  }
  return rows;
}

SparseSystem assemble(const ReconstructionSpace& space, const DiscreteForms& forms, FormPart part) {
  const PolyMesh& mesh = space.mesh();
  const ProblemSpec& spec = forms.spec();
  const auto& quad = forms.quadrature();
  const double nu = spec.nu;
  const bool full = part == FormPart::full;
  const auto nt = static_cast<Eigen::Index>(space.num_dofs());

  SparseSystem sys;
  {
    auto pattern = sparsity_pattern(space);
    std::vector<Eigen::Triplet<double>> triplets;
    for (Index i = 0; i < pattern.size(); ++i)
      for (Index j : pattern[i]) triplets.emplace_back(static_cast<int>(i), static_cast<int>(j), 0.0);
    sys.matrix.resize(nt, nt);
    sys.matrix.setFromTriplets(triplets.begin(), triplets.end());
  }
  sys.rhs = Eigen::VectorXd::Zero(nt);

  // volume terms
  for (Index e = 0; e < mesh.num_elements(); ++e) {
    const auto& rec = space.local(e);
    const auto& rule = quad.elements[e];
    const LocalTable t = tabulate(rec, rule);
    const auto nq = static_cast<Eigen::Index>(rule.size());
    Eigen::VectorXd w(nq), cw(nq), bx(nq), by(nq), fw(nq);
    for (Eigen::Index q = 0; q < nq; ++q) {
      const Point& x = rule[q].x;
      w[q] = rule[q].w;
      if (full) {
        const Eigen::Vector2d b = spec.b(x);
        cw[q] = w[q] * spec.c(x);
        bx[q] = w[q] * b.x();
        by[q] = w[q] * b.y();
      }
      fw[q] = w[q] * spec.f(x);
    }
    // nu grad v . grad w + c v w - v b . grad w, v the trial and w the test function
    Eigen::MatrixXd gx = (nu * w).asDiagonal() * t.dx, gy = (nu * w).asDiagonal() * t.dy;
    if (full) {
      gx -= bx.asDiagonal() * t.values;
      gy -= by.asDiagonal() * t.values;
    }
    Eigen::MatrixXd block = t.dx.transpose().lazyProduct(gx) + t.dy.transpose().lazyProduct(gy);
    if (full) block += t.values.transpose().lazyProduct(cw.asDiagonal() * t.values);
    scatter(sys.matrix, rec.patch.members, block);
    const Eigen::VectorXd load = t.values.transpose() * fw;
    for (std::size_t a = 0; a < rec.patch.size(); ++a) sys.rhs[static_cast<Eigen::Index>(rec.patch.members[a])] += load[a];
  }

  // face terms
  for (Index id = 0; id < mesh.num_edges(); ++id) {
    const Edge& edge = mesh.edge(id);
    const auto& rule = quad.edges[id];
    const auto nq = static_cast<Eigen::Index>(rule.size());
    const Eigen::Vector2d& n = edge.normal;
    const double pen = forms.penalty(id);
    Eigen::VectorXd w(nq), bn(nq);
    for (Eigen::Index q = 0; q < nq; ++q) {
      w[q] = rule[q].w;
      bn[q] = full ? spec.b(rule[q].x).dot(n) : 0.0;
    }

    if (edge.is_boundary()) {
      const auto& rec = space.local(edge.left);
      const LocalTable t = tabulate(rec, rule);
      const Eigen::MatrixXd dn = n.x() * t.dx + n.y() * t.dy;
      const Eigen::MatrixXd wt = w.asDiagonal() * t.values;
      const bool inflow = forms.boundary_kind(id) == BoundaryKind::inflow;
      Eigen::MatrixXd right = pen * t.values - nu * dn;
      if (full && !inflow) right += bn.asDiagonal() * t.values;
      Eigen::MatrixXd block = wt.transpose().lazyProduct(right) - nu * dn.transpose().lazyProduct(wt);
      scatter(sys.matrix, rec.patch.members, block);

      Eigen::VectorXd gw(nq), inflow_w(nq);
      for (Eigen::Index q = 0; q < nq; ++q) {
        const double g = spec.g(rule[q].x);
        gw[q] = w[q] * g;
        inflow_w[q] = (full && inflow) ? w[q] * bn[q] * g : 0.0;
      }
      const Eigen::VectorXd load = pen * t.values.transpose() * gw - nu * dn.transpose() * gw - t.values.transpose() * inflow_w;
      for (std::size_t a = 0; a < rec.patch.size(); ++a)
        sys.rhs[static_cast<Eigen::Index>(rec.patch.members[a])] += load[a];
      continue;
    }

    const auto& r1 = space.local(edge.left);
    const auto& r2 = space.local(edge.right);
    const LocalTable t1 = tabulate(r1, rule), t2 = tabulate(r2, rule);
    const auto m1 = t1.values.cols(), m2 = t2.values.cols();
    Eigen::MatrixXd v1 = Eigen::MatrixXd::Zero(nq, m1 + m2), v2 = v1, d1 = v1, d2 = v1;
    v1.leftCols(m1) = t1.values;
    v2.rightCols(m2) = t2.values;
    d1.leftCols(m1) = n.x() * t1.dx + n.y() * t1.dy;
    d2.rightCols(m2) = n.x() * t2.dx + n.y() * t2.dy;
    const Eigen::MatrixXd jmp = v1 - v2;               // scalar jump along n
    const Eigen::MatrixXd avg_dn = 0.5 * (d1 + d2);    // {{grad}} . n
    const Eigen::MatrixXd wj = w.asDiagonal() * jmp;
    Eigen::MatrixXd right = pen * jmp - nu * avg_dn;
    if (full) right += (0.5 * bn).asDiagonal() * (v1 + v2) + (0.5 * bn.cwiseAbs()).asDiagonal() * jmp;  // upwind flux
    Eigen::MatrixXd block = wj.transpose().lazyProduct(right) - nu * avg_dn.transpose().lazyProduct(wj);
    std::vector<Index> dofs = r1.patch.members;
    dofs.insert(dofs.end(), r2.patch.members.begin(), r2.patch.members.end());
    scatter(sys.matrix, dofs, block);
  }
  return sys;
}

SolveResult solve(const SparseSystem& system, const SolveOptions& options) {
  const Eigen::SparseMatrix<double> A = system.matrix;  // column-major copy for the factorizations
  const Eigen::VectorXd& F = system.rhs;
  SolveResult result;
  const double fnorm = F.norm();
  auto residual = [&](const Eigen::VectorXd& u) {
    double r = (A * u - F).norm();
    return fnorm > 0 ? r / fnorm : r;
  };

  if (options.kind == SolverKind::lu) {
#ifdef PRDG_HAVE_UMFPACK
    Eigen::UmfPackLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(A);
    if (lu.info() != Eigen::Success) throw SolverError("sparse LU factorization failed");
#else
    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(A);
    if (lu.info() != Eigen::Success) throw SolverError("sparse LU factorization failed: " + lu.lastErrorMessage());
#endif
    result.dofs = lu.solve(F);
    // a few steps of iterative refinement
    for (int it = 0; it < 3 && residual(result.dofs) > 1e-14; ++it) {
      const Eigen::VectorXd r = F - A * result.dofs;
      result.dofs += lu.solve(r);
    }
  } else {
    Eigen::GMRES<Eigen::SparseMatrix<double>, Eigen::IncompleteLUT<double>> gmres;
    gmres.setTolerance(options.gmres_tol);
    gmres.set_restart(options.gmres_restart);
    gmres.setMaxIterations(options.gmres_max_iters);
    gmres.compute(A);
    if (gmres.info() != Eigen::Success) throw SolverError("incomplete LU preconditioner failed");
    result.dofs = gmres.solve(F);
  }
  if (!result.dofs.allFinite()) throw SolverError("solution contains non-finite values");
  result.relative_residual = residual(result.dofs);
  const double limit = fnorm > 0 ? 1e-10 : 1e-12;
  if (result.relative_residual > limit) {
    std::ostringstream msg;
    msg << "linear solve residual " << result.relative_residual << " exceeds " << limit;
    throw SolverError(msg.str());
  }
  return result;
}

void write_matrix_market(const SparseMatrix& matrix, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << matrix.rows() << ' ' << matrix.cols() << ' ' << matrix.nonZeros() << '\n';
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < matrix.outerSize(); ++i)
    for (SparseMatrix::InnerIterator it(matrix, i); it; ++it)
      out << it.row() + 1 << ' ' << it.col() + 1 << ' ' << it.value() << '\n';
}

}  // namespace prdg
