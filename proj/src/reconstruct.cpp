#include "prdg/reconstruct.hpp"

#include <algorithm>
#include <ostream>

#include "prdg/error.hpp"

namespace prdg {

MonomialBasis::MonomialBasis(Point anchor, double scale, int degree)
    : anchor_(std::move(anchor)), scale_(scale), degree_(degree) {
  if (degree < 0) throw InvalidInput("monomial degree must be non-negative");
  if (!(scale > 0)) throw InvalidInput("monomial scale must be positive");
  for (int d = 0; d <= degree; ++d)
    for (int j = 0; j <= d; ++j) exponents_.push_back({d - j, j});
}

Eigen::VectorXd MonomialBasis::values(const Point& x) const {
  const double sx = (x.x() - anchor_.x()) / scale_, sy = (x.y() - anchor_.y()) / scale_;
  Eigen::VectorXd px(degree_ + 1), py(degree_ + 1);
  px[0] = py[0] = 1.0;
  for (int i = 1; i <= degree_; ++i) {
    px[i] = px[i - 1] * sx;
    py[i] = py[i - 1] * sy;
  }
  Eigen::VectorXd v(size());
  for (std::size_t i = 0; i < exponents_.size(); ++i) v[i] = px[exponents_[i][0]] * py[exponents_[i][1]];
  return v;
}

Eigen::MatrixX2d MonomialBasis::gradients(const Point& x) const {
  const double sx = (x.x() - anchor_.x()) / scale_, sy = (x.y() - anchor_.y()) / scale_;
  Eigen::VectorXd px(degree_ + 1), py(degree_ + 1);
  px[0] = py[0] = 1.0;
  for (int i = 1; i <= degree_; ++i) {
    px[i] = px[i - 1] * sx;
    py[i] = py[i - 1] * sy;
  }
  Eigen::MatrixX2d g(size(), 2);
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    auto [a, b] = exponents_[i];
    g(i, 0) = a > 0 ? a * px[a - 1] * py[b] / scale_ : 0.0;
    g(i, 1) = b > 0 ? b * px[a] * py[b - 1] / scale_ : 0.0;
  }
  return g;
}

void MonomialBasis::evaluate(const Point& x, double* v, double* dx, double* dy) const {
  constexpr int kMaxDegree = 15;
  if (degree_ > kMaxDegree) throw InvalidInput("monomial degree too large");
  const double sx = (x.x() - anchor_.x()) / scale_, sy = (x.y() - anchor_.y()) / scale_;
  std::array<double, kMaxDegree + 1> px, py;
  px[0] = py[0] = 1.0;
  for (int i = 1; i <= degree_; ++i) {
    px[i] = px[i - 1] * sx;
    py[i] = py[i - 1] * sy;
  }
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    auto [a, b] = exponents_[i];
    v[i] = px[a] * py[b];
    dx[i] = a > 0 ? a * px[a - 1] * py[b] / scale_ : 0.0;
    dy[i] = b > 0 ? b * px[a] * py[b - 1] / scale_ : 0.0;
  }
}

Eigen::MatrixXd weighted_design_matrix(const ElementPatch& patch, const MonomialBasis& basis) {
  const std::size_t rows = patch.size() - 1, cols = basis.size() - 1;
  Eigen::MatrixXd A(rows, cols);
  for (std::size_t j = 0; j < rows; ++j) {
    Eigen::VectorXd m = basis.values(patch.samples[j + 1]);
    A.row(j) = std::sqrt(patch.weights[j]) * m.tail(cols).transpose();
  }
  return A;
}

UnisolvenceCheck check_unisolvence(const ElementPatch& patch, const MonomialBasis& basis, double rel_tol) {
  UnisolvenceCheck check;
  const Eigen::MatrixXd A = weighted_design_matrix(patch, basis);
  if (A.cols() == 0) {
    check.valid = true;
    return check;
  }
  if (A.rows() == 0) return check;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
  const auto& s = svd.singularValues();
  check.sigma_max = s[0];
  check.sigma_min = A.rows() < A.cols() ? 0.0 : s[s.size() - 1];
  check.valid = A.rows() >= A.cols() && check.sigma_min >= rel_tol * check.sigma_max && check.sigma_max > 0;
  return check;
}

namespace {

// (n x M) map from patch values to coefficients; assumes the check passed
Eigen::MatrixXd coefficient_map(const ElementPatch& patch, const MonomialBasis& basis) {
  const Eigen::Index M = static_cast<Eigen::Index>(patch.size());
  const Eigen::Index n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, M);
  C(0, 0) = 1.0;
  if (n == 1) return C;
  const Eigen::MatrixXd A = weighted_design_matrix(patch, basis);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(M - 1, M - 1);
  for (Eigen::Index j = 0; j < M - 1; ++j) W(j, j) = std::sqrt(patch.weights[j]);
  const Eigen::MatrixXd G = qr.solve(W);
  C.block(1, 1, n - 1, M - 1) = G;
  C.block(1, 0, n - 1, 1) = -G.rowwise().sum();
  return C;
}

}  // namespace

Eigen::VectorXd fit_local(const ElementPatch& patch, const MonomialBasis& basis, std::span<const double> values,
                          double rel_tol) {
  if (values.size() != patch.size()) throw InvalidInput("fit_local: one value per patch member required");
  auto check = check_unisolvence(patch, basis, rel_tol);
  if (!check.valid) throw UnisolvenceError(patch.owner, check.sigma_min);
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(basis.size());
  beta[0] = values[0];
  if (basis.size() == 1) return beta;
  const Eigen::MatrixXd A = weighted_design_matrix(patch, basis);
  Eigen::VectorXd rhs(A.rows());
  for (Eigen::Index j = 0; j < A.rows(); ++j) rhs[j] = std::sqrt(patch.weights[j]) * (values[j + 1] - values[0]);
  beta.tail(basis.size() - 1) = A.colPivHouseholderQr().solve(rhs);
  return beta;
}

LocalReconstruction reconstruct_element(const PolyMesh& mesh, ElementPatch patch, int k,
                                        const ReconstructionOptions& options) {
  LocalReconstruction rec;
  rec.basis = MonomialBasis(mesh.barycenter(patch.owner), mesh.diameter(patch.owner), k);
  for (;;) {
    rec.check = check_unisolvence(patch, rec.basis, options.rel_tol);
    if (rec.check.valid) break;
    if (rec.expansions == options.max_expansions || patch.size() == mesh.num_elements())
      throw UnisolvenceError(patch.owner, rec.check.sigma_min);
    patch = expand_patch(mesh, patch);
    ++rec.expansions;
  }
  rec.coefficients = coefficient_map(patch, rec.basis);
  rec.patch = std::move(patch);
  return rec;
}

ReconstructionSpace::ReconstructionSpace(const PolyMesh& mesh, std::vector<ElementPatch> patches, int k,
                                         const ReconstructionOptions& options)
    : mesh_(&mesh), order_(k) {
  if (k < 0) throw InvalidInput("reconstruction order must be non-negative");
  if (patches.size() != mesh.num_elements()) throw InvalidInput("one patch per element required");
  local_.reserve(patches.size());
  for (auto& p : patches) local_.push_back(reconstruct_element(mesh, std::move(p), k, options));
  support_.assign(mesh.num_elements(), {});
  for (Index e = 0; e < local_.size(); ++e)
    for (Index m : local_[e].patch.members) support_[m].push_back(e);
}

Eigen::VectorXd ReconstructionSpace::restriction(Index i, Index element) const {
  const auto& rec = local_[element];
  const auto& members = rec.patch.members;
  auto it = std::find(members.begin(), members.end(), i);
  if (it == members.end()) return Eigen::VectorXd::Zero(rec.basis.size());
  return rec.coefficients.col(it - members.begin());
}

Eigen::VectorXd ReconstructionSpace::local_coefficients(Index element, std::span<const double> dofs) const {
  const auto& rec = local_[element];
  Eigen::VectorXd v(rec.patch.size());
  for (std::size_t j = 0; j < rec.patch.size(); ++j) v[j] = dofs[rec.patch.members[j]];
  return rec.coefficients * v;
}

std::vector<Eigen::VectorXd> ReconstructionSpace::apply(std::span<const double> dofs) const {
  if (dofs.size() != num_dofs()) throw InvalidInput("dof vector has wrong length");
  std::vector<Eigen::VectorXd> out;
  out.reserve(local_.size());
  for (Index e = 0; e < local_.size(); ++e) out.push_back(local_coefficients(e, dofs));
  return out;
}

double ReconstructionSpace::evaluate(std::span<const double> dofs, Index element, const Point& x) const {
  return local_[element].basis.values(x).dot(local_coefficients(element, dofs));
}

Eigen::Vector2d ReconstructionSpace::gradient(std::span<const double> dofs, Index element, const Point& x) const {
  return local_[element].basis.gradients(x).transpose() * local_coefficients(element, dofs);
}

double ReconstructionSpace::evaluate(std::span<const double> dofs, const Point& x) const {
  auto e = mesh_->locate(x);
  if (!e) throw InvalidInput("point (" + std::to_string(x.x()) + ", " + std::to_string(x.y()) + ") is outside the mesh");
  return evaluate(dofs, *e, x);
}

std::vector<std::vector<Eigen::VectorXd>> ReconstructionSpace::dense_phi() const {
  const std::size_t nt = num_dofs();
  std::vector<std::vector<Eigen::VectorXd>> phi(nt, std::vector<Eigen::VectorXd>(nt));
  for (Index i = 0; i < nt; ++i)
    for (Index j = 0; j < nt; ++j) {
      const auto& members = local_[j].patch.members;
      auto it = std::find(members.begin(), members.end(), i);
      if (it != members.end()) phi[i][j] = local_[j].coefficients.col(it - members.begin());
    }
  return phi;
}

void ReconstructionSpace::dump_csv(std::ostream& out) const {
  const auto precision = out.precision(17);
  out << "element,member";
  for (std::size_t c = 0; c < num_monomials(order_); ++c) out << ",c" << c;
  out << '\n';
  for (Index e = 0; e < local_.size(); ++e) {
    const auto& rec = local_[e];
    for (std::size_t j = 0; j < rec.patch.size(); ++j) {
      out << e << ',' << rec.patch.members[j];
      for (Eigen::Index c = 0; c < rec.coefficients.rows(); ++c) out << ',' << rec.coefficients(c, j);
      out << '\n';
    }
  }
  out.precision(precision);
}

std::vector<double> sample_barycenters(const PolyMesh& mesh, const std::function<double(const Point&)>& field) {
  std::vector<double> v(mesh.num_elements());
  for (Index e = 0; e < v.size(); ++e) v[e] = field(mesh.barycenter(e));
  return v;
}

std::vector<Eigen::VectorXd> apply_Pk(const std::function<double(const Point&)>& field,
                                      const ReconstructionSpace& space) {
  return space.apply(sample_barycenters(space.mesh(), field));
}

}  // namespace prdg
