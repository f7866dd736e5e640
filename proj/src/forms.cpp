#include "prdg/forms.hpp"

#include <cmath>
#include <memory>

#include "prdg/error.hpp"

namespace prdg {

void ProblemSpec::validate() const {
  if (!(nu > 0)) throw InvalidInput("diffusivity nu must be positive");
  if (!b || !c || !f || !g) throw InvalidInput("problem needs b, c, f and g");
}

double divergence(const ProblemSpec& spec, const Point& x, double length_scale) {
  if (spec.div_b) return spec.div_b(x);
  const double h = 1e-6 * length_scale;
  const Point ex(h, 0), ey(0, h);
  return (spec.b(x + ex).x() - spec.b(x - ex).x() + spec.b(x + ey).y() - spec.b(x - ey).y()) / (2 * h);
}

double effective_reaction(const ProblemSpec& spec, const Point& x, double length_scale) {
  return spec.c(x) + 0.5 * divergence(spec, x, length_scale);
}

BoundaryClass classify_boundary(const PolyMesh& mesh, const Edge& edge, const VectorField& b, int check_order) {
  const Point a = mesh.vertex(edge.vertices[0]), z = mesh.vertex(edge.vertices[1]);
  BoundaryClass cls;
  cls.kind = b(0.5 * (a + z)).dot(edge.normal) < 0 ? BoundaryKind::inflow : BoundaryKind::outflow;
  bool neg = false, pos = false;
  for (const auto& q : segment_quadrature(a, z, check_order)) {
    double bn = b(q.x).dot(edge.normal);
    neg |= bn < 0;
    pos |= bn > 0;
  }
  cls.mixed_sign = neg && pos;
  return cls;
}

PiecewiseFunction smooth_function(ScalarField u, VectorField grad_u) {
  return {[u = std::move(u)](Index, const Point& x) { return u(x); },
          [g = std::move(grad_u)](Index, const Point& x) { return g(x); }};
}

PiecewiseFunction polynomial_function(const ReconstructionSpace& space, std::vector<Eigen::VectorXd> coefficients) {
  auto coeffs = std::make_shared<std::vector<Eigen::VectorXd>>(std::move(coefficients));
  const ReconstructionSpace* s = &space;
  return {[s, coeffs](Index e, const Point& x) { return s->local(e).basis.values(x).dot((*coeffs)[e]); },
          [s, coeffs](Index e, const Point& x) -> Eigen::Vector2d {
            return s->local(e).basis.gradients(x).transpose() * (*coeffs)[e];
          }};
}

PiecewiseFunction reconstructed_function(const ReconstructionSpace& space, std::vector<double> dofs) {
  return polynomial_function(space, space.apply(dofs));
}

DiscreteForms::DiscreteForms(const PolyMesh& mesh, ProblemSpec spec, FormSettings settings)
    : mesh_(&mesh), spec_(std::move(spec)), settings_(settings),
      quad_(mesh, settings.volume_order, settings.edge_order) {
  spec_.validate();
  boundary_.resize(mesh.num_edges());
  for (Index e = 0; e < mesh.num_edges(); ++e)
    if (mesh.edge(e).is_boundary()) boundary_[e] = classify_boundary(mesh, mesh.edge(e), spec_.b);
}

std::size_t DiscreteForms::mixed_sign_edges() const {
  std::size_t n = 0;
  for (const auto& b : boundary_) n += b.mixed_sign;
  return n;
}

double DiscreteForms::evaluate(const PiecewiseFunction& v, const PiecewiseFunction& w, bool diffusion_only) const {
  const double nu = spec_.nu;
  double total = 0.0;
  for (Index e = 0; e < mesh_->num_elements(); ++e) {
    for (const auto& q : quad_.elements[e]) {
      const double vv = v.value(e, q.x), wv = w.value(e, q.x);
      const Eigen::Vector2d gv = v.gradient(e, q.x), gw = w.gradient(e, q.x);
      double integrand = nu * gv.dot(gw);
      if (!diffusion_only) integrand += spec_.c(q.x) * vv * wv - vv * spec_.b(q.x).dot(gw);
      total += q.w * integrand;
    }
  }
  for (Index id = 0; id < mesh_->num_edges(); ++id) {
    const Edge& edge = mesh_->edge(id);
    const Eigen::Vector2d& n = edge.normal;
    const double pen = penalty(id);
    for (const auto& q : quad_.edges[id]) {
      double integrand = 0.0;
      if (edge.is_boundary()) {
        const double vv = v.value(edge.left, q.x), wv = w.value(edge.left, q.x);
        const double dv = v.gradient(edge.left, q.x).dot(n), dw = w.gradient(edge.left, q.x).dot(n);
        integrand = pen * vv * wv - nu * (dv * wv + dw * vv);
        if (!diffusion_only && boundary_[id].kind == BoundaryKind::outflow) integrand += spec_.b(q.x).dot(n) * vv * wv;
      } else {
        const Index l = edge.left, r = edge.right;
        const double v1 = v.value(l, q.x), v2 = v.value(r, q.x);
        const double w1 = w.value(l, q.x), w2 = w.value(r, q.x);
        const Eigen::Vector2d jv = jump(v1, v2, n), jw = jump(w1, w2, n);
        const Eigen::Vector2d av = nu * average(v.gradient(l, q.x), v.gradient(r, q.x));
        const Eigen::Vector2d aw = nu * average(w.gradient(l, q.x), w.gradient(r, q.x));
        integrand = pen * jv.dot(jw) - (av.dot(jw) + aw.dot(jv));
        if (!diffusion_only) integrand += upwind_normal_flux(spec_.b(q.x).dot(n), v1, v2) * (w1 - w2);
      }
      total += q.w * integrand;
    }
  }
  return total;
}

double DiscreteForms::bilinear(const PiecewiseFunction& v, const PiecewiseFunction& w) const {
  return evaluate(v, w, false);
}

double DiscreteForms::diffusion(const PiecewiseFunction& v, const PiecewiseFunction& w) const {
  return evaluate(v, w, true);
}

double DiscreteForms::linear(const PiecewiseFunction& w) const {
  const double nu = spec_.nu;
  double total = 0.0;
  for (Index e = 0; e < mesh_->num_elements(); ++e)
    for (const auto& q : quad_.elements[e]) total += q.w * spec_.f(q.x) * w.value(e, q.x);
  for (Index id = 0; id < mesh_->num_edges(); ++id) {
    const Edge& edge = mesh_->edge(id);
    if (!edge.is_boundary()) continue;
    const double pen = penalty(id);
    const bool inflow = boundary_[id].kind == BoundaryKind::inflow;
    for (const auto& q : quad_.edges[id]) {
      const double g = spec_.g(q.x);
      const double wv = w.value(edge.left, q.x);
      double integrand = (pen * wv - nu * w.gradient(edge.left, q.x).dot(edge.normal)) * g;
      if (inflow) integrand -= spec_.b(q.x).dot(edge.normal) * g * wv;
      total += q.w * integrand;
    }
  }
  return total;
}

}  // namespace prdg
