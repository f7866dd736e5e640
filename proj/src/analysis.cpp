#include "prdg/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace prdg {

std::vector<double> reaction_lower_bound(const DiscreteForms& forms) {
  const PolyMesh& mesh = forms.mesh();
  const double L = mesh.domain_diameter();
  std::vector<double> rbar(mesh.num_elements(), std::numeric_limits<double>::infinity());
  for (Index e = 0; e < mesh.num_elements(); ++e)
    for (const auto& q : forms.quadrature().elements[e])
      rbar[e] = std::min(rbar[e], effective_reaction(forms.spec(), q.x, L));
  return rbar;
}

double max_velocity(const DiscreteForms& forms) {
  double m = 0.0;
  for (const auto& rule : forms.quadrature().elements)
    for (const auto& q : rule) m = std::max(m, forms.spec().b(q.x).norm());
  for (const auto& rule : forms.quadrature().edges)
    for (const auto& q : rule) m = std::max(m, forms.spec().b(q.x).norm());
  return m;
}

double velocity_scale(const DiscreteForms& forms) { return max_velocity(forms) / forms.mesh().domain_diameter(); }

namespace {

// max |b| over an element's quadrature points and vertices
std::vector<double> element_velocity(const DiscreteForms& forms) {
  const PolyMesh& mesh = forms.mesh();
  std::vector<double> out(mesh.num_elements(), 0.0);
  for (Index e = 0; e < mesh.num_elements(); ++e) {
    for (const auto& q : forms.quadrature().elements[e]) out[e] = std::max(out[e], forms.spec().b(q.x).norm());
    for (Index v : mesh.element(e)) out[e] = std::max(out[e], forms.spec().b(mesh.vertex(v)).norm());
  }
  return out;
}

}  // namespace

double l2_error(const ScalarField& u, const PiecewiseFunction& v, const DiscreteForms& forms) {
  double s = 0.0;
  for (Index e = 0; e < forms.mesh().num_elements(); ++e)
    for (const auto& q : forms.quadrature().elements[e]) {
      double d = u(q.x) - v.value(e, q.x);
      s += q.w * d * d;
    }
  return std::sqrt(s);
}

double h1_seminorm_error(const VectorField& grad_u, const PiecewiseFunction& v, const DiscreteForms& forms) {
  double s = 0.0;
  for (Index e = 0; e < forms.mesh().num_elements(); ++e)
    for (const auto& q : forms.quadrature().elements[e]) s += q.w * (grad_u(q.x) - v.gradient(e, q.x)).squaredNorm();
  return std::sqrt(s);
}

EnergyParts energy_error(const ScalarField& u, const VectorField& grad_u, const PiecewiseFunction& v,
                         const DiscreteForms& forms, const ReconstructionSpace& space) {
  const PolyMesh& mesh = forms.mesh();
  const ProblemSpec& spec = forms.spec();
  const auto& quad = forms.quadrature();
  const double nu = spec.nu;
  const auto rbar = reaction_lower_bound(forms);
  const double b0 = velocity_scale(forms);
  EnergyParts parts;

  for (Index e = 0; e < mesh.num_elements(); ++e)
    for (const auto& q : quad.elements[e]) {
      const double d = u(q.x) - v.value(e, q.x);
      parts.gradient += q.w * nu * (grad_u(q.x) - v.gradient(e, q.x)).squaredNorm();
      parts.reaction += q.w * (rbar[e] + b0) * d * d;
    }

  for (Index id = 0; id < mesh.num_edges(); ++id) {
    const Edge& edge = mesh.edge(id);
    for (const auto& q : quad.edges[id]) {
      const double ul = u(q.x) - v.value(edge.left, q.x);
      const double ur = edge.is_boundary() ? 0.0 : u(q.x) - v.value(edge.right, q.x);
      const double j2 = (ul - ur) * (ul - ur);
      parts.penalty += q.w * nu / edge.length * j2;
      parts.upwind += q.w * std::abs(spec.b(q.x).dot(edge.normal)) * j2;
    }
  }

  const auto bK = element_velocity(forms);
  std::vector<double> samples(mesh.num_elements());
  for (Index e = 0; e < mesh.num_elements(); ++e) {
    const Point& a = mesh.barycenter(e);
    samples[e] = spec.b(a).dot(grad_u(a) - v.gradient(e, a));
  }
  const auto coeffs = space.apply(samples);
  for (Index e = 0; e < mesh.num_elements(); ++e) {
    if (bK[e] <= 0) continue;
    double s = 0.0;
    for (const auto& q : quad.elements[e]) {
      double p = space.local(e).basis.values(q.x).dot(coeffs[e]);
      s += q.w * p * p;
    }
    parts.streamline += mesh.diameter(e) / bK[e] * s;
  }
  return parts;
}

double dg_energy_error(const ScalarField& u, const VectorField& grad_u, const PiecewiseFunction& v,
                       const DiscreteForms& forms, const ReconstructionSpace& space) {
  return std::sqrt(energy_error(u, grad_u, v, forms, space).energy());
}

double supg_error(const ScalarField& u, const VectorField& grad_u, const PiecewiseFunction& v,
                  const DiscreteForms& forms, const ReconstructionSpace& space) {
  return std::sqrt(energy_error(u, grad_u, v, forms, space).supg());
}

std::size_t convection_dominance_violations(const DiscreteForms& forms) {
  const auto bK = element_velocity(forms);
  std::size_t n = 0;
  for (Index e = 0; e < forms.mesh().num_elements(); ++e)
    n += !(forms.spec().nu < forms.mesh().diameter(e) * bK[e] / 2);
  return n;
}

std::optional<double> observed_rate(double e1, double e2, double h1, double h2) {
  if (!(e1 > 0) || !(e2 > 0) || !(h1 > 0) || !(h2 > 0) || h1 == h2) return std::nullopt;
  return std::log(e1 / e2) / std::log(h1 / h2);
}

std::vector<std::optional<double>> rates(const std::vector<double>& errors, const std::vector<double>& sizes) {
  std::vector<std::optional<double>> out;
  for (std::size_t i = 1; i < errors.size() && i < sizes.size(); ++i)
    out.push_back(observed_rate(errors[i - 1], errors[i], sizes[i - 1], sizes[i]));
  return out;
}

std::optional<double> fitted_rate(const std::vector<double>& errors, const std::vector<double>& sizes) {
  const std::size_t n = std::min(errors.size(), sizes.size());
  if (n < 2) return std::nullopt;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(errors[i] > 0) || !(sizes[i] > 0)) return std::nullopt;
    double x = std::log(sizes[i]), y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double den = n * sxx - sx * sx;
  if (den == 0) return std::nullopt;
  return (n * sxy - sx * sy) / den;
}

double rate_size(const RunRecord& record) {
  if (record.mesh == "tri") return record.h;
  return 1.0 / std::sqrt(static_cast<double>(record.dofs));
}

std::string format_csv(const std::vector<RunRecord>& records, const std::vector<std::string>& header_comments) {
  std::ostringstream out;
  for (const auto& c : header_comments) out << "# " << c << '\n';
  out << "example,mesh,k,nu,ncells,dofs,h,l2,dg,supg,rate_l2,rate_dg,rate_supg\n";
  out << std::setprecision(10);
  auto rate_cell = [&](std::size_t i, double RunRecord::*field) {
    if (i == 0 || records[i - 1].example != records[i].example || records[i - 1].mesh != records[i].mesh) return;
    auto r = observed_rate(records[i - 1].*field, records[i].*field, rate_size(records[i - 1]), rate_size(records[i]));
    if (r) out << *r;
  };
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    out << r.example << ',' << r.mesh << ',' << r.k << ',' << r.nu << ',' << r.ncells << ',' << r.dofs << ',' << r.h
        << ',' << r.l2 << ',' << r.dg << ',' << r.supg << ',';
    rate_cell(i, &RunRecord::l2);
    out << ',';
    rate_cell(i, &RunRecord::dg);
    out << ',';
    rate_cell(i, &RunRecord::supg);
    out << '\n';
  }
  return out.str();
}

}  // namespace prdg
