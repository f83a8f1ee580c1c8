#include "waf/foliation.hpp"

#include <cmath>
#include <limits>

#include "waf/numerics.hpp"

namespace waf {

namespace {

// Induced-area weights A = int e^{2u} dA and B = int lambda^2 e^{2u} dA; the
// leaf area is then A cosh^2 t - B sinh^2 t.
struct LeafAreaCoeffs {
  double A = 0.0;
  double B = 0.0;
  double area(double t) const {
    const double ch = std::cosh(t), sh = std::sinh(t);
    return A * ch * ch - B * sh * sh;
  }
};

LeafAreaCoeffs leaf_coeffs(const MinimalTriple& triple) {
  const Eigen::ArrayXd e2u = (2.0 * triple.solution.u.values.array()).exp();
  const Eigen::ArrayXd w = e2u * triple.mesh.vertex_area.array();
  LeafAreaCoeffs c;
  c.A = w.sum();
  const Eigen::ArrayXd lam2 =
      triple.q.values.array() * (-2.0 * triple.solution.u.values.array()).exp() *
      (-2.0 * triple.solution.u.values.array()).exp();
  c.B = (lam2 * w).sum();
  return c;
}

void require_foliated(const MinimalTriple& triple, double tolerance) {
  const double l0 = triple.lambda0();
  if (l0 > 1.0 + tolerance)
    throw FoliationUndefinedError(
        "equidistant foliation undefined: lambda0 = " + std::to_string(l0) +
        " exceeds 1 (leaves would self-intersect)");
}

}  // namespace

std::pair<double, double> distortion_factors(double lambda, double t) {
  if (lambda < 0.0) throw ValidationError("lambda must be >= 0");
  const double ch = std::cosh(t), sh = std::sinh(t);
  return {ch + lambda * sh, ch - lambda * sh};
}

std::pair<double, double> leaf_principal_curvatures(double lambda, double t) {
  const double th = std::tanh(t);
  return {(lambda + th) / (1.0 + lambda * th), (-lambda + th) / (1.0 - lambda * th)};
}

LeafReport leaf_report(const MinimalTriple& triple, double t, double tolerance) {
  triple.validate();
  require_foliated(triple, tolerance);

  LeafReport rep;
  rep.t = t;
  const LeafAreaCoeffs c = leaf_coeffs(triple);
  rep.area = c.area(t);

  double min_dist = std::numeric_limits<double>::infinity();
  double k_lo = std::numeric_limits<double>::infinity();
  double k_hi = -std::numeric_limits<double>::infinity();
  double lambda0 = 0.0;
  for (int v = 0; v < triple.mesh.num_vertices; ++v) {
    const double lam = triple.lambda_at(v);
    lambda0 = std::max(lambda0, lam);
    const auto [d1, d2] = distortion_factors(lam, t);
    min_dist = std::min(min_dist, std::min(d1, d2));
    const auto [k1, k2] = leaf_principal_curvatures(lam, t);
    k_lo = std::min(k_lo, std::min(k1, k2));
    k_hi = std::max(k_hi, std::max(k1, k2));
  }
  rep.min_distortion = min_dist;
  rep.principal_curvature_range = {k_lo, k_hi};
  rep.convex = std::abs(std::tanh(t)) >= lambda0;
  return rep;
}

double slab_volume(const MinimalTriple& triple, double t1, double t2,
                   double tolerance) {
  triple.validate();
  require_foliated(triple, tolerance);
  if (t1 > t2) throw ValidationError("slab requires t1 <= t2");
  const LeafAreaCoeffs c = leaf_coeffs(triple);
  return integrate_adaptive([&](double t) { return c.area(t); }, t1, t2, 1e-6);
}

double slab_volume_closed_form(const MinimalTriple& triple, double t1, double t2) {
  triple.validate();
  const LeafAreaCoeffs c = leaf_coeffs(triple);
  // int cosh^2 = t/2 + sinh(2t)/4, int sinh^2 = -t/2 + sinh(2t)/4.
  const auto anti = [&](double t) {
    return 0.5 * (c.A + c.B) * t + 0.25 * (c.A - c.B) * std::sinh(2.0 * t);
  };
  return anti(t2) - anti(t1);
}

double core_volume_bound(double lambda0, int genus) {
  if (lambda0 < 0.0) throw ValidationError("lambda0 must be >= 0");
  if (genus < 2) throw ValidationError("genus must be >= 2");
  if (lambda0 >= 1.0) return std::numeric_limits<double>::infinity();
  return 4.0 * M_PI * (genus - 1) *
         (lambda0 / (1.0 - lambda0 * lambda0) +
          0.5 * std::log((1.0 + lambda0) / (1.0 - lambda0)));
}

LeafReport FoliationModel::leaf(double t) const { return leaf_report(*triple, t); }

std::vector<LeafReport> FoliationModel::sample(int count) const {
  if (count < 2) throw ValidationError("foliation sampling needs count >= 2");
  std::vector<LeafReport> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double t = t_min + (t_max - t_min) * i / (count - 1);
    out.push_back(leaf(t));
  }
  return out;
}

FoliationModel make_foliation(std::shared_ptr<const MinimalTriple> triple,
                              double t_min, double t_max) {
  if (triple == nullptr) throw ValidationError("foliation needs a triple");
  if (!(t_min <= t_max)) throw ValidationError("foliation needs t_min <= t_max");
  triple->validate();
  require_foliated(*triple, 1e-3);
  return FoliationModel{std::move(triple), t_min, t_max};
}

}  // namespace waf
