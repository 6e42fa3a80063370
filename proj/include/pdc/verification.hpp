#pragma once

#include "pdc/material.hpp"
#include "pdc/point_cloud.hpp"
#include "pdc/types.hpp"

#include <functional>
#include <span>
#include <vector>

namespace pdc {

struct ManufacturedConsts {
  double A = 0.2;
  double B = -0.15;
  double C = -0.15;
  double D = 0.1;
};

/// u1 = A sin(pi x/2) cos(pi y/2) + B e^x e^y
/// u2 = C cos(pi x/2) sin(pi y/2) + D e^x e^y
Vec2 manufactured_solution(const Vec2& X, const ManufacturedConsts& c);

/// Body force balancing the stress of the manufactured field,
/// b = -div P(u), for the plane-strain constitutive closure.
Vec2 manufactured_body_force(const Vec2& X, const ManufacturedConsts& c, const Material& m);

/// Radial factor of the far-field term in the hole solution. plane_stress is
/// the (1-nu)/(1+nu) form; plane_strain is the (1-2nu) form, which is the
/// traction-free-hole solution under the plane-strain closure used here.
enum class AiryForm { plane_stress, plane_strain };

/// u_r = (T a / 2 mu) [ f(nu) r/a + a/r ], u = u_r (cos theta, sin theta).
Vec2 airy_hole_displacement(double r, double theta, double T, double a, const Material& m,
                            AiryForm form = AiryForm::plane_stress);

/// sqrt(sum e_i^2 / N) over all displacement components of the subset.
double rms_error(const VectorField& numeric, const std::function<Vec2(const Vec2&)>& exact,
                 const PointCloud& cloud, std::span<const int> subset);

/// Pairwise log-ratio rates; NaN marks an undefined rate (zero or negative
/// error). Requires equal lengths >= 2 and strictly decreasing spacings.
std::vector<double> convergence_rate(std::span<const double> errors,
                                     std::span<const double> spacings);

}  // namespace pdc
