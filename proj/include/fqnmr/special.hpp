#pragma once

#include <functional>
#include <vector>

namespace fqnmr {

// Scaled complementary error function exp(x^2) erfc(x) for x >= 0,
// usable far beyond the overflow point of the naive product.
double erfcx(double x);

// Gauss-Hermite rule for weight exp(-t^2) on (-inf, inf).
struct HermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
HermiteRule gauss_hermite(int order);

// Adaptive Gauss-Kronrod (7,15) integration of f on [a, b]. The tolerance is
// rel_tol times the integral scale; abs_scale widens that scale for
// integrals that nearly cancel. Throws AccuracyError if the recursion budget
// is exhausted.
double integrate_gk(const std::function<double(double)>& f, double a, double b,
                    double rel_tol, double abs_scale = 0.0, int max_depth = 60);

}  // namespace fqnmr
