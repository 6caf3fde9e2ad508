#include "fqnmr/special.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include <Eigen/Dense>

#include "fqnmr/constants.hpp"
#include "fqnmr/errors.hpp"

namespace fqnmr {

double erfcx(double x) {
  if (!(x >= 0.0)) throw std::domain_error("erfcx: x must be >= 0");
  if (x <= 25.0) {
    // exp(x^2) stays below ~5e271 here and erfc(x) is far from underflow,
    // so the direct product keeps full relative accuracy.
    return std::exp(x * x) * std::erfc(x);
  }
  // Asymptotic series erfcx(x) ~ (1/(x sqrt(pi))) sum_k (-1)^k (2k-1)!!/(2x^2)^k.
  // At x > 25 the q^7 term is below 1e-16.
  const double q = 0.5 / (x * x);
  double term = 1.0, sum = 1.0;
  for (int k = 1; k <= 7; ++k) {
    term *= -q * static_cast<double>(2 * k - 1);
    sum += term;
  }
  return sum / (x * std::sqrt(pi));
}

namespace {

HermiteRule make_hermite(int order) {
  // Golub-Welsch: eigen-decompose the Jacobi matrix of the Hermite recurrence.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    double b = std::sqrt(0.5 * static_cast<double>(k));
    jacobi(k - 1, k) = b;
    jacobi(k, k - 1) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  HermiteRule rule;
  rule.nodes.resize(static_cast<std::size_t>(order));
  rule.weights.resize(static_cast<std::size_t>(order));
  const double w0 = std::sqrt(pi);  // integral of the weight
  for (int i = 0; i < order; ++i) {
    rule.nodes[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    double v = es.eigenvectors()(0, i);
    rule.weights[static_cast<std::size_t>(i)] = w0 * v * v;
  }
  return rule;
}

}  // namespace

HermiteRule gauss_hermite(int order) {
  if (order < 1) throw std::domain_error("gauss_hermite: order must be >= 1");
  static std::mutex mu;
  static std::map<int, HermiteRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, make_hermite(order)).first;
  return it->second;
}

namespace {

// Kronrod 15 / Gauss 7 nodes and weights on [-1, 1].
constexpr double kron_x[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,
    0.207784955007898,  0.405845151377397,  0.586087235467691,
    0.741531185599394,  0.864864423359769,  0.949107912342759,
    0.991455371120813};
constexpr double kron_w[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979,
    0.022935322010529};
constexpr double gauss_w[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870};

struct GkEstimate {
  double integral;
  double error;
};

GkEstimate gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double ik = 0.0, ig = 0.0;
  for (int i = 0; i < 15; ++i) {
    double v = f(c + h * kron_x[i]);
    ik += kron_w[i] * v;
    if (i % 2 == 1) ig += gauss_w[i / 2] * v;
  }
  return {ik * h, std::abs(ik - ig) * h};
}

// Panels are accepted against one global tolerance (Gander-Gautschi style);
// the machine-precision and minimum-width floors keep sharp integrands from
// recursing forever.
double gk_recurse(const std::function<double(double)>& f, double a, double b,
                  double tol_abs, double min_width, int depth, int max_depth) {
  GkEstimate e = gk15(f, a, b);
  if (e.error <= tol_abs || e.error <= 5e-16 * std::abs(e.integral) ||
      (b - a) <= min_width) {
    return e.integral;
  }
  if (depth >= max_depth) {
    throw AccuracyError("integrate_gk: recursion budget exhausted");
  }
  const double c = 0.5 * (a + b);
  return gk_recurse(f, a, c, tol_abs, min_width, depth + 1, max_depth) +
         gk_recurse(f, c, b, tol_abs, min_width, depth + 1, max_depth);
}

}  // namespace

double integrate_gk(const std::function<double(double)>& f, double a, double b,
                    double rel_tol, double abs_scale, int max_depth) {
  GkEstimate whole = gk15(f, a, b);
  const double scale =
      std::max({std::abs(whole.integral), abs_scale, 1e-300});
  const double min_width = (b - a) * 1e-13;
  return gk_recurse(f, a, b, rel_tol * scale, min_width, 0, max_depth);
}

}  // namespace fqnmr
