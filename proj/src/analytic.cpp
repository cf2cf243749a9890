#include "lpcurse/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "lpcurse/errors.hpp"

namespace lpcurse {

namespace {

void check_exponent(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw DomainError("exponent p=" + std::to_string(p) +
                      " outside (1, inf); p=1 and p=inf are not covered by the curse bounds");
  }
}

void check_unit(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError(std::string(name) + "=" + std::to_string(x) + " outside [0, 1]");
  }
}

// 1 - (1-x)^p without cancellation for small x.
double one_minus_pow(double p, double x) { return -std::expm1(p * std::log1p(-x)); }

} // namespace

HolderPair HolderPair::from_p(double p) {
  check_exponent(p);
  const double q = p / (p - 1.0);
  if (!(q > 1.0) || !std::isfinite(q)) {
    throw DomainError("exponent p=" + std::to_string(p) + " has no representable conjugate q > 1");
  }
  return HolderPair(p, q);
}

HolderPair holder_conjugate(double p) { return HolderPair::from_p(p); }

double h1(double p, double x) {
  check_exponent(p);
  check_unit(x, "x");
  return one_minus_pow(p, x);
}

double h_d(double p, std::span<const double> x) {
  if (x.empty()) throw DomainError("h_d needs a point of dimension >= 1");
  double prod = 1.0;
  for (double xk : x) prod *= h1(p, xk);
  return prod;
}

H1Stats h1_stats(const HolderPair& pair) {
  const double p = pair.p();
  return {p / (p + 1.0), p / std::pow(p + 1.0, 1.0 / pair.q())};
}

double initial_error(const HolderPair& pair, unsigned d) {
  return std::pow(pair.p() + 1.0, -static_cast<double>(d) / pair.p());
}

double decomposition_knot(double p) {
  check_exponent(p);
  return -std::expm1(-std::log(2.0) / (p + 1.0));
}

DecompositionParts decomposition_parts(double p, double x) {
  const double a = decomposition_knot(p);
  check_unit(x, "x");
  const double h1a = one_minus_pow(p, a);
  const double slope = h1a / a;
  const double hx = one_minus_pow(p, x);
  DecompositionParts parts{slope * std::min(x, a), 0.0, 0.0};
  // max(0, .) only absorbs rounding: both remainders are >= 0 by concavity.
  if (x <= a) parts.below_knot = std::max(0.0, hx - slope * x);
  if (x >= a) parts.above_knot = std::max(0.0, hx - h1a);
  return parts;
}

DecompositionConstants decomposition_constants(const HolderPair& pair) {
  const double p = pair.p();
  const double q = pair.q();
  const auto [integral_h1, norm_h1] = h1_stats(pair);
  const double a = decomposition_knot(p);
  const double h1a = one_minus_pow(p, a);

  DecompositionConstants c{};
  c.a = a;
  c.alpha = norm_h1 / std::pow(2.0, 1.0 / q);
  // a * (h1(a)/a)^q from the ramp, plus the integral of |h1'|^q over [a,1],
  // which is half of ||h1||^q by the choice of a.
  c.alpha_ramp = std::pow(a * std::pow(h1a / a, q) + 0.5 * std::pow(norm_h1, q), 1.0 / q);
  c.integral_low = 0.5 * integral_h1;
  c.beta = 0.5 * integral_h1 +
           (1.0 + std::pow(2.0, p / (p + 1.0)) - std::pow(2.0, 1.0 / (p + 1.0))) / 4.0;
  c.gamma = integral_h1 / c.beta;
  c.c_p = std::min(std::pow(2.0, 1.0 / q), c.gamma);
  return c;
}

double spline_eval(double p, double y, double x) {
  check_exponent(p);
  check_unit(y, "y");
  check_unit(x, "x");
  if (y == 0.0) return 0.0;
  const double top = one_minus_pow(p, y);
  return x < y ? x * (top / y) : top;
}

SplineStats spline_point_stats(const HolderPair& pair, double y) {
  check_unit(y, "y");
  if (y == 0.0) return {0.0, 0.0};
  const double top = one_minus_pow(pair.p(), y);
  return {top / std::pow(y, 1.0 / pair.p()), top * (1.0 - 0.5 * y)};
}

SplineConstants spline_constants(const HolderPair& pair) {
  const auto norm = maximize_scalar(
      [&](double y) { return spline_point_stats(pair, y).norm; }, 0.0, 1.0);
  const auto integral = maximize_scalar(
      [&](double y) { return spline_point_stats(pair, y).integral; }, 0.0, 1.0);
  const auto [integral_h1, norm_h1] = h1_stats(pair);
  return {norm.max, norm.argmax, integral.max, integral.argmax,
          std::min(norm_h1 / norm.max, integral_h1 / integral.max)};
}

ScalarMax maximize_scalar(const std::function<double(double)>& f, double lo, double hi,
                          double tol, unsigned grid_points) {
  if (!(lo < hi) || !(tol > 0.0) || grid_points < 2) {
    throw DomainError("maximize_scalar needs lo < hi, tol > 0 and at least two grid points");
  }
  auto eval = [&](double x) {
    const double v = f(x);
    if (!std::isfinite(v)) {
      throw DomainError("objective is not finite at x=" + std::to_string(x));
    }
    return v;
  };

  const double step = (hi - lo) / (grid_points - 1);
  auto grid_x = [&](unsigned i) { return i + 1 == grid_points ? hi : lo + i * step; };
  unsigned best = 0;
  double best_value = eval(lo);
  for (unsigned i = 1; i < grid_points; ++i) {
    const double v = eval(grid_x(i));
    if (v > best_value) {
      best = i;
      best_value = v;
    }
  }

  double left = grid_x(best == 0 ? 0 : best - 1);
  double right = grid_x(std::min(best + 1, grid_points - 1));
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = right - ratio * (right - left);
  double x2 = left + ratio * (right - left);
  double f1 = eval(x1);
  double f2 = eval(x2);
  constexpr int kMaxIterations = 500;
  int iter = 0;
  for (; right - left > tol && iter < kMaxIterations; ++iter) {
    if (f1 < f2) {
      left = x1;
      x1 = x2;
      f1 = f2;
      x2 = left + ratio * (right - left);
      f2 = eval(x2);
    } else {
      right = x2;
      x2 = x1;
      f2 = f1;
      x1 = right - ratio * (right - left);
      f1 = eval(x1);
    }
  }
  if (right - left > tol) {
    throw ConvergenceError("golden-section bracket stuck at width " +
                           std::to_string(right - left) + " > tol");
  }

  ScalarMax result{grid_x(best), best_value};
  const double mid = 0.5 * (left + right);
  for (auto [x, v] : {std::pair{x1, f1}, std::pair{x2, f2}, std::pair{mid, eval(mid)}}) {
    if (v > result.max) result = {x, v};
  }
  return result;
}

std::uint64_t inverse_lower_bound(const HolderPair& pair, unsigned d, double eps,
                                  CurseConstant method) {
  if (d == 0) throw DomainError("dimension must be >= 1");
  if (!(eps > 0.0 && eps < 0.5)) {
    throw DomainError("eps=" + std::to_string(eps) +
                      " outside (0, 1/2); the curse bound N >= C^d (1 - 2 eps) needs eps < 1/2");
  }
  const double c = method == CurseConstant::cp ? decomposition_constants(pair).c_p
                                               : spline_constants(pair).c_tilde;
  const double bound = std::ceil(std::pow(c, static_cast<double>(d)) * (1.0 - 2.0 * eps));
  if (!(bound < 0x1.0p63)) {
    throw DomainError("inverse bound exceeds the 64-bit integer range");
  }
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(bound));
}

InverseBounds known_inverse_bounds(KnownBound kind, unsigned d, double eps) {
  if (d == 0) throw DomainError("dimension must be >= 1");
  if (!(eps > 0.0 && eps < 1.0)) {
    throw DomainError("eps=" + std::to_string(eps) + " outside (0, 1)");
  }
  const double dd = static_cast<double>(d);
  if (kind == KnownBound::l2) {
    return {std::pow(1.125, dd) * (1.0 - eps * eps), std::pow(1.5, dd) / (eps * eps)};
  }
  // Only an existential constant is known for the star lower bound.
  return {std::nullopt, 6.23401 * dd / (eps * eps)};
}

} // namespace lpcurse
