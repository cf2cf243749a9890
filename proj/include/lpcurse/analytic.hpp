#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>

namespace lpcurse {

/// Hölder conjugate exponents, 1/p + 1/q = 1 with both strictly inside (1, inf).
class HolderPair {
public:
  /// Throws DomainError unless p is finite and p > 1.
  static HolderPair from_p(double p);

  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }

  friend bool operator==(const HolderPair&, const HolderPair&) = default;

private:
  HolderPair(double p, double q) : p_(p), q_(q) {}
  double p_;
  double q_;
};

HolderPair holder_conjugate(double p);

// Worst-case function of the anchored Sobolev space and its tensor product.
double h1(double p, double x);
double h_d(double p, std::span<const double> x);

struct H1Stats {
  double integral; ///< p/(p+1)
  double norm;     ///< p/(p+1)^{1/q}
};
H1Stats h1_stats(const HolderPair& pair);

/// Error of the zero algorithm, (p+1)^{-d/p}. Equals 1 at d = 0.
double initial_error(const HolderPair& pair, unsigned d);

/// The three pieces of h1 split at the knot a = 1 - 2^{-1/(p+1)}.
struct DecompositionParts {
  double linear;     ///< h_{1,1}: ramp to h1(a), then flat
  double below_knot; ///< h_{1,2,(0)}: h1 minus the ramp on [0,a]
  double above_knot; ///< h_{1,2,(1)}: h1 - h1(a) on [a,1]
};
DecompositionParts decomposition_parts(double p, double x);

double decomposition_knot(double p);

/// Constants of the decomposition construction.
///
/// `alpha`, `beta`, `gamma`, `c_p` are the published values. `alpha` is the
/// norm of the z=0 factor h_{1,1}+h_{1,2,(0)}. The z=1 factor
/// h_{1,1}+h_{1,2,(1)} also carries the ramp of slope h1(a)/a on [0,a]; its
/// norm is `alpha_ramp`, which is what a valid certificate has to use.
struct DecompositionConstants {
  double a;
  double alpha;
  double alpha_ramp;
  double integral_low; ///< integral of the z=0 factor, (1/2) p/(p+1)
  double beta;         ///< integral of the z=1 factor (the larger one)
  double gamma;
  double c_p;
};
DecompositionConstants decomposition_constants(const HolderPair& pair);

/// Linear spline through the origin and (y, h1(y)), flat afterwards.
/// y = 0 gives the zero function.
double spline_eval(double p, double y, double x);

struct SplineStats {
  double norm;
  double integral;
};
SplineStats spline_point_stats(const HolderPair& pair, double y);

struct SplineConstants {
  double alpha;
  double y_alpha;
  double beta;
  double y_beta;
  double c_tilde;
};
SplineConstants spline_constants(const HolderPair& pair);

struct ScalarMax {
  double argmax;
  double max;
};

/// Global maximizer on [lo, hi]: uniform scan of `grid_points` points, then
/// golden-section refinement around the best grid point down to `tol`.
/// Throws DomainError on a non-finite value and ConvergenceError if the
/// bracket does not shrink below `tol`.
ScalarMax maximize_scalar(const std::function<double(double)>& f, double lo, double hi,
                          double tol = 1e-12, unsigned grid_points = 4096);

enum class CurseConstant { cp, cptilde };

/// max(1, ceil(C^d (1 - 2 eps))), a lower bound on the number of nodes any
/// positive quadrature rule needs to reduce the initial error by eps.
std::uint64_t inverse_lower_bound(const HolderPair& pair, unsigned d, double eps,
                                  CurseConstant method);

enum class KnownBound { l2, star };

struct InverseBounds {
  std::optional<double> lower;
  double upper;
};

/// Literature bounds on the inverse of L2 and star discrepancy.
InverseBounds known_inverse_bounds(KnownBound kind, unsigned d, double eps);

} // namespace lpcurse
