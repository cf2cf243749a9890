#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "lpcurse/analytic.hpp"
#include "lpcurse/point_set.hpp"

namespace lpcurse {

enum class FoolingMethod { decomposition, spline };
/// `paper` uses the uniform per-node bounds N*beta^d and N*alpha^d, `sharp`
/// the exact per-node integrals and norms.
enum class CertificateMode { paper, sharp };

std::string_view to_string(FoolingMethod m);
std::string_view to_string(CertificateMode m);

/// Lower bound on the worst-case error of one positive quadrature rule over
/// the unit ball of the anchored Sobolev space, from the fooling pair
/// (h_d, f*) with f* agreeing with h_d at every node.
struct Certificate {
  FoolingMethod method;
  CertificateMode mode;
  double p;
  double q;
  std::size_t d;
  std::size_t n;
  double lower_bound;
  double integral_hd;
  double integral_fstar;
  double norm_hd;
  double norm_fstar_bound;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

Certificate certify_decomposition(const QuadratureRule& rule, const HolderPair& pair,
                                  CertificateMode mode = CertificateMode::sharp);

Certificate certify_spline(const QuadratureRule& rule, const HolderPair& pair,
                           CertificateMode mode = CertificateMode::sharp);

/// Larger of the two sharp certificates; ties go to the spline one.
Certificate certify_best(const QuadratureRule& rule, const HolderPair& pair);

/// Value at x of the fooling term P_i built for `node`.
double fooling_term(FoolingMethod method, const HolderPair& pair,
                    std::span<const double> node, std::span<const double> x);

} // namespace lpcurse
