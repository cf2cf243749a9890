#include "lpcurse/certifier.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lpcurse/errors.hpp"

namespace lpcurse {

std::string_view to_string(FoolingMethod m) {
  return m == FoolingMethod::decomposition ? "decomposition" : "spline";
}

std::string_view to_string(CertificateMode m) {
  return m == CertificateMode::paper ? "paper" : "sharp";
}

namespace {

struct FoolingTotals {
  double integral;
  double norm;
};

Certificate finish(FoolingMethod method, CertificateMode mode, const QuadratureRule& rule,
                   const HolderPair& pair, FoolingTotals fstar) {
  const auto stats = h1_stats(pair);
  const double d = static_cast<double>(rule.dim());
  Certificate c{};
  c.method = method;
  c.mode = mode;
  c.p = pair.p();
  c.q = pair.q();
  c.d = rule.dim();
  c.n = rule.size();
  c.integral_hd = std::pow(stats.integral, d);
  c.integral_fstar = fstar.integral;
  c.norm_hd = std::pow(stats.norm, d);
  c.norm_fstar_bound = fstar.norm;
  c.lower_bound = std::max(0.0, c.integral_hd - c.integral_fstar) /
                  (2.0 * std::max(c.norm_hd, c.norm_fstar_bound));
  return c;
}

// Sum over nodes of prod over coordinates of factor(x).
template <class Factor>
FoolingTotals sum_of_products(const PointSet& ps, Factor&& factor) {
  FoolingTotals totals{0.0, 0.0};
  for (std::size_t i = 0; i < ps.size(); ++i) {
    double integral = 1.0;
    double norm = 1.0;
    for (double x : ps.point(i)) {
      const auto [fi, fn] = factor(x);
      integral *= fi;
      norm *= fn;
    }
    totals.integral += integral;
    totals.norm += norm;
  }
  return totals;
}

} // namespace

Certificate certify_decomposition(const QuadratureRule& rule, const HolderPair& pair,
                                  CertificateMode mode) {
  const auto dc = decomposition_constants(pair);
  FoolingTotals fstar{};
  if (mode == CertificateMode::paper) {
    const double n = static_cast<double>(rule.size());
    const double d = static_cast<double>(rule.dim());
    // alpha_ramp >= alpha bounds both factor norms.
    fstar = {n * std::pow(dc.beta, d), n * std::pow(dc.alpha_ramp, d)};
  } else {
    // x <= a takes the z=0 factor (h1 then flat), x > a the z=1 factor
    // (ramp then h1); either way the factor matches h1 at x.
    fstar = sum_of_products(rule.points(), [&](double x) {
      return x <= dc.a ? FoolingTotals{dc.integral_low, dc.alpha}
                       : FoolingTotals{dc.beta, dc.alpha_ramp};
    });
  }
  return finish(FoolingMethod::decomposition, mode, rule, pair, fstar);
}

Certificate certify_spline(const QuadratureRule& rule, const HolderPair& pair,
                           CertificateMode mode) {
  FoolingTotals fstar{};
  if (mode == CertificateMode::paper) {
    const auto sc = spline_constants(pair);
    const double n = static_cast<double>(rule.size());
    const double d = static_cast<double>(rule.dim());
    fstar = {n * std::pow(sc.beta, d), n * std::pow(sc.alpha, d)};
  } else {
    fstar = sum_of_products(rule.points(), [&](double x) {
      const auto s = spline_point_stats(pair, x);
      return FoolingTotals{s.integral, s.norm};
    });
  }
  return finish(FoolingMethod::spline, mode, rule, pair, fstar);
}

Certificate certify_best(const QuadratureRule& rule, const HolderPair& pair) {
  auto decomposition = certify_decomposition(rule, pair, CertificateMode::sharp);
  auto spline = certify_spline(rule, pair, CertificateMode::sharp);
  return spline.lower_bound >= decomposition.lower_bound ? spline : decomposition;
}

double fooling_term(FoolingMethod method, const HolderPair& pair, std::span<const double> node,
                    std::span<const double> x) {
  if (node.size() != x.size() || node.empty()) {
    throw DomainError("dimension mismatch between node and evaluation point");
  }
  const double p = pair.p();
  const double a = decomposition_knot(p);
  double prod = 1.0;
  for (std::size_t k = 0; k < node.size(); ++k) {
    if (method == FoolingMethod::spline) {
      prod *= spline_eval(p, node[k], x[k]);
    } else {
      const auto parts = decomposition_parts(p, x[k]);
      prod *= parts.linear + (node[k] <= a ? parts.below_knot : parts.above_knot);
    }
  }
  return prod;
}

} // namespace lpcurse
