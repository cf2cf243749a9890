#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "lpcurse/certifier.hpp"
#include "lpcurse/discrepancy.hpp"
#include "lpcurse/errors.hpp"
#include "oracles.hpp"

using namespace lpcurse;

namespace {

QuadratureRule constant_rule(std::size_t d, std::size_t n, double x = 0.5) {
  return QuadratureRule::qmc(PointSet(d, std::vector<double>(n * d, x)));
}

// Smallest N in [1, hi] with pred(N) true, for pred monotone in N.
template <class Pred> std::uint64_t first_true(std::uint64_t hi, Pred&& pred) {
  std::uint64_t lo = 1;
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (pred(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

} // namespace

TEST(Certificate, EmptyRuleIsHalfInitialError) {
  for (double p : {1.5, 2.0, 3.0, 10.0}) {
    const auto pair = holder_conjugate(p);
    for (std::size_t d = 1; d <= 6; ++d) {
      const auto rule = constant_rule(d, 0);
      const double half = initial_error(pair, static_cast<unsigned>(d)) / 2;
      for (auto mode : {CertificateMode::paper, CertificateMode::sharp}) {
        EXPECT_NEAR(certify_decomposition(rule, pair, mode).lower_bound, half, 1e-12);
        EXPECT_NEAR(certify_spline(rule, pair, mode).lower_bound, half, 1e-12);
      }
      EXPECT_NEAR(certify_best(rule, pair).lower_bound, half, 1e-12);
    }
  }
}

TEST(Certificate, Fields) {
  const auto pair = holder_conjugate(3);
  const auto rule = QuadratureRule::qmc(PointSet(2, {0.2, 0.4, 0.6, 0.8, 0.1, 0.9}));
  const auto c = certify_spline(rule, pair, CertificateMode::paper);
  EXPECT_EQ(c.method, FoolingMethod::spline);
  EXPECT_EQ(c.mode, CertificateMode::paper);
  EXPECT_EQ(c.p, 3.0);
  EXPECT_DOUBLE_EQ(c.q, 1.5);
  EXPECT_EQ(c.d, 2u);
  EXPECT_EQ(c.n, 3u);
  EXPECT_NEAR(c.integral_hd, 0.5625, 1e-15);
  const double norm1 = 3.0 / std::pow(4.0, 1.0 / 1.5);
  EXPECT_NEAR(c.norm_hd, norm1 * norm1, 1e-14);
  const auto sc = spline_constants(pair);
  EXPECT_NEAR(c.integral_fstar, 3 * sc.beta * sc.beta, 1e-14);
  EXPECT_NEAR(c.norm_fstar_bound, 3 * sc.alpha * sc.alpha, 1e-14);
  const double expected = std::max(0.0, c.integral_hd - c.integral_fstar) /
                          (2 * std::max(c.norm_hd, c.norm_fstar_bound));
  EXPECT_DOUBLE_EQ(c.lower_bound, expected);
}

TEST(Certificate, DecompositionNodeAtKnot) {
  const auto pair = holder_conjugate(2);
  const double a = decomposition_knot(2);
  const QuadratureRule rule(PointSet(1, {a}), {1.0});
  const auto c = certify_decomposition(rule, pair);
  EXPECT_NEAR(c.integral_hd - c.integral_fstar, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(c.norm_fstar_bound, decomposition_constants(pair).alpha, 1e-15);
}

TEST(Certificate, DecompositionUsesRampNormAboveKnot) {
  const auto pair = holder_conjugate(2);
  const auto dc = decomposition_constants(pair);
  const QuadratureRule rule(PointSet(1, {0.9}), {1.0});
  const auto c = certify_decomposition(rule, pair);
  EXPECT_NEAR(c.integral_fstar, dc.beta, 1e-15);
  EXPECT_NEAR(c.norm_fstar_bound, dc.alpha_ramp, 1e-15);
}

TEST(Certificate, SplineNodeAtMaximizer) {
  const auto pair = holder_conjugate(2);
  for (double w : {0.0, 0.3, 5.0}) {
    const QuadratureRule rule(PointSet(1, {2.0 / 3.0}), {w});
    const auto c = certify_spline(rule, pair);
    EXPECT_NEAR(c.integral_fstar, 16.0 / 27.0, 1e-15);
    EXPECT_NEAR(c.norm_fstar_bound, 1.0886621, 1e-7);
  }
}

TEST(Certificate, SplineZeroCoordinateContributesNothing) {
  const auto pair = holder_conjugate(2.5);
  const QuadratureRule with_zero(PointSet(2, {0.3, 0.0, 0.6, 0.7}), {0.5, 0.5});
  const QuadratureRule without(PointSet(2, {0.6, 0.7}), {0.5});
  const auto a = certify_spline(with_zero, pair);
  const auto b = certify_spline(without, pair);
  EXPECT_EQ(a.integral_fstar, b.integral_fstar);
  EXPECT_EQ(a.norm_fstar_bound, b.norm_fstar_bound);
  EXPECT_EQ(a.lower_bound, b.lower_bound);
}

TEST(Certificate, IntegralOfFoolingFunctionMatchesQuadrature) {
  std::mt19937_64 rng(59);
  for (int r = 0; r < 12; ++r) {
    const auto rule = oracle::random_rule(rng, 2, 3, true);
    const double p = 1.2 + 6.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const auto pair = holder_conjugate(p);
    for (auto method : {FoolingMethod::decomposition, FoolingMethod::spline}) {
      // Integrate over the rectangles cut by 0, the knot, the node and 1 on
      // each axis; the fooling term is smooth inside each of them.
      double integral = 0.0;
      for (std::size_t i = 0; i < rule.size(); ++i) {
        const auto node = rule.points().point(i);
        std::vector<std::vector<double>> cuts(rule.dim());
        for (std::size_t k = 0; k < rule.dim(); ++k) {
          cuts[k] = {0.0, decomposition_knot(p), node[k], 1.0};
          std::sort(cuts[k].begin(), cuts[k].end());
        }
        auto term = [&](double x, double y) {
          const double xy[] = {x, y};
          return fooling_term(method, pair, node, std::span(xy, rule.dim()));
        };
        for (std::size_t j = 0; j + 1 < cuts[0].size(); ++j) {
          if (rule.dim() == 1) {
            integral += oracle::integrate([&](double x) { return term(x, 0.0); }, cuts[0][j],
                                             cuts[0][j + 1]);
            continue;
          }
          for (std::size_t l = 0; l + 1 < cuts[1].size(); ++l) {
            integral += oracle::integrate(
                [&](double x) {
                  return oracle::integrate([&](double y) { return term(x, y); }, cuts[1][l],
                                              cuts[1][l + 1]);
                },
                cuts[0][j], cuts[0][j + 1]);
          }
        }
      }
      const auto c = method == FoolingMethod::spline ? certify_spline(rule, pair)
                                                     : certify_decomposition(rule, pair);
      EXPECT_NEAR(c.integral_fstar, integral, 1e-9) << "p=" << p << " d=" << rule.dim();
    }
  }
}

TEST(Certificate, FoolingTermInterpolatesWorstCaseFunction) {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> exponent(1.01, 50.0), unit(0.0, 1.0);
  for (int r = 0; r < 500; ++r) {
    const auto pair = holder_conjugate(exponent(rng));
    std::vector<double> x(1 + rng() % 6);
    for (double& v : x) v = unit(rng);
    const double target = h_d(pair.p(), x);
    for (auto method : {FoolingMethod::decomposition, FoolingMethod::spline}) {
      EXPECT_NEAR(fooling_term(method, pair, x, x), target, 1e-12);
    }
  }
  // Tie at the knot picks z = 0; both branches interpolate there.
  const auto pair = holder_conjugate(3);
  const double at_knot[] = {decomposition_knot(3)};
  EXPECT_NEAR(fooling_term(FoolingMethod::decomposition, pair, at_knot, at_knot), h1(3, at_knot[0]),
              1e-15);
  const double other[] = {0.5, 0.5};
  EXPECT_THROW(fooling_term(FoolingMethod::spline, pair, at_knot, other), DomainError);
}

TEST(Certificate, SharpDominatesPaperAndBestDominatesBoth) {
  std::mt19937_64 rng(67);
  for (int r = 0; r < 100; ++r) {
    const auto rule = oracle::random_rule(rng, 3, 20, r % 2 == 0);
    const auto pair = holder_conjugate(r % 3 == 0 ? 2.0 : 1.5 + r * 0.1);
    for (auto method : {FoolingMethod::decomposition, FoolingMethod::spline}) {
      auto certify = method == FoolingMethod::spline ? certify_spline : certify_decomposition;
      const auto sharp = certify(rule, pair, CertificateMode::sharp);
      const auto paper = certify(rule, pair, CertificateMode::paper);
      EXPECT_LE(sharp.integral_fstar, paper.integral_fstar * (1 + 1e-15));
      EXPECT_LE(sharp.norm_fstar_bound, paper.norm_fstar_bound * (1 + 1e-15));
      EXPECT_GE(sharp.lower_bound, paper.lower_bound);
    }
    const auto best = certify_best(rule, pair);
    const auto dec = certify_decomposition(rule, pair);
    const auto spl = certify_spline(rule, pair);
    EXPECT_GE(best.lower_bound, dec.lower_bound);
    EXPECT_GE(best.lower_bound, spl.lower_bound);
    EXPECT_EQ(best.mode, CertificateMode::sharp);
    if (dec.lower_bound == spl.lower_bound) EXPECT_EQ(best.method, FoolingMethod::spline);
  }
}

TEST(Certificate, NeverExceedsWorstCaseError) {
  // The worst-case error equals the L_p discrepancy of the reflected rule.
  std::mt19937_64 rng(71);
  for (double p : {1.5, 2.0, 3.0}) {
    const auto pair = holder_conjugate(p);
    for (int r = 0; r < 30; ++r) {
      const auto rule = oracle::random_rule(rng, 3, 16, r % 2 == 0);
      const QuadratureRule reflected(reflect(rule.points()), rule.weights());
      const double error = lp_discrepancy_cellwise(reflected, p).value;
      for (auto mode : {CertificateMode::paper, CertificateMode::sharp}) {
        EXPECT_LE(certify_decomposition(rule, pair, mode).lower_bound, error + 1e-8);
        EXPECT_LE(certify_spline(rule, pair, mode).lower_bound, error + 1e-8);
      }
    }
  }
}

// Points clustered at one corner leave most of the mass of h_d unsampled.
TEST(Certificate, ClusteredRulesAreTight) {
  const auto pair = holder_conjugate(2);
  std::vector<double> coords;
  for (int i = 0; i < 8; ++i) coords.insert(coords.end(), {0.01 * i, 0.02 * i});
  const auto rule = QuadratureRule::qmc(PointSet(2, coords));
  const QuadratureRule reflected(reflect(rule.points()), rule.weights());
  const double error = l2_discrepancy_exact(reflected).value;
  const auto best = certify_best(rule, pair);
  EXPECT_GT(best.lower_bound, 0.0);
  EXPECT_LE(best.lower_bound, error);
}

TEST(Certificate, ScaleFree) {
  std::mt19937_64 rng(73);
  for (int r = 0; r < 50; ++r) {
    const auto rule = oracle::random_rule(rng, 4, 12, false);
    auto weights = rule.weights();
    for (double& w : weights) w *= 3.7;
    const QuadratureRule scaled(rule.points(), weights);
    const auto pair = holder_conjugate(2.5);
    for (auto mode : {CertificateMode::paper, CertificateMode::sharp}) {
      EXPECT_EQ(certify_decomposition(rule, pair, mode), certify_decomposition(scaled, pair, mode));
      EXPECT_EQ(certify_spline(rule, pair, mode), certify_spline(scaled, pair, mode));
    }
    EXPECT_EQ(certify_best(rule, pair), certify_best(scaled, pair));
  }
}

TEST(Certificate, PaperModeDegradesWithExtraNodes) {
  std::mt19937_64 rng(79);
  for (int r = 0; r < 100; ++r) {
    const auto rule = oracle::random_rule(rng, 5, 10, false);
    const std::size_t d = rule.dim();
    auto coords = rule.points().coords();
    auto weights = rule.weights();
    for (std::size_t k = 0; k < d; ++k) coords.push_back(static_cast<double>(rng() >> 11) * 0x1.0p-53);
    weights.push_back(0.1);
    const QuadratureRule bigger(PointSet(d, coords), weights);
    const auto pair = holder_conjugate(1.5 + (r % 7));
    EXPECT_LE(certify_decomposition(bigger, pair, CertificateMode::paper).lower_bound,
              certify_decomposition(rule, pair, CertificateMode::paper).lower_bound);
    EXPECT_LE(certify_spline(bigger, pair, CertificateMode::paper).lower_bound,
              certify_spline(rule, pair, CertificateMode::paper).lower_bound);
  }
}

// With the published constants the lower bound of the decomposition argument,
//   (H^d - N beta^d)_+ / (2 |h_d| max(1, N / 2^{d/q})),
// drops below eps times the initial error exactly at N = ceil(C_p^d (1 - 2 eps)).
TEST(ThresholdRecovery, PublishedConstantsReproduceInverseBound) {
  for (double p : {1.5, 2.0, 3.0, 5.0, 20.0}) {
    const auto pair = holder_conjugate(p);
    const auto dc = decomposition_constants(pair);
    for (unsigned d : {1u, 50u, 400u, 2000u}) {
      for (double eps : {0.05, 0.2, 0.45}) {
        const double dd = d;
        // Both sides divided by the initial error times |h_d|, to stay clear of underflow.
        auto below = [&](std::uint64_t n) {
          const double nn = static_cast<double>(n);
          const double lhs = std::max(0.0, 1.0 - nn * std::pow(dc.gamma, -dd));
          return lhs <= 2 * eps * std::max(1.0, nn / std::pow(2.0, dd / pair.q()));
        };
        const auto threshold = first_true(std::uint64_t{1} << 40, below);
        const auto bound = inverse_lower_bound(pair, d, eps, CurseConstant::cp);
        // The search starts at 1, like the clamp in the bound.
        EXPECT_EQ(threshold, bound) << "p=" << p << " d=" << d << " eps=" << eps;
      }
    }
  }
}

TEST(ThresholdRecovery, ShippedCertificatesRespectInverseBound) {
  for (double p : {1.5, 2.0, 3.0, 10.0}) {
    const auto pair = holder_conjugate(p);
    const auto dc = decomposition_constants(pair);
    const double ramp_constant = std::min(dc.gamma, h1_stats(pair).norm / dc.alpha_ramp);
    for (unsigned d : {1u, 10u, 40u}) {
      for (double eps : {0.05, 0.25, 0.45}) {
        const double target = eps * initial_error(pair, d);
        const auto spline_threshold = first_true(1 << 16, [&](std::uint64_t n) {
          return certify_spline(constant_rule(d, n), pair, CertificateMode::paper).lower_bound <=
                 target;
        });
        EXPECT_GE(spline_threshold, inverse_lower_bound(pair, d, eps, CurseConstant::cptilde))
            << "p=" << p << " d=" << d << " eps=" << eps;

        const auto dec_threshold = first_true(1 << 16, [&](std::uint64_t n) {
          return certify_decomposition(constant_rule(d, n), pair, CertificateMode::paper)
                     .lower_bound <= target;
        });
        const double needed = std::pow(ramp_constant, double(d)) * (1 - 2 * eps);
        EXPECT_GE(static_cast<double>(dec_threshold), std::floor(needed))
            << "p=" << p << " d=" << d << " eps=" << eps;
      }
    }
  }
}

TEST(Certificate, Errors) {
  EXPECT_THROW(QuadratureRule(PointSet(1, {0.5}), {-0.1}), DomainError);
  EXPECT_THROW(holder_conjugate(1.0), DomainError);
}

TEST(Certificate, Names) {
  EXPECT_EQ(to_string(FoolingMethod::decomposition), "decomposition");
  EXPECT_EQ(to_string(FoolingMethod::spline), "spline");
  EXPECT_EQ(to_string(CertificateMode::paper), "paper");
  EXPECT_EQ(to_string(CertificateMode::sharp), "sharp");
}
