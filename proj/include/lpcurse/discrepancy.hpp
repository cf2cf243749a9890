#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "lpcurse/point_set.hpp"

namespace lpcurse {

enum class DiscrepancyMethod { exact_l2, exact_star, cellwise, mc };

std::string_view to_string(DiscrepancyMethod m);

struct DiscrepancyEstimate {
  double value;
  double p; ///< +inf for the star discrepancy
  DiscrepancyMethod method;
  /// 0 for exact methods, standard error for mc, refinement delta for cellwise.
  double uncertainty;
};

inline constexpr std::uint64_t kDefaultGridCap = std::uint64_t{1} << 26;

/// sum_i w_i 1[x_i in [0,t)] - t_1 ... t_d.
double local_discrepancy(const QuadratureRule& rule, std::span<const double> t);

/// L2 norm of the local discrepancy via the pairwise (Warnock) expansion.
DiscrepancyEstimate l2_discrepancy_exact(const QuadratureRule& rule);

/// Supremum of |local discrepancy| over the critical grid of point coordinates
/// and 1. Throws ResourceError if the grid has more than `cap` corners.
DiscrepancyEstimate star_discrepancy_exact(const QuadratureRule& rule,
                                           std::uint64_t cap = kDefaultGridCap);

/// L_p norm by integrating over the cells of the coordinate grid, on each of
/// which the counting term is constant.
DiscrepancyEstimate lp_discrepancy_cellwise(const QuadratureRule& rule, double p,
                                            unsigned nodes_per_axis = 8,
                                            std::uint64_t cap = kDefaultGridCap);

/// Plain Monte Carlo estimate with a delta-method standard error.
DiscrepancyEstimate lp_discrepancy_mc(const QuadratureRule& rule, double p,
                                      std::uint64_t samples, std::uint64_t seed);

/// x -> 1 - x per coordinate; results equal to 1 are clamped to the largest
/// double below 1 so the set stays inside [0,1)^d.
PointSet reflect(const PointSet& ps);

} // namespace lpcurse
