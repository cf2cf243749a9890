#include "lpcurse/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "gauss_legendre.hpp"
#include "lpcurse/errors.hpp"
#include "lpcurse/random.hpp"

namespace lpcurse {

std::string_view to_string(DiscrepancyMethod m) {
  switch (m) {
  case DiscrepancyMethod::exact_l2: return "exact-l2";
  case DiscrepancyMethod::exact_star: return "exact-star";
  case DiscrepancyMethod::cellwise: return "cellwise";
  case DiscrepancyMethod::mc: return "mc";
  }
  return "unknown";
}

namespace {

void check_finite_exponent(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw DomainError("exponent p=" + std::to_string(p) + " outside [1, inf)");
  }
}

// Per axis: the sorted distinct point coordinates followed by 1. Corner j of
// the grid is t = (G_1[j_1], ..., G_d[j_d]).
//
// `closed[j]` holds the weight of points with x <= t componentwise. Points
// strictly below t are closed[j - 1] (all indices shifted), zero when any
// j_k = 0. That open count is also the constant counting term on the cell
// (G[j-1], G[j]] of the generalized discrepancy function.
class CriticalGrid {
public:
  CriticalGrid(const QuadratureRule& rule, std::uint64_t cap) : dim_(rule.dim()) {
    const PointSet& ps = rule.points();
    axes_.resize(dim_);
    for (std::size_t k = 0; k < dim_; ++k) {
      auto& axis = axes_[k];
      axis.reserve(ps.size() + 1);
      for (std::size_t i = 0; i < ps.size(); ++i) axis.push_back(ps.coord(i, k));
      std::sort(axis.begin(), axis.end());
      axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
      axis.push_back(1.0);
    }

    std::uint64_t total = 1;
    strides_.assign(dim_, 1);
    for (std::size_t k = dim_; k-- > 0;) {
      const std::uint64_t len = axes_[k].size();
      if (total > cap / len) {
        throw ResourceError("critical grid exceeds the cap of " + std::to_string(cap) +
                            " corners; use the Monte Carlo method");
      }
      strides_[k] = total;
      total *= len;
    }
    closed_.assign(total, 0.0);

    for (std::size_t i = 0; i < ps.size(); ++i) {
      std::size_t offset = 0;
      for (std::size_t k = 0; k < dim_; ++k) {
        const auto& axis = axes_[k];
        const auto pos = std::lower_bound(axis.begin(), axis.end(), ps.coord(i, k)) - axis.begin();
        offset += static_cast<std::size_t>(pos) * strides_[k];
      }
      closed_[offset] += rule.weights()[i];
    }
    // Prefix sums along each axis in turn; the index order is fixed so the
    // result does not depend on anything but the input.
    for (std::size_t k = 0; k < dim_; ++k) {
      const std::size_t stride = strides_[k];
      const std::size_t len = axes_[k].size();
      for (std::size_t j = 0; j < total; ++j) {
        if ((j / stride) % len != 0) closed_[j] += closed_[j - stride];
      }
    }
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return closed_.size(); }
  const std::vector<double>& axis(std::size_t k) const { return axes_[k]; }

  // Visits every corner with its index tuple and linear offset.
  template <class Fn> void for_each_corner(Fn&& fn) const {
    std::vector<std::size_t> idx(dim_, 0);
    for (std::size_t offset = 0; offset < closed_.size(); ++offset) {
      fn(std::as_const(idx), offset);
      for (std::size_t k = dim_; k-- > 0;) {
        if (++idx[k] < axes_[k].size()) break;
        idx[k] = 0;
      }
    }
  }

  double closed_count(std::size_t offset) const { return closed_[offset]; }

  double open_count(const std::vector<std::size_t>& idx, std::size_t offset) const {
    std::size_t shifted = offset;
    for (std::size_t k = 0; k < dim_; ++k) {
      if (idx[k] == 0) return 0.0;
      shifted -= strides_[k];
    }
    return closed_[shifted];
  }

private:
  std::size_t dim_;
  std::vector<std::vector<double>> axes_;
  std::vector<std::size_t> strides_;
  std::vector<double> closed_;
};

// Integral over s in [lo, hi] of |c - m s|^p, for m > 0.
double ramp_power_integral(double c, double m, double lo, double hi, double p) {
  const double top = c - m * lo; // value at lo, the larger end
  const double bottom = c - m * hi;
  const double width = m * (hi - lo);
  const double scale = 1.0 / ((p + 1.0) * m);
  if (top > 0.0 && bottom < 0.0) {
    return (std::pow(top, p + 1.0) + std::pow(-bottom, p + 1.0)) * scale;
  }
  // No sign change: integrate v^p for v from `base` to `base + width`.
  const double base = bottom >= 0.0 ? bottom : -top;
  if (base == 0.0) return std::pow(width, p + 1.0) * scale;
  return std::pow(base, p + 1.0) * std::expm1((p + 1.0) * std::log1p(width / base)) * scale;
}

// Integral of |Delta|^p over all cells of the grid.
double cellwise_power_integral(const CriticalGrid& grid, double p,
                               const detail::UnitGaussRule& gauss) {
  const std::size_t d = grid.dim();
  const std::size_t outer = d - 1;
  const std::size_t nodes = gauss.nodes.size();
  std::size_t outer_points = 1;
  for (std::size_t k = 0; k < outer; ++k) outer_points *= nodes;

  std::vector<double> lo(d), hi(d);
  std::vector<std::size_t> node_idx(outer);
  double total = 0.0;

  grid.for_each_corner([&](const std::vector<std::size_t>& idx, std::size_t offset) {
    for (std::size_t k = 0; k < d; ++k) {
      const auto& axis = grid.axis(k);
      lo[k] = idx[k] == 0 ? 0.0 : axis[idx[k] - 1];
      hi[k] = axis[idx[k]];
      if (!(hi[k] > lo[k])) return;
    }
    const double count = grid.open_count(idx, offset);

    if (count == 0.0) {
      // |Delta|^p = prod_k t_k^p separates.
      double cell = 1.0;
      for (std::size_t k = 0; k < d; ++k) {
        cell *= (std::pow(hi[k], p + 1.0) - std::pow(lo[k], p + 1.0)) / (p + 1.0);
      }
      total += cell;
      return;
    }

    // Gauss-Legendre on the first d-1 axes, exact integral along the last.
    std::fill(node_idx.begin(), node_idx.end(), 0);
    double cell = 0.0;
    for (std::size_t point = 0; point < outer_points; ++point) {
      double weight = 1.0;
      double slope = 1.0;
      for (std::size_t k = 0; k < outer; ++k) {
        const double len = hi[k] - lo[k];
        weight *= len * gauss.weights[node_idx[k]];
        slope *= lo[k] + len * gauss.nodes[node_idx[k]];
      }
      cell += weight * ramp_power_integral(count, slope, lo[outer], hi[outer], p);
      for (std::size_t k = outer; k-- > 0;) {
        if (++node_idx[k] < nodes) break;
        node_idx[k] = 0;
      }
    }
    total += cell;
  });
  return total;
}

} // namespace

double local_discrepancy(const QuadratureRule& rule, std::span<const double> t) {
  if (t.size() != rule.dim()) {
    throw DomainError("dimension mismatch: box corner has " + std::to_string(t.size()) +
                      " coordinates, rule has dimension " + std::to_string(rule.dim()));
  }
  double volume = 1.0;
  for (double tk : t) {
    if (!(tk >= 0.0 && tk <= 1.0)) throw DomainError("box corner outside [0, 1]^d");
    volume *= tk;
  }
  const PointSet& ps = rule.points();
  double count = 0.0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto x = ps.point(i);
    bool inside = true;
    for (std::size_t k = 0; k < x.size() && inside; ++k) inside = x[k] < t[k];
    if (inside) count += rule.weights()[i];
  }
  return count - volume;
}

DiscrepancyEstimate l2_discrepancy_exact(const QuadratureRule& rule) {
  const PointSet& ps = rule.points();
  const auto& w = rule.weights();
  const std::size_t n = ps.size();
  const std::size_t d = ps.dim();

  double pair_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto xi = ps.point(i);
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const auto xj = ps.point(j);
      double prod = 1.0;
      for (std::size_t k = 0; k < d; ++k) prod *= 1.0 - std::max(xi[k], xj[k]);
      row += w[j] * prod;
    }
    pair_sum += w[i] * row;
  }
  double single_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double prod = 1.0;
    for (double x : ps.point(i)) prod *= 0.5 * (1.0 - x * x);
    single_sum += w[i] * prod;
  }
  const double squared =
      pair_sum - 2.0 * single_sum + std::pow(3.0, -static_cast<double>(d));
  return {std::sqrt(std::max(0.0, squared)), 2.0, DiscrepancyMethod::exact_l2, 0.0};
}

DiscrepancyEstimate star_discrepancy_exact(const QuadratureRule& rule, std::uint64_t cap) {
  const CriticalGrid grid(rule, cap);
  double sup = 0.0;
  grid.for_each_corner([&](const std::vector<std::size_t>& idx, std::size_t offset) {
    double volume = 1.0;
    for (std::size_t k = 0; k < grid.dim(); ++k) volume *= grid.axis(k)[idx[k]];
    // Boxes just above t contain the closed count; t itself the open one.
    sup = std::max({sup, grid.closed_count(offset) - volume,
                    volume - grid.open_count(idx, offset)});
  });
  return {sup, std::numeric_limits<double>::infinity(), DiscrepancyMethod::exact_star, 0.0};
}

DiscrepancyEstimate lp_discrepancy_cellwise(const QuadratureRule& rule, double p,
                                            unsigned nodes_per_axis, std::uint64_t cap) {
  check_finite_exponent(p);
  if (nodes_per_axis == 0) throw DomainError("nodes per axis must be >= 1");
  const CriticalGrid grid(rule, cap);

  const double fine =
      cellwise_power_integral(grid, p, detail::unit_gauss_legendre(nodes_per_axis));
  const double coarse =
      cellwise_power_integral(grid, p, detail::unit_gauss_legendre((nodes_per_axis + 1) / 2));
  const double value = std::pow(fine, 1.0 / p);
  return {value, p, DiscrepancyMethod::cellwise, std::abs(value - std::pow(coarse, 1.0 / p))};
}

DiscrepancyEstimate lp_discrepancy_mc(const QuadratureRule& rule, double p,
                                      std::uint64_t samples, std::uint64_t seed) {
  check_finite_exponent(p);
  if (samples < 2) throw DomainError("Monte Carlo needs at least 2 samples");
  const std::size_t d = rule.dim();
  std::vector<UniformStream> streams;
  streams.reserve(d);
  for (std::size_t k = 0; k < d; ++k) streams.emplace_back(seed, k);

  std::vector<double> u(d);
  double mean = 0.0;
  double m2 = 0.0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (std::size_t k = 0; k < d; ++k) u[k] = streams[k].next();
    const double v = std::pow(std::abs(local_discrepancy(rule, u)), p);
    const double delta = v - mean;
    mean += delta / static_cast<double>(s + 1);
    m2 += delta * (v - mean);
  }
  const double n = static_cast<double>(samples);
  const double se_mean = std::sqrt(m2 / (n - 1.0) / n);
  const double value = std::pow(mean, 1.0 / p);
  const double se = mean > 0.0 ? value / (p * mean) * se_mean : 0.0;
  return {value, p, DiscrepancyMethod::mc, se};
}

PointSet reflect(const PointSet& ps) {
  static constexpr double kBelowOne = 1.0 - 0x1.0p-53;
  std::vector<double> out(ps.coords().size());
  std::transform(ps.coords().begin(), ps.coords().end(), out.begin(),
                 [](double x) { return std::min(1.0 - x, kBelowOne); });
  return {ps.dim(), std::move(out)};
}

} // namespace lpcurse
