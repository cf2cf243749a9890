#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lpcurse {

/// n points in [0,1)^d, stored row-major.
class PointSet {
public:
  explicit PointSet(std::size_t dim) : PointSet(dim, {}) {}
  /// Throws DomainError if dim == 0, coords.size() is not a multiple of dim,
  /// or a coordinate lies outside [0, 1).
  PointSet(std::size_t dim, std::vector<double> coords);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return coords_.size() / dim_; }
  bool empty() const noexcept { return coords_.empty(); }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  double coord(std::size_t i, std::size_t k) const { return coords_[i * dim_ + k]; }
  const std::vector<double>& coords() const noexcept { return coords_; }

  friend bool operator==(const PointSet&, const PointSet&) = default;

private:
  std::size_t dim_;
  std::vector<double> coords_;
};

/// Linear integration rule sum_i w_i f(x_i) with nonnegative weights.
class QuadratureRule {
public:
  /// Throws DomainError on a size mismatch or a negative/non-finite weight.
  QuadratureRule(PointSet points, std::vector<double> weights);

  /// Equal weights 1/n.
  static QuadratureRule qmc(PointSet points);

  const PointSet& points() const noexcept { return points_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  std::size_t dim() const noexcept { return points_.dim(); }
  std::size_t size() const noexcept { return points_.size(); }

  friend bool operator==(const QuadratureRule&, const QuadratureRule&) = default;

private:
  PointSet points_;
  std::vector<double> weights_;
};

} // namespace lpcurse
