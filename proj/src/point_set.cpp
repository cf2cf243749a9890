#include "lpcurse/point_set.hpp"

#include <cmath>
#include <string>

#include "lpcurse/errors.hpp"
#include "lpcurse/random.hpp"

namespace lpcurse {

PointSet::PointSet(std::size_t dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
  if (dim_ == 0) throw DomainError("point set dimension must be >= 1");
  if (coords_.size() % dim_ != 0) {
    throw DomainError("coordinate count " + std::to_string(coords_.size()) +
                      " is not a multiple of dimension " + std::to_string(dim_));
  }
  for (std::size_t j = 0; j < coords_.size(); ++j) {
    const double x = coords_[j];
    if (!(x >= 0.0 && x < 1.0)) {
      throw DomainError("point " + std::to_string(j / dim_) + " coordinate " +
                        std::to_string(j % dim_ + 1) + " = " + std::to_string(x) +
                        " outside [0, 1)");
    }
  }
}

QuadratureRule::QuadratureRule(PointSet points, std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (weights_.size() != points_.size()) {
    throw DomainError("rule has " + std::to_string(points_.size()) + " points but " +
                      std::to_string(weights_.size()) + " weights");
  }
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] >= 0.0) || !std::isfinite(weights_[i])) {
      throw DomainError("weight " + std::to_string(i) + " = " + std::to_string(weights_[i]) +
                        " is not a finite nonnegative number; only positive quadrature is "
                        "supported");
    }
  }
}

QuadratureRule QuadratureRule::qmc(PointSet points) {
  const std::size_t n = points.size();
  std::vector<double> weights(n, n ? 1.0 / static_cast<double>(n) : 0.0);
  return {std::move(points), std::move(weights)};
}

UniformStream::UniformStream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

} // namespace lpcurse
