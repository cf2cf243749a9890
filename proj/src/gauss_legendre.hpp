#pragma once

#include <vector>

namespace lpcurse::detail {

/// n-point Gauss-Legendre rule mapped to [0, 1].
struct UnitGaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

UnitGaussRule unit_gauss_legendre(unsigned n);

} // namespace lpcurse::detail
