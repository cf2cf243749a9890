#include "gauss_legendre.hpp"

#include <memory>

#include <gsl/gsl_integration.h>

#include "lpcurse/errors.hpp"

namespace lpcurse::detail {

UnitGaussRule unit_gauss_legendre(unsigned n) {
  if (n == 0) throw DomainError("Gauss-Legendre rule needs at least one node");
  std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)>
      table(gsl_integration_glfixed_table_alloc(n), &gsl_integration_glfixed_table_free);
  if (!table) throw ResourceError("could not allocate a Gauss-Legendre table");

  UnitGaussRule rule{std::vector<double>(n), std::vector<double>(n)};
  for (unsigned i = 0; i < n; ++i) {
    gsl_integration_glfixed_point(0.0, 1.0, i, &rule.nodes[i], &rule.weights[i], table.get());
  }
  return rule;
}

} // namespace lpcurse::detail
