#include <array>
#include <string>
#include <vector>

#include "lpcurse/errors.hpp"
#include "lpcurse/pointsets.hpp"
#include "lpcurse/random.hpp"

namespace lpcurse {

PointSet gen_random(std::size_t d, std::size_t n, std::uint64_t seed) {
  if (d == 0) throw DomainError("dimension must be >= 1");
  std::vector<UniformStream> streams;
  streams.reserve(d);
  for (std::size_t k = 0; k < d; ++k) streams.emplace_back(seed, k);
  std::vector<double> coords(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) coords[i * d + k] = streams[k].next();
  }
  return {d, std::move(coords)};
}

PointSet gen_grid(std::size_t d, std::size_t m, bool centered, std::uint64_t cap) {
  if (d == 0 || m == 0) throw DomainError("grid needs d >= 1 and m >= 1");
  std::uint64_t n = 1;
  for (std::size_t k = 0; k < d; ++k) {
    if (n > cap / m) {
      throw ResourceError("grid with " + std::to_string(m) + "^" + std::to_string(d) +
                          " points exceeds the cap of " + std::to_string(cap));
    }
    n *= m;
  }
  const double md = static_cast<double>(m);
  std::vector<double> coords(n * d);
  std::vector<std::size_t> idx(d, 0);
  for (std::uint64_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      const double j = static_cast<double>(idx[k]);
      coords[i * d + k] = centered ? (2.0 * j + 1.0) / (2.0 * md) : j / md;
    }
    for (std::size_t k = d; k-- > 0;) {
      if (++idx[k] < m) break;
      idx[k] = 0;
    }
  }
  return {d, std::move(coords)};
}

PointSet gen_halton(std::size_t d, std::size_t n) {
  static constexpr std::array<unsigned, kMaxHaltonDim> kPrimes{2,  3,  5,  7,  11, 13, 17, 19,
                                                               23, 29, 31, 37, 41, 43, 47, 53};
  if (d == 0 || d > kMaxHaltonDim) {
    throw DomainError("Halton dimension must be in [1, " + std::to_string(kMaxHaltonDim) + "]");
  }
  std::vector<double> coords(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      const unsigned base = kPrimes[k];
      double scale = 1.0 / base;
      double value = 0.0;
      for (std::size_t index = i + 1; index > 0; index /= base) {
        value += scale * static_cast<double>(index % base);
        scale /= base;
      }
      coords[i * d + k] = value;
    }
  }
  return {d, std::move(coords)};
}

} // namespace lpcurse
