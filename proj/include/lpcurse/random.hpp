#pragma once

#include <cstdint>
#include <random>

namespace lpcurse {

/// Deterministic uniform stream on [0,1): mt19937_64 seeded through
/// seed_seq{seed, stream}, top 53 bits per draw. Identical on every platform.
class UniformStream {
public:
  UniformStream(std::uint64_t seed, std::uint64_t stream);

  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
  std::mt19937_64 engine_;
};

} // namespace lpcurse
